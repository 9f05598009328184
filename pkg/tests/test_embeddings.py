import numpy as np
import pytest

import grpmetric as gm
from grpmetric.embeddings import IsometryError, psi_variant_tables_identical


def test_cyclic_embedding_small_images():
    emb = gm.cyclic_embedding(6, 2)
    # subgroup digits decode to the elements of <2> in Z_6
    tuples = [divmod(v, 3) for v in emb.image]
    assert [(a * 2, b * 2) for a, b in tuples] == [
        (0, 0), (2, 0), (2, 2), (4, 2), (4, 4), (0, 4)]
    assert [emb.source_metric.d(t, 0) for t in range(6)] == [0, 1, 2, 2, 2, 1]


def test_cyclic_embedding_weight_formula():
    for m, n in [(12, 2), (12, 6), (20, 4), (30, 5)]:
        emb = gm.cyclic_embedding(m, n)
        for t in range(m):
            assert emb.source_metric.d(t, 0) == gm.cyclic_embedding_weight(m, n, t)
            assert gm.cyclic_embedding_weight(m, n, t) == min(t, n, m - t)


def test_cyclic_embedding_lee_recovery_for_half_index():
    # index m/2 subgroups give back the circular metric
    for m in (4, 8, 10, 12):
        emb = gm.cyclic_embedding(m, m // 2)
        assert emb.source_metric == gm.lee_metric(m)


def test_cyclic_embedding_rejects_trivial_subgroup():
    with pytest.raises(ValueError):
        gm.cyclic_embedding(6, 6)
    with pytest.raises(ValueError):
        gm.cyclic_embedding(12, 5)


def test_cyclic_embedding_generator_validation():
    emb = gm.cyclic_embedding(12, 2, h=10)  # 10 = 2*5, a generator of <2>
    assert emb.source_metric == gm.cyclic_embedding(12, 2).source_metric
    with pytest.raises(ValueError):
        gm.cyclic_embedding(12, 2, h=4)  # <4> has index 3, not 2


def test_cyclic_embedding_count():
    assert gm.cyclic_embedding_count(12, 2) == 4
    assert gm.cyclic_embedding_count(4, 2) == 2
    assert gm.cyclic_embedding_count(12, 1) == 4  # phi(12)


def test_cyclic_embedding_variants_same_table():
    variants = list(gm.cyclic_embedding_variants(12, 2))
    assert len(variants) == 4
    assert all(v.source_metric == variants[0].source_metric for v in variants)
    variants = list(gm.cyclic_embedding_variants(8, 4))
    assert len(variants) == 24
    assert all(v.source_metric == variants[0].source_metric for v in variants)


def test_variant_batch_checker_agrees_with_constructed_maps():
    same, checked, count, exhaustive = psi_variant_tables_identical(12, 4)
    assert same and exhaustive
    assert checked == count == gm.cyclic_embedding_count(12, 4)


def test_base_q_isometry():
    emb = gm.base_q_isometry(2, 3)
    assert emb.image == tuple(range(8))
    assert emb.apply(0b100) == 4  # (1,0,0) -> q^(n-1)
    inv = emb.inverse()
    assert inv.image[4] == 0b100
    assert gm.compose(emb, inv).image == tuple(range(8))
    assert gm.compose(inv, emb).image == tuple(range(8))


def test_base_q_isometry_range():
    for q in (2, 3, 4, 5):
        for n in range(1, 5):
            if q**n > 625:
                continue
            emb = gm.base_q_isometry(q, n)
            assert gm.weight_enumerator(emb.source_metric) == gm.geometric_enumerator(q, n)


def test_lift_isometry_gray_like():
    z4, z22 = gm.cyclic(4), gm.parse_group("Z2^2")
    H1, H2 = gm.subgroup(z4, [0, 2]), gm.subgroup(z22, [0, 2])
    tau = gm.trivial_isometry(H1, H2)
    eta = gm.lift_isometry(tau, gm.transversal(z4, H1), gm.transversal(z22, H2))
    assert eta.image[0] == 0
    assert eta.image[3] == 3  # maps to (1,1)
    assert eta.source_metric == gm.qadic_metric(2, 2)
    assert eta.target_metric == gm.rt_metric(2, 2)


def test_lift_isometry_rejects_bad_tau():
    z4, z22 = gm.cyclic(4), gm.parse_group("Z2^2")
    H1, H2 = gm.subgroup(z4, [0, 2]), gm.subgroup(z22, [0, 2])
    bad = gm.EmbeddingMap("trivial", [0, 1], gm.hamming_metric(2), gm.lee_metric(4))
    with pytest.raises(ValueError):
        gm.lift_isometry(bad, gm.transversal(z4, H1), gm.transversal(z22, H2))


def test_lift_gauge_check():
    z4, z22 = gm.cyclic(4), gm.parse_group("Z2^2")
    H1, H2 = gm.subgroup(z4, [0, 2]), gm.subgroup(z22, [0, 2])
    tau = gm.trivial_isometry(H1, H2)
    T1, T2 = gm.transversal(z4, H1), gm.transversal(z22, H2)
    assert gm.lift_gauge_check(tau, T1, T2, [0, 1], [0, 1])
    assert gm.lift_gauge_check(tau, T1, T2, [0, 1], [1, 0])

    z8, z23 = gm.cyclic(8), gm.parse_group("Z2^3")
    H1, H2 = gm.subgroup(z8, [0, 4]), gm.subgroup(z23, [0, 4])
    tau = gm.trivial_isometry(H1, H2)
    T1, T2 = gm.transversal(z8, H1), gm.transversal(z23, H2)
    assert gm.lift_gauge_check(tau, T1, T2, [0, 1, 2, 3], [0, 3, 1, 2])


def test_chain_isometry_geometric():
    z8 = gm.cyclic(8)
    iso = gm.chain_isometry(z8, gm.geometric_chain(z8, 2))
    assert iso.target_metric.meta["partition"] == (1, 1, 1)
    assert iso.source_metric == gm.qadic_metric(2, 3)
    assert np.array_equal(iso.target_metric.dist, gm.rt_metric(2, 3).dist)


def test_chain_isometry_single_step():
    d4 = gm.dihedral(4)
    chain = gm.make_chain(d4, [[0], range(8)])
    iso = gm.chain_isometry(d4, chain)
    assert iso.target_metric.meta["partition"] == (1,)
    assert iso.source_size == iso.target_size == 8
    # the chain metric of a single-step chain is the discrete metric
    assert iso.source_metric == gm.hamming_metric(8)


def test_chain_isometry_two_step_partition():
    z8 = gm.cyclic(8)
    chain = gm.make_chain(z8, [[0], [0, 4], range(8)])
    iso = gm.chain_isometry(z8, chain)
    assert iso.target_metric.meta["partition"] == (1, 2)
    assert iso.source_metric.dist[0].tolist() == [0, 2, 2, 2, 1, 2, 2, 2]


def test_chain_isometry_nonabelian():
    for spec in ("D4", "Q8"):
        G = gm.parse_group(spec)
        iso = gm.chain_isometry(G, gm.geometric_chain(G, 2))
        assert iso.target_metric.meta["partition"] == (1, 1, 1)
        assert np.array_equal(iso.target_metric.dist, gm.rt_metric(2, 3).dist)


def test_chain_isometry_rejects_ungraded_chain():
    z12 = gm.cyclic(12)
    chain = gm.make_chain(z12, [[0], [0, 6], [0, 2, 4, 6, 8, 10], range(12)])
    with pytest.raises(ValueError):
        gm.chain_isometry(z12, chain)


def test_rm1_generator_matrix():
    assert gm.rm1_generator_matrix(2, 2).tolist() == [[1, 1], [0, 1]]
    g = gm.rm1_generator_matrix(3, 2)
    assert g.tolist() == [[1, 1, 1], [0, 1, 2]]
    assert gm.rm1_generator_matrix(2, 3).tolist() == [
        [1, 1, 1, 1], [0, 0, 1, 1], [0, 1, 0, 1]]


def test_rm1_embedding_weights():
    emb = gm.rm1_embedding(2, 3)
    assert emb.image[0] == 0
    for x in range(8):
        hamming = bin(emb.image[x]).count("1")
        assert hamming == emb.source_metric.d(x, 0)
    emb32 = gm.rm1_embedding(3, 2)
    space = emb32.target_metric
    for x in range(9):
        assert space.d(emb32.image[x], 0) == emb32.source_metric.d(x, 0)


def test_rm1_coefficient_one_zero_hits_all_ones():
    emb = gm.rm1_embedding(2, 2)
    # source element 2 generates the small stratum; its codeword is (1,1)
    assert emb.image[2] == 0b11
    assert emb.image[0] == 0


def test_compose_and_errors():
    emb = gm.base_q_isometry(2, 3)
    ident = gm.EmbeddingMap("search", range(8), emb.source_metric, emb.source_metric)
    assert gm.compose(ident, emb).image == emb.image
    with pytest.raises(ValueError):
        gm.compose(emb, gm.base_q_isometry(3, 2))


def test_embedding_map_verification_fails_loudly():
    with pytest.raises(IsometryError):
        gm.EmbeddingMap("search", [0, 1, 2, 3], gm.lee_metric(4), gm.hamming_metric(4))
    with pytest.raises(IsometryError):
        gm.EmbeddingMap("search", [0, 0, 1, 2], gm.lee_metric(4), gm.lee_metric(4))


def test_embedding_json_shape():
    emb = gm.base_q_isometry(2, 2)
    assert emb.to_json_dict() == {
        "kind": "base_q", "source": 4, "target": 4, "image": [0, 1, 2, 3]}
