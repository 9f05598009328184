import numpy as np
import pytest

import grpmetric as gm


def test_weight_function_rows():
    assert gm.weight_function(gm.lee_metric(6)).values == (0, 1, 2, 3, 2, 1)
    assert gm.weight_function(gm.hamming_metric(5), 2).values == (1, 1, 0, 1, 1)
    emb = gm.cyclic_embedding(12, 6)
    assert gm.weight_function(emb.source_metric).values == (
        0, 1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1)


def test_weight_function_base_defaults_to_identity():
    d = gm.chain_metric(gm.geometric_chain(gm.quaternion(8), 2))
    assert gm.weight_function(d).base == 0
    with pytest.raises(ValueError):
        gm.weight_function(d, 9)


def test_weight_enumerator_values():
    assert gm.weight_enumerator(gm.qadic_metric(2, 3)).coeffs == (1, 1, 2, 4)
    assert gm.weight_enumerator(gm.hamming_metric(1)).coeffs == (1,)
    emb = gm.cyclic_embedding(12, 4)
    assert gm.weight_enumerator(emb.source_metric).pretty() == "5t^4 + 2t^3 + 2t^2 + 2t + 1"


def test_enumerator_invariants():
    enum = gm.weight_enumerator(gm.lee_metric(9))
    assert enum.coeffs[0] == 1
    assert enum.carrier == 9
    with pytest.raises(ValueError):
        gm.EnumeratorPolynomial((2, 1))


def test_enumerator_pretty_and_json():
    enum = gm.EnumeratorPolynomial((1, 1, 2, 4))
    assert enum.pretty() == "4t^3 + 2t^2 + t + 1"
    assert enum.to_json() == '{"coeffs": [1, 1, 2, 4], "carrier": 8}'
    assert gm.EnumeratorPolynomial((1, 0, 3)).pretty() == "3t^2 + 1"


def test_chain_enumerator_closed_form():
    z8 = gm.cyclic(8)
    chain = gm.geometric_chain(z8, 2)
    closed = gm.chain_enumerator(chain)
    assert closed.coeffs == (1, 1, 2, 4)
    assert closed == gm.weight_enumerator(gm.chain_metric(chain))

    z12 = gm.cyclic(12)
    single = gm.make_chain(z12, [[0], range(12)])
    assert gm.chain_enumerator(single).coeffs == (1, 11)

    chain12 = gm.make_chain(z12, [[0], [0, 6], [0, 2, 4, 6, 8, 10], range(12)])
    assert gm.chain_enumerator(chain12).pretty() == "6t^3 + 4t^2 + t + 1"


def test_chain_enumerator_matches_table_for_nonabelian_chains():
    for spec in ("D4", "Q8"):
        G = gm.parse_group(spec)
        chain = gm.geometric_chain(G, 2)
        assert gm.chain_enumerator(chain) == gm.weight_enumerator(gm.chain_metric(chain))


def test_geometric_enumerator():
    assert gm.geometric_enumerator(2, 3).coeffs == (1, 1, 2, 4)
    assert gm.geometric_enumerator(3, 2).coeffs == (1, 2, 6)


def test_product_enumerator_check():
    h2 = gm.hamming_metric(2)
    assert gm.product_enumerator_check(h2, h2)
    assert gm.weight_enumerator(gm.product_metric([h2, h2])).pretty() == "t^2 + 2t + 1"
    assert gm.product_enumerator_check(gm.lee_metric(4), h2)
    assert gm.product_enumerator_check(gm.lee_metric(6), gm.lee_metric(6))


def test_enumerator_independent_of_base_point():
    for d in (
        gm.qadic_metric(2, 3),
        gm.chain_metric(gm.geometric_chain(gm.dihedral(4), 2)),
        gm.lee_metric(12),
        gm.homogeneous_metric(3, 2),
    ):
        reference = gm.weight_enumerator(d, 0).coeffs
        for x0 in range(d.size):
            assert gm.weight_enumerator(d, x0).coeffs == reference
