import itertools

import numpy as np
import pytest

import grpmetric as gm
from grpmetric.isometry import is_full_cycle, perm_compose, perm_inverse
from grpmetric.util import format_cycles

GRAY = [0, 1, 3, 2]  # 0->00, 1->01, 2->11, 3->10


def test_gray_map_is_isometric():
    ok, witness = gm.is_isometric_embedding(
        GRAY, gm.lee_metric(4), gm.hamming_power_metric(2, 2))
    assert ok and witness is None


def test_identity_is_isometric():
    d = gm.qadic_metric(2, 3)
    ok, _ = gm.is_isometric_embedding(range(8), d, d)
    assert ok


def test_no_bijection_between_mismatched_hamming_spaces():
    h4 = gm.hamming_metric(4)
    h22 = gm.hamming_power_metric(2, 2)
    witnesses = []
    for p in itertools.permutations(range(4)):
        ok, witness = gm.is_isometric_embedding(list(p), h4, h22)
        assert not ok
        witnesses.append(witness)
    assert all(w is not None for w in witnesses)


def test_symmetry_group_discrete():
    # the discrete metric is preserved by every permutation
    assert gm.symmetry_group(gm.hamming_metric(3)).order == 6
    assert gm.symmetry_group(gm.hamming_metric(4)).order == 24


def test_symmetry_group_hamming_powers():
    assert gm.symmetry_group(gm.hamming_power_metric(2, 2)).order == 8
    assert gm.symmetry_group(gm.hamming_power_metric(2, 3)).order == 48
    assert gm.symmetry_group(gm.hamming_power_metric(3, 2)).order == 72


def test_symmetry_group_bound():
    with pytest.raises(ValueError):
        gm.symmetry_group(gm.hamming_metric(13))


def test_pruned_search_matches_bruteforce():
    cases = [
        gm.hamming_power_metric(2, 2),
        gm.hamming_power_metric(2, 3),
        gm.lee_metric(6),
        gm.four_point_metric("d1"),
        gm.four_point_metric("d2"),
        gm.four_point_metric("d3"),
    ]
    for d in cases:
        pruned = set(gm.symmetry_group(d).elements)
        brute = set(gm.symmetry_group_bruteforce(d).elements)
        assert pruned == brute


def test_has_cyclic_representation():
    found, cycle = gm.has_cyclic_representation(gm.hamming_power_metric(2, 2))
    assert found and is_full_cycle(cycle)
    assert not gm.has_cyclic_representation(gm.hamming_power_metric(2, 3))[0]
    assert not gm.has_cyclic_representation(gm.hamming_power_metric(3, 2))[0]


def test_four_point_fixture_symmetries():
    # d1 and d2 both have the full dihedral symmetry of order 8; d3 keeps
    # only the pairing-preserving involutions
    assert gm.symmetry_group(gm.four_point_metric("d1")).order == 8
    assert gm.symmetry_group(gm.four_point_metric("d2")).order == 8
    assert gm.symmetry_group(gm.four_point_metric("d3")).order == 4


def test_find_regular_subgroups_on_fixtures():
    z4 = gm.cyclic(4)
    klein = gm.parse_group("Z2^2")
    d1 = gm.four_point_metric("d1")
    assert len(gm.find_regular_subgroups(d1, z4)) == 1
    assert len(gm.find_regular_subgroups(d1, klein)) == 1
    # d2 is isometric to the Hamming square, so it carries the cyclic
    # representation of the classical 4-point exception as well
    d2 = gm.four_point_metric("d2")
    assert len(gm.find_regular_subgroups(d2, z4)) == 1
    assert len(gm.find_regular_subgroups(d2, klein)) == 1
    # d3 separates the three pairings by value: only the involution group acts
    d3 = gm.four_point_metric("d3")
    assert gm.find_regular_subgroups(d3, z4) == []
    assert len(gm.find_regular_subgroups(d3, klein)) == 1


def test_regular_representation_is_homomorphism():
    d1 = gm.four_point_metric("d1")
    z4 = gm.cyclic(4)
    (rep,) = gm.find_regular_subgroups(d1, z4)
    for a in range(4):
        for b in range(4):
            assert perm_compose(rep.perms[a], rep.perms[b]) == rep.perms[z4.op(a, b)]


def test_transfer_recovers_classical_tables():
    d1 = gm.four_point_metric("d1")
    (z4rep,) = gm.find_regular_subgroups(d1, gm.cyclic(4))
    result = gm.transfer(d1, z4rep.perms, 0)
    assert result.group.identity == 0
    assert gm.validate_metric(result.metric, result.group).right_invariant
    assert gm.search_isometry(result.metric, gm.lee_metric(4)) is not None

    (kleinrep,) = gm.find_regular_subgroups(d1, gm.parse_group("Z2^2"))
    result2 = gm.transfer(d1, kleinrep.perms, 0)
    assert gm.search_isometry(result2.metric, gm.hamming_power_metric(2, 2)) is not None


def test_transfer_base_point_becomes_identity():
    d1 = gm.four_point_metric("d1")
    (rep,) = gm.find_regular_subgroups(d1, gm.cyclic(4))
    result = gm.transfer(d1, rep.perms, 2)
    assert result.group.identity == 2


def test_transfer_trivial_carrier():
    d = gm.hamming_metric(1)
    result = gm.transfer(d, [(0,)], 0)
    assert result.group.order == 1
    assert result.metric.dist.tolist() == [[0]]


def test_transfer_rejects_non_regular():
    d = gm.hamming_metric(4)  # symmetry group is all of S_4
    perms = [tuple(range(4)), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2)]
    with pytest.raises(ValueError):
        gm.transfer(d, perms, 0)  # Klein group fixing {0,1} is not transitive


def test_search_isometry():
    lee4 = gm.lee_metric(4)
    h22 = gm.hamming_power_metric(2, 2)
    found = gm.search_isometry(lee4, h22)
    assert found is not None
    assert found.image == tuple(GRAY)
    assert gm.search_isometry(gm.hamming_metric(9), gm.hamming_power_metric(3, 2)) is None
    assert gm.search_isometry(lee4, lee4).image == (0, 1, 2, 3)


def test_symmetry_group_asserts_closure():
    with pytest.raises(ValueError):
        gm.SymmetryGroup(3, ((0, 1, 2), (1, 2, 0)))  # missing the inverse


def test_perm_helpers():
    p = (1, 2, 0)
    assert perm_inverse(p) == (2, 0, 1)
    assert perm_compose(p, perm_inverse(p)) == (0, 1, 2)
    assert format_cycles((1, 0, 3, 2)) == "(0 1)(2 3)"
    assert format_cycles((0, 1)) == "()"
