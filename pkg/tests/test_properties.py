"""Property-based checks of the structural invariants."""

import numpy as np
from hypothesis import given, settings, strategies as st

import grpmetric as gm

small_modulus = st.integers(min_value=2, max_value=40)


@st.composite
def modulus_with_divisor(draw, max_m=36):
    m = draw(st.integers(min_value=2, max_value=max_m))
    divisors = [n for n in range(1, m) if m % n == 0]
    n = draw(st.sampled_from(divisors))
    return m, n


@st.composite
def divisor_chain_orders(draw, max_m=64):
    m = draw(st.integers(min_value=2, max_value=max_m))
    orders = []
    current = m
    while current > 1:
        proper = [d for d in range(1, current) if current % d == 0]
        nxt = draw(st.sampled_from(proper))
        if nxt == 1:
            break
        orders.append(nxt)
        current = nxt
    return m, sorted(orders)


@given(modulus_with_divisor())
def test_pullback_weight_matches_closed_form(mn):
    m, n = mn
    emb = gm.cyclic_embedding(m, n)
    w = [emb.source_metric.d(t, 0) for t in range(m)]
    assert w == [min(t, n, m - t) for t in range(m)]
    assert len(set(emb.image)) == m


@given(modulus_with_divisor(max_m=24))
@settings(deadline=None)
def test_pullback_metric_translation_invariant(mn):
    m, n = mn
    d = gm.cyclic_embedding(m, n).source_metric
    rep = gm.validate_metric(d)
    assert rep.ok and rep.right_invariant


@given(divisor_chain_orders())
@settings(max_examples=60, deadline=None)
def test_chain_metric_invariants(m_orders):
    m, orders = m_orders
    chain = gm.divisor_chain(gm.cyclic(m), orders)
    d = gm.chain_metric(chain)
    rep = gm.validate_metric(d)
    assert rep.ok and rep.ultrametric and rep.right_invariant
    assert gm.chain_enumerator(chain) == gm.weight_enumerator(d)


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=1, max_value=4))
@settings(deadline=None)
def test_qadic_is_invariant_ultrametric(q, n):
    if q**n > 300:
        return
    rep = gm.validate_metric(gm.qadic_metric(q, n))
    assert rep.ok and rep.ultrametric and rep.right_invariant


@given(small_modulus)
def test_lee_metric_is_invariant(m):
    rep = gm.validate_metric(gm.lee_metric(m))
    assert rep.ok and rep.right_invariant and rep.subadditive


@given(small_modulus, st.integers(min_value=0, max_value=39))
def test_enumerator_base_independent_for_invariant_metrics(m, shift):
    d = gm.lee_metric(m)
    x0 = shift % m
    assert gm.weight_enumerator(d, x0).coeffs == gm.weight_enumerator(d, 0).coeffs


@given(st.integers(min_value=2, max_value=8), st.integers(min_value=2, max_value=8))
@settings(max_examples=30, deadline=None)
def test_product_enumerator_identity(a, b):
    assert gm.product_enumerator_check(gm.lee_metric(a), gm.hamming_metric(b))


@given(st.sampled_from(["Z6", "Z8", "Z12", "D3", "D4", "Q8", "Z2 x Z4", "Z2^3"]),
       st.data())
@settings(max_examples=40, deadline=None)
def test_transversal_partitions_group(spec, data):
    G = gm.parse_group(spec)
    x = data.draw(st.integers(min_value=0, max_value=G.order - 1))
    H = gm.subgroup_generated(G, [x])
    t = gm.transversal(G, H)
    cover = set()
    for g in t.representatives:
        coset = frozenset(G.op(h, g) for h in H.elements)
        assert not (coset & cover)
        cover |= coset
    assert cover == set(range(G.order))


@given(st.sampled_from(["Z4", "Z6", "Z9", "D3", "Q8", "Z2^3", "Z2 x Z4"]),
       st.data())
@settings(max_examples=40, deadline=None)
def test_element_order_divides_group_order(spec, data):
    G = gm.parse_group(spec)
    x = data.draw(st.integers(min_value=0, max_value=G.order - 1))
    assert G.order % gm.element_order(G, x) == 0


@given(modulus_with_divisor(max_m=20))
@settings(max_examples=30, deadline=None)
def test_extension_restriction_and_ceiling(mn):
    m, n = mn
    if n == 1:
        return
    G = gm.cyclic(m)
    H = gm.cyclic_subgroup_of_index(G, n)
    base = gm.hamming_metric(H.order)
    ext = gm.extend_metric(G, H, base)
    ceiling = int(base.dist.max()) + 1
    for x in range(m):
        expected = 0 if x == 0 else (1 if x in H else ceiling)
        assert ext.d(x, 0) == expected
