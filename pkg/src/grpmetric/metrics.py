"""Integral metrics on finite carriers, stored as dense distance tables.

Every constructor returns a :class:`MetricTable` whose entries are nonnegative
integers bounded by the carrier size.  Metrics that live on a group carry the
group, and all group metrics built here are right-invariant: the nonabelian
"difference" is always ``x * y^-1``, so d(xh, yh) = d(x, y) without requiring
normal subgroups.

Cheap axioms (zero diagonal, symmetry, positivity, integrality bound) are
checked at construction; the O(n^3) triangle/ultrametric checks live in
:func:`validate_metric`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .groups import FiniteGroup, Subgroup, SubgroupChain, cyclic, product, validate_chain
from .util import check_carrier, digit_matrix, int_log, is_prime


class MetricTable:
    """Dense symmetric table of integral distances on ``0..size-1``."""

    def __init__(
        self,
        dist: np.ndarray,
        *,
        group: FiniteGroup | None = None,
        tag: str = "custom",
        meta: dict | None = None,
    ):
        dist = np.ascontiguousarray(np.asarray(dist, dtype=np.int64))
        n = dist.shape[0]
        check_carrier(n, "metric carrier")
        if dist.ndim != 2 or dist.shape != (n, n):
            raise ValueError("distance table must be square")
        if group is not None and group.order != n:
            raise ValueError("carrier group order does not match the table size")
        if np.any(np.diag(dist) != 0):
            raise ValueError("d(x,x) must be 0")
        if not np.array_equal(dist, dist.T):
            raise ValueError("distance table must be symmetric")
        off = ~np.eye(n, dtype=bool)
        if n > 1 and dist[off].min() <= 0:
            raise ValueError("d(x,y) must be positive for x != y")
        if dist.max(initial=0) > n:
            raise ValueError("integral metric entries must not exceed the carrier size")
        dist.setflags(write=False)
        self.dist = dist
        self.group = group
        self.tag = tag
        self.meta = dict(meta) if meta else {}

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    def d(self, x: int, y: int) -> int:
        return int(self.dist[x, y])

    def row(self, x: int) -> np.ndarray:
        return self.dist[x]

    def label(self, x: int) -> str:
        return self.group.label(x) if self.group is not None else str(x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricTable):
            return NotImplemented
        return self.size == other.size and np.array_equal(self.dist, other.dist)

    __hash__ = None

    def __repr__(self) -> str:
        return f"MetricTable(size={self.size}, tag={self.tag!r})"


@dataclass(frozen=True)
class BlockPartition:
    """Ordered block sizes m_1..m_r of a coordinate partition n = m_1 + ... + m_r."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        if not self.blocks or any(m < 1 for m in self.blocks):
            raise ValueError("all block sizes must be >= 1")

    @property
    def total(self) -> int:
        return sum(self.blocks)


def custom_metric(matrix, *, group: FiniteGroup | None = None, tag: str = "custom") -> MetricTable:
    """Wrap an explicit table; the full metric axioms are verified."""
    table = MetricTable(np.asarray(matrix), group=group, tag=tag)
    report = validate_metric(table)
    if not report.axioms or not report.triangle:
        raise ValueError("supplied table is not a metric: " + "; ".join(report.failures))
    return table


def hamming_metric(size: int, *, group: FiniteGroup | None = None) -> MetricTable:
    """The discrete metric: d(x,y) = 1 exactly when x != y."""
    if size < 1:
        raise ValueError("carrier size must be >= 1")
    check_carrier(size)
    dist = np.ones((size, size), dtype=np.int64) - np.eye(size, dtype=np.int64)
    return MetricTable(dist, group=group, tag="hamming")


def lee_metric(m: int) -> MetricTable:
    """Circular distance on Z_m: d(x,y) = min(|x-y| mod m, m - |x-y| mod m)."""
    if m < 2:
        raise ValueError("Lee metric requires modulus >= 2")
    check_carrier(m)
    diff = np.abs(np.subtract.outer(np.arange(m), np.arange(m)))
    dist = np.minimum(diff, m - diff)
    return MetricTable(dist, group=cyclic(m), tag="lee")


def product_metric(factors: Sequence[MetricTable]) -> MetricTable:
    """Sum of componentwise distances on the mixed-radix product carrier.

    The carrier group is the product of the factor groups when every factor
    has one.
    """
    if not factors:
        raise ValueError("empty factor list")
    sizes = [f.size for f in factors]
    order = math.prod(sizes)
    check_carrier(order)
    digits = digit_matrix(order, sizes)
    dist = np.zeros((order, order), dtype=np.int64)
    for col, f in enumerate(factors):
        d = digits[:, col]
        dist += f.dist[np.ix_(d, d)]
    group = None
    if all(f.group is not None for f in factors):
        group = product([f.group for f in factors])
    return MetricTable(dist, group=group, tag="product")


def hamming_power_metric(q: int, n: int) -> MetricTable:
    """Hamming metric on n-tuples over an alphabet of size q, carrier Z_q^n."""
    return product_metric([hamming_metric(q, group=cyclic(q))] * n)


def qadic_metric(q: int, n: int) -> MetricTable:
    """The base-q metric on Z_{q^n}: d(x,y) = min{ i : q^(n-i) divides x-y }.

    An ultrametric; cross-checked at construction against the equivalent form
    ceil(log_q ord(x-y)).
    """
    if q < 2 or n < 1:
        raise ValueError("qadic metric requires q >= 2 and n >= 1")
    m = q**n
    check_carrier(m)
    idx = np.arange(m)
    diff = (idx[:, None] - idx[None, :]) % m
    dist = np.zeros((m, m), dtype=np.int64)
    assigned = diff == 0
    for i in range(1, n + 1):
        hit = (diff % q ** (n - i) == 0) & ~assigned
        dist[hit] = i
        assigned |= hit
    # second route: ceil(log_q ord(x-y)) with ord the additive order in Z_{q^n}
    ords = m // np.gcd(diff, m)
    powers = q ** np.arange(n + 1)
    alt = np.searchsorted(powers, ords)
    if not np.array_equal(dist, alt):
        raise AssertionError("qadic metric disagrees with its log-order form")
    return MetricTable(dist, group=cyclic(m), tag="qadic", meta={"q": q, "n": n})


def rt_metric(q: int, n: int) -> MetricTable:
    """Last-differing-coordinate metric on Z_q^n: d(x,y) = max{ i : x_i != y_i }.

    Coordinates are counted 1..n from the most significant digit, so the
    weight-1 elements are exactly (a,0,...,0) with a != 0.
    """
    if q < 2 or n < 1:
        raise ValueError("rt metric requires q >= 2 and n >= 1")
    return brt_metric(cyclic(q), BlockPartition((1,) * n))


def brt_metric(alphabet: FiniteGroup, partition: BlockPartition) -> MetricTable:
    """Blockwise last-differing-block metric on alphabet^n for n = sum(partition).

    With all blocks of size 1 this is exactly :func:`rt_metric`.
    """
    n = partition.total
    q = alphabet.order
    order = q**n
    check_carrier(order)
    digits = digit_matrix(order, [q] * n)
    dist = np.zeros((order, order), dtype=np.int64)
    start = 0
    for b, width in enumerate(partition.blocks, start=1):
        block = digits[:, start : start + width]
        differs = np.zeros((order, order), dtype=bool)
        for c in range(width):
            differs |= block[:, c][:, None] != block[:, c][None, :]
        dist[differs] = b
        start += width
    group = product([alphabet] * n)
    tag = "rt" if partition.blocks == (1,) * n else "brt"
    return MetricTable(dist, group=group, tag=tag,
                       meta={"partition": partition.blocks, "alphabet": q})


def chain_metric(chain: SubgroupChain) -> MetricTable:
    """Stratum metric of a subgroup chain: d(x,y) = min{ i : x y^-1 in H_i }.

    The identity sits in H_0, so it is the only weight-0 element; the metric is
    a right-invariant ultrametric.
    """
    G = chain.group
    report = validate_chain(G, chain)
    if not report.ok:
        raise ValueError("invalid chain: " + "; ".join(report.issues))
    weight = np.empty(G.order, dtype=np.int64)
    for i in range(len(chain.terms) - 1, -1, -1):
        weight[list(chain.terms[i].elements)] = i
    diff = G.table[:, G.inverse_vector]  # diff[x, y] = x * y^-1
    return MetricTable(weight[diff], group=G, tag="chain",
                       meta={"term_orders": tuple(t.order for t in chain.terms)})


def _weight_at_identity(G: FiniteGroup, H: Subgroup, d_H: MetricTable) -> np.ndarray:
    id_pos = H.position(G.identity)
    w = np.empty(H.order, dtype=np.int64)
    for pos in range(H.order):
        w[pos] = d_H.dist[pos, id_pos]
    return w


def extend_metric(G: FiniteGroup, H: Subgroup, d_H: MetricTable) -> MetricTable:
    """Lift a right-invariant metric on H to G.

    Distances inside each right coset restrict to d_H; every cross-coset
    distance is max(d_H) + 1.  d_H is indexed by the positions of H's sorted
    element list and must be a right-invariant metric there (checked).
    """
    if H.group is not G:
        raise ValueError("subgroup does not belong to the given group")
    if d_H.size != H.order:
        raise ValueError("base metric size does not match the subgroup order")
    sub = H.as_group()
    report = validate_metric(d_H, sub)
    if not report.axioms or not report.triangle:
        raise ValueError("base table is not a metric: " + "; ".join(report.failures))
    if not report.right_invariant:
        raise ValueError("base metric is not right-invariant on the subgroup")
    w = _weight_at_identity(G, H, d_H)
    ceiling = int(d_H.dist.max()) + 1
    full_w = np.full(G.order, ceiling, dtype=np.int64)
    for pos, x in enumerate(H.elements):
        full_w[x] = w[pos]
    diff = G.table[:, G.inverse_vector]
    return MetricTable(full_w[diff], group=G, tag="extended")


def chain_extended_metric(chain: SubgroupChain, d_base: MetricTable) -> MetricTable:
    """Iterate :func:`extend_metric` along a chain, starting from terms[1].

    With a Hamming base this reproduces :func:`chain_metric` exactly.
    """
    G = chain.group
    report = validate_chain(G, chain)
    if not report.ok:
        raise ValueError("invalid chain: " + "; ".join(report.issues))
    terms = chain.terms
    if len(terms) < 2:
        raise ValueError("chain must contain at least the trivial and full terms")
    if d_base.size != terms[1].order:
        raise ValueError("base metric size does not match terms[1]")
    from .groups import subgroup as make_subgroup

    current = d_base
    for i in range(1, len(terms) - 1):
        ambient = terms[i + 1].as_group()
        inner = make_subgroup(
            ambient, [terms[i + 1].position(x) for x in terms[i].elements]
        )
        current = extend_metric(ambient, inner, current)
    return MetricTable(current.dist, group=G, tag="extended")


def diagonal_chain_metric(X: FiniteGroup, r: int, n: int) -> MetricTable:
    """Chain metric of the nested diagonal copies X < X^r < ... < X^(r^n).

    The weight of a nonzero tuple is the smallest i such that cyclically
    shifting it by r^(i-1) positions leaves it fixed (n+1 when no proper shift
    does); the metric is w applied to the componentwise difference.
    """
    if r < 2 or n < 1:
        raise ValueError("diagonal chain metric requires r >= 2 and n >= 1")
    m = r**n
    order = X.order**m
    check_carrier(order)
    G = product([X] * m)
    digits = digit_matrix(order, [X.order] * m)
    weight = np.full(order, n + 1, dtype=np.int64)
    for i in range(n, 0, -1):
        period = r ** (i - 1)
        fixed = np.all(digits == np.roll(digits, period, axis=1), axis=1)
        weight[fixed] = i
    weight[G.identity] = 0
    diff = G.table[:, G.inverse_vector]
    return MetricTable(weight[diff], group=G, tag="diagonal", meta={"r": r, "n": n})


def homogeneous_metric(p: int, n: int) -> MetricTable:
    """Rescaled two-level metric on Z_{p^n} matching the homogeneous weight.

    w(0) = 0; w(x) = p^(n-1) on the nonzero multiples of p^(n-1); otherwise
    w(x) = p^(n-2)(p-1).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 2:
        raise ValueError("homogeneous metric requires n >= 2")
    m = p**n
    check_carrier(m)
    x = np.arange(m)
    weight = np.full(m, p ** (n - 2) * (p - 1), dtype=np.int64)
    weight[x % p ** (n - 1) == 0] = p ** (n - 1)
    weight[0] = 0
    dist = weight[(x[:, None] - x[None, :]) % m]
    return MetricTable(dist, group=cyclic(m), tag="homogeneous", meta={"p": p, "n": n})


def pullback_metric(f: Sequence[int], d_Y: "MetricTable | object",
                    *, group: FiniteGroup | None = None, tag: str = "pullback") -> MetricTable:
    """Pull a metric back along an injective index map: d_f(x,x') = d(f(x), f(x'))."""
    image = [int(v) for v in f]
    if len(set(image)) != len(image):
        raise ValueError("map is not injective")
    if isinstance(d_Y, MetricTable):
        if max(image) >= d_Y.size or min(image) < 0:
            raise ValueError("image leaves the target carrier")
        dist = d_Y.dist[np.ix_(image, image)]
    else:
        n = len(image)
        dist = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(a, n):
                dist[a, b] = dist[b, a] = d_Y.d(image[a], image[b])
    return MetricTable(dist, group=group, tag=tag)


@dataclass(frozen=True)
class MetricReport:
    """Outcome of :func:`validate_metric`; ``subadditive`` is informational only."""

    axioms: bool
    triangle: bool
    ultrametric: bool
    right_invariant: bool | None
    left_invariant: bool | None
    subadditive: bool | None
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.axioms and self.triangle


def validate_metric(d, G: FiniteGroup | None = None) -> MetricReport:
    """Exhaustively check the metric axioms and invariance flags.

    Accepts a :class:`MetricTable` or a raw square array (so that broken
    candidate tables can be diagnosed rather than rejected at construction).
    Triangle and ultrametric checks are O(n^3); invariance checks need a
    carrier group (taken from the table when not supplied).
    """
    if isinstance(d, MetricTable):
        D = d.dist
        table_group = d.group
    else:
        D = np.asarray(d, dtype=np.int64)
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise ValueError("distance table must be square")
        table_group = None
    n = D.shape[0]
    failures: list[str] = []

    axioms = True
    if np.any(np.diag(D) != 0):
        axioms = False
        failures.append("nonzero diagonal")
    if not np.array_equal(D, D.T):
        axioms = False
        failures.append("not symmetric")
    off = ~np.eye(n, dtype=bool)
    if n > 1 and D[off].min() <= 0:
        x, y = map(int, np.argwhere((D <= 0) & off)[0])
        axioms = False
        failures.append(f"d({x},{y}) = {D[x, y]} but {x} != {y}")
    if D.max(initial=0) > n:
        axioms = False
        failures.append("entry exceeds the carrier size")

    triangle = True
    ultra = True
    for z in range(n):
        via = D[:, z][:, None] + D[z, :][None, :]
        bad = D > via
        if bad.any():
            if triangle:
                x, y = map(int, np.argwhere(bad)[0])
                failures.append(f"triangle fails: d({x},{y}) > d({x},{z}) + d({z},{y})")
            triangle = False
            ultra = False
            break
        if ultra:
            peak = np.maximum(D[:, z][:, None], D[z, :][None, :])
            if (D > peak).any():
                ultra = False

    group = G if G is not None else table_group
    right = left = subadd = None
    if group is not None:
        if group.order != n:
            raise ValueError("group order does not match the metric carrier")
        right = True
        left = True
        for h in range(group.order):
            rho = group.table[:, h]
            if right and not np.array_equal(D[np.ix_(rho, rho)], D):
                right = False
                failures.append(f"not right-invariant at h={h}")
            lam = group.table[h, :]
            if left and not np.array_equal(D[np.ix_(lam, lam)], D):
                left = False
            if not right and not left:
                break
        w = D[:, group.identity]
        subadd = bool(np.all(w[group.table] <= w[:, None] + w[None, :]))

    return MetricReport(axioms, triangle, ultra, right, left, subadd, tuple(failures))


def parse_metric(spec: str, G: FiniteGroup) -> MetricTable:
    """Parse the metric DSL against a carrier group.

    Specs: ``hamming``, ``lee``, ``qadic:<q>,<n>``, ``rt:<q>,<n>``,
    ``brt:<q>,<m1+m2+...>``, ``chain:<id>``, ``hom:<p>,<n>``, ``diag:<r>,<n>``,
    ``psi:<n>``.  ``chain:<id>`` takes either ``q=<int>`` (a geometric chain of
    index q) or a ``|``-separated ascending list of subgroup orders (cyclic
    carriers only).  ``diag`` treats the group as the base alphabet; every
    other spec must match the carrier exactly.
    """
    from . import embeddings
    from .groups import divisor_chain, geometric_chain

    head, _, arg = spec.strip().partition(":")
    head = head.strip()
    if head == "hamming":
        return hamming_metric(G.order, group=G)
    if head == "lee":
        if G.kind != "cyclic":
            raise ValueError("lee metric requires a cyclic carrier")
        return lee_metric(G.order)
    if head == "qadic":
        q, n = _two_ints(arg)
        if G.kind != "cyclic" or G.order != q**n:
            raise ValueError(f"qadic:{q},{n} requires the carrier Z{q**n}")
        return qadic_metric(q, n)
    if head == "rt":
        q, n = _two_ints(arg)
        _require_power_carrier(G, q, n)
        return rt_metric(q, n)
    if head == "brt":
        qtext, _, blocks = arg.partition(",")
        q = int(qtext)
        partition = BlockPartition(tuple(int(b) for b in blocks.split("+")))
        _require_power_carrier(G, q, partition.total)
        return brt_metric(cyclic(q), partition)
    if head == "hom":
        p, n = _two_ints(arg)
        if G.kind != "cyclic" or G.order != p**n:
            raise ValueError(f"hom:{p},{n} requires the carrier Z{p**n}")
        return homogeneous_metric(p, n)
    if head == "diag":
        r, n = _two_ints(arg)
        return diagonal_chain_metric(G, r, n)
    if head == "psi":
        n = int(arg)
        if G.kind != "cyclic":
            raise ValueError("psi metric requires a cyclic carrier")
        return embeddings.cyclic_embedding(G.order, n).source_metric
    if head == "chain":
        if arg.startswith("q="):
            return chain_metric(geometric_chain(G, int(arg[2:])))
        orders = [int(o) for o in arg.split("|") if o]
        return chain_metric(divisor_chain(G, orders))
    raise ValueError(f"unknown metric spec: {spec!r}")


def _two_ints(arg: str) -> tuple[int, int]:
    parts = arg.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated integers, got {arg!r}")
    return int(parts[0]), int(parts[1])


def _require_power_carrier(G: FiniteGroup, q: int, n: int) -> None:
    if G.order != q**n:
        raise ValueError(f"carrier order {G.order} is not {q}^{n}")
    if n > 1:
        if G.kind != "product" or any(f.order != q for f in G.params):
            raise ValueError(f"carrier must be a product of {n} groups of order {q}")
    elif G.order != q:
        raise ValueError("carrier order mismatch")
