"""Explicit isometries and isometric embeddings between finite metric groups.

Every :class:`EmbeddingMap` is verified at construction: the map must be
injective and must preserve distances over all source pairs.  Nothing here is
trusted on the strength of a theorem alone; a failed verification raises
:class:`IsometryError` with a witness pair.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

import numpy as np

from .groups import (
    FiniteGroup,
    Subgroup,
    SubgroupChain,
    Transversal,
    cyclic,
    product,
    subgroup,
    transversal,
    validate_chain,
)
from .metrics import (
    BlockPartition,
    MetricTable,
    brt_metric,
    chain_metric,
    extend_metric,
    hamming_metric,
    hamming_power_metric,
    homogeneous_metric,
)
from .util import digit_matrix, int_log, is_prime, max_carrier, totient


class IsometryError(RuntimeError):
    """A constructed map failed its distance-preservation contract."""


class HammingSpace:
    """Evaluator-backed Hamming metric on q-ary n-tuples, addressed by index.

    Used as an embedding target when the carrier q^n is too large for a dense
    table; indices may be arbitrary-precision integers.
    """

    def __init__(self, q: int, n: int):
        if q < 2 or n < 1:
            raise ValueError("HammingSpace requires q >= 2 and n >= 1")
        self.q = q
        self.n = n
        self.size = q**n
        self.tag = "hamming-power"

    def digits(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            x, r = divmod(x, self.q)
            out.append(r)
        if x:
            raise ValueError("index out of range")
        return tuple(reversed(out))

    def d(self, x: int, y: int) -> int:
        return sum(a != b for a, b in zip(self.digits(x), self.digits(y)))

    def label(self, x: int) -> str:
        return "(" + ",".join(map(str, self.digits(x))) + ")"


def _distance_mismatch(image, src, tgt, target_rows=None):
    """First (x, y) with d_src(x,y) != d_tgt(f x, f y), or None."""
    n = len(image)
    if isinstance(tgt, MetricTable):
        got = tgt.dist[np.ix_(image, image)]
        bad = got != src.dist
        if bad.any():
            x, y = map(int, np.argwhere(bad)[0])
            return x, y
        return None
    if target_rows is None and isinstance(tgt, HammingSpace):
        target_rows = np.array([tgt.digits(v) for v in image], dtype=np.int64)
    if target_rows is not None:
        for x in range(n):
            got = np.count_nonzero(target_rows != target_rows[x], axis=1)
            bad = got != src.dist[x]
            if bad.any():
                return x, int(np.argwhere(bad)[0][0])
        return None
    for x in range(n):
        for y in range(x + 1, n):
            if tgt.d(image[x], image[y]) != src.d(x, y):
                return x, y
    return None


class EmbeddingMap:
    """An injective, distance-preserving map between two metric carriers."""

    def __init__(
        self,
        kind: str,
        image: Sequence[int],
        source_metric: MetricTable,
        target_metric,
        *,
        _target_rows: np.ndarray | None = None,
    ):
        image = tuple(int(v) for v in image)
        if len(image) != source_metric.size:
            raise ValueError("image length does not match the source carrier")
        if len(set(image)) != len(image):
            raise IsometryError("map is not injective")
        if any(not 0 <= v < target_metric.size for v in image):
            raise ValueError("image leaves the target carrier")
        witness = _distance_mismatch(image, source_metric, target_metric, _target_rows)
        if witness is not None:
            x, y = witness
            raise IsometryError(
                f"distances disagree at pair ({x},{y}): "
                f"source {source_metric.d(x, y)}, "
                f"target {target_metric.d(image[x], image[y])}"
            )
        self.kind = kind
        self.image = image
        self.source_metric = source_metric
        self.target_metric = target_metric

    @property
    def source_size(self) -> int:
        return self.source_metric.size

    @property
    def target_size(self) -> int:
        return self.target_metric.size

    def apply(self, x: int) -> int:
        return self.image[x]

    def __call__(self, x: int) -> int:
        return self.image[x]

    @property
    def is_bijective(self) -> bool:
        return self.source_size == self.target_size

    def inverse(self) -> "EmbeddingMap":
        if not self.is_bijective:
            raise ValueError("only bijective maps can be inverted")
        inv = [0] * self.target_size
        for x, v in enumerate(self.image):
            inv[v] = x
        return EmbeddingMap(self.kind, inv, self.target_metric, self.source_metric)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "source": self.source_size,
            "target": self.target_size,
            "image": list(self.image),
        }

    def __repr__(self) -> str:
        return f"EmbeddingMap({self.kind}, {self.source_size} -> {self.target_size})"


def compose(f: EmbeddingMap, g: EmbeddingMap) -> EmbeddingMap:
    """g after f; the target carrier of f must be the source carrier of g."""
    if f.target_size != g.source_size:
        raise ValueError("carrier mismatch: target of f is not the source of g")
    image = [g.image[v] for v in f.image]
    return EmbeddingMap("composed", image, f.source_metric, g.target_metric)


# ---------------------------------------------------------------------------
# Cyclic groups into Hamming powers of a subgroup
# ---------------------------------------------------------------------------


def cyclic_embedding_weight(m: int, n: int, t: int) -> int:
    """Closed-form weight on Z_m induced by the index-n subgroup embedding:
    t for t <= n, then the plateau n up to m-n, then m-t."""
    t %= m
    return min(t, n, m - t)


def _psi_orbit(n: int, i: int, rho: Sequence[int] | None) -> list[int]:
    """Visit order of the coordinates: i-1, rho(i-1), rho^2(i-1), ...

    ``rho`` is a 0-based image array and must be a single n-cycle.
    """
    if not 1 <= i <= n:
        raise ValueError(f"coordinate i must lie in 1..{n}")
    if rho is None:
        rho = [(k + 1) % n for k in range(n)]
    rho = [int(v) for v in rho]
    if sorted(rho) != list(range(n)):
        raise ValueError("rho must be a permutation of the coordinates")
    orbit = [i - 1]
    for _ in range(n - 1):
        orbit.append(rho[orbit[-1]])
    if len(set(orbit)) != n:
        raise ValueError("rho is not a single n-cycle")
    return orbit


def psi_digit_rows(m: int, n: int, u: int = 1, ordering: Sequence[int] | None = None) -> np.ndarray:
    """Subgroup-digit rows of the partial-sum embedding of Z_m into H^n.

    Row t holds the image of t as digits in Z_{m/n} (digit k times n is the
    group element).  Coordinates are filled along ``ordering`` (default
    0,1,...,n-1): with t = a*n + r, the first r visited coordinates carry
    (a+1)*u and the rest carry a*u, all mod m/n.
    """
    qh = m // n
    if ordering is None:
        ordering = range(n)
    rows = np.empty((m, n), dtype=np.int64)
    order_arr = np.fromiter(ordering, dtype=np.int64, count=n)
    for t in range(m):
        a, r = divmod(t, n)
        rows[t, order_arr[:r]] = ((a + 1) * u) % qh
        rows[t, order_arr[r:]] = (a * u) % qh
    return rows


def _pullback_from_rows(rows: np.ndarray) -> np.ndarray:
    m = rows.shape[0]
    dist = np.empty((m, m), dtype=np.int64)
    for t in range(m):
        dist[t] = np.count_nonzero(rows != rows[t], axis=1)
    return dist


def cyclic_embedding(
    m: int,
    n: int,
    i: int = 1,
    rho: Sequence[int] | None = None,
    h: int | None = None,
) -> EmbeddingMap:
    """Embed Z_m isometrically into H^n with the Hamming metric, H = <n> of index n.

    The image of t is the partial sum of the first t terms of the orbit of
    h*e_i under the n-cycle rho (defaults: h = n, i = 1, rho the coordinate
    shift).  The source metric is the pullback, which is translation invariant
    and matches :func:`cyclic_embedding_weight`; both facts are checked here.
    Requires n | m and a nontrivial subgroup (n < m for m > 1).
    """
    if m < 1 or n < 1 or m % n != 0:
        raise ValueError(f"n = {n} must divide m = {m}")
    if n == m and m > 1:
        raise ValueError("index n = m gives the trivial subgroup; the map cannot be injective")
    qh = m // n
    if h is None:
        h = n % m
    h %= m
    if m > 1 and math.gcd(h, m) != n:
        raise ValueError(f"h = {h} does not generate the subgroup <{n}> of Z_{m}")
    u = (h // n) % qh
    orbit = _psi_orbit(n, i, rho)
    rows = psi_digit_rows(m, n, u, orbit)
    dist = _pullback_from_rows(rows)

    formula = np.fromiter(
        (cyclic_embedding_weight(m, n, t) for t in range(m)), dtype=np.int64, count=m
    )
    idx = np.arange(m)
    if not np.array_equal(dist, formula[(idx[:, None] - idx[None, :]) % m]):
        raise AssertionError("pullback table disagrees with the closed-form weight")

    source = MetricTable(dist, group=cyclic(m), tag="psi", meta={"m": m, "n": n})
    image = [int(v) for v in (rows * (qh ** np.arange(n - 1, -1, -1))).sum(axis=1)]
    # dense targets only while cheap; the evaluator space verifies identically
    if qh**n <= 512:
        target = hamming_power_metric(qh, n)
        return EmbeddingMap("psi", image, source, target)
    target = HammingSpace(qh, n)
    return EmbeddingMap("psi", image, source, target, _target_rows=rows)


def cyclic_embedding_count(m: int, n: int) -> int:
    """Number of distinct parameter choices: phi(m/n) * n!."""
    if m < 1 or n < 1 or m % n != 0:
        raise ValueError(f"n = {n} must divide m = {m}")
    return totient(m // n) * math.factorial(n)


def cyclic_embedding_variants(m: int, n: int) -> Iterator[EmbeddingMap]:
    """All phi(m/n) * n! parameter variants, lazily.

    Orderings of the coordinate orbit are in bijection with (i, rho) pairs; the
    generator h runs over n*u for the units u of Z_{m/n}.
    """
    qh = m // n
    units = [u for u in range(1, qh + 1) if math.gcd(u, qh) == 1]
    for u in units:
        for perm in itertools.permutations(range(n)):
            rho = [0] * n
            for k in range(n):
                rho[perm[k]] = perm[(k + 1) % n]
            yield cyclic_embedding(m, n, i=perm[0] + 1, rho=rho, h=(n * u) % m)


def _canonical_visit_values(m: int, n: int, u: int) -> np.ndarray:
    """C[t, k]: subgroup digit at the k-th visited coordinate of the image of t."""
    qh = m // n
    t = np.arange(m)
    a, r = t // n, t % n
    k = np.arange(n)
    return ((a[:, None] + (k[None, :] < r[:, None])) * u) % qh


def _variant_batch_tables(m: int, n: int, u: int, perms: Sequence[Sequence[int]]) -> np.ndarray:
    """Pullback tables of a batch of ordering variants, shape (B, m, m)."""
    C = _canonical_visit_values(m, n, u)
    P = np.asarray(perms, dtype=np.int64)
    inv = np.argsort(P, axis=1)
    rows = np.moveaxis(C[:, inv], 1, 0)  # (B, m, n)
    return (rows[:, :, None, :] != rows[:, None, :, :]).sum(axis=-1)


def psi_variant_tables_identical(
    m: int, n: int, *, cap: int = 400_000, sample: int = 4000
) -> tuple[bool, int, int, bool]:
    """Do all parameter variants induce one pullback table?

    Enumerates every variant when phi(m/n)*n! <= cap; above the cap the
    generators are exhausted and the ordering space is covered by a seeded
    sample of ``sample`` orderings per generator (plus the identity and the
    reversal).  Returns (identical, variants_checked, variant_count,
    exhaustive).
    """
    if m < 1 or n < 1 or m % n != 0 or (n == m and m > 1):
        raise ValueError("need n | m with a nontrivial subgroup")
    qh = m // n
    units = [u for u in range(1, qh + 1) if math.gcd(u, qh) == 1]
    count = cyclic_embedding_count(m, n)
    exhaustive = count <= cap
    canonical: np.ndarray | None = None
    checked = 0
    identical = True
    for u in units:
        if exhaustive:
            perm_iter = itertools.permutations(range(n))
        else:
            rng = np.random.default_rng(1000 + u)
            perm_iter = itertools.chain(
                [tuple(range(n)), tuple(range(n - 1, -1, -1))],
                (tuple(rng.permutation(n)) for _ in range(sample)),
            )
        batch: list = []
        for p in perm_iter:
            batch.append(p)
            checked += 1
            if len(batch) == 512:
                tables = _variant_batch_tables(m, n, u, batch)
                if canonical is None:
                    canonical = tables[0].copy()
                identical &= bool(np.all(tables == canonical))
                batch = []
        if batch:
            tables = _variant_batch_tables(m, n, u, batch)
            if canonical is None:
                canonical = tables[0].copy()
            identical &= bool(np.all(tables == canonical))
    return identical, checked, count, exhaustive


# ---------------------------------------------------------------------------
# Positional base-q isometry
# ---------------------------------------------------------------------------


def base_q_isometry(q: int, n: int) -> EmbeddingMap:
    """The digit-evaluation bijection (a_1,...,a_n) -> a_1 q^(n-1) + ... + a_n,
    an isometry from the last-differing-coordinate metric to the base-q metric.

    With the mixed-radix element encoding the index map is the identity; the
    verified content is that the two independently built tables agree.  The
    inverse (the base-q expansion) is available via :meth:`EmbeddingMap.inverse`.
    """
    from .metrics import qadic_metric, rt_metric

    src = rt_metric(q, n)
    tgt = qadic_metric(q, n)
    return EmbeddingMap("base_q", range(q**n), src, tgt)


# ---------------------------------------------------------------------------
# Lifting subgroup isometries to ambient groups
# ---------------------------------------------------------------------------


def trivial_isometry(H1: Subgroup, H2: Subgroup) -> EmbeddingMap:
    """The positional bijection between two equal-order subgroups, with
    Hamming metrics on both sides (any bijection is an isometry for those)."""
    if H1.order != H2.order:
        raise ValueError("subgroups have different orders")
    d = hamming_metric(H1.order)
    return EmbeddingMap("trivial", range(H1.order), d, hamming_metric(H2.order))


def lift_isometry(
    tau: EmbeddingMap,
    T1: Transversal,
    T2: Transversal,
    rho: Sequence[int] | None = None,
) -> EmbeddingMap:
    """Lift a subgroup isometry tau to the ambient groups along coset maps.

    tau maps positions of H1 = T1.subgroup to positions of H2 = T2.subgroup
    and must be a verified isometry for its two metrics (re-checked here).
    Writing x = h * g_j with g_j the j-th coset representative, the lift sends
    x to tau(h) * rho(g_j).  The result is an isometry for the extended
    metrics of both sides.  ``rho`` permutes coset positions (default:
    order-preserving).
    """
    H1, H2 = T1.subgroup, T2.subgroup
    G1, G2 = H1.group, H2.group
    if G1.order != G2.order:
        raise ValueError("ambient groups have different orders")
    if H1.order != H2.order:
        raise ValueError("subgroups have different orders")
    if tau.source_size != H1.order or tau.target_size != H2.order:
        raise ValueError("tau does not match the subgroup carriers")
    # construction re-verifies distance preservation; injectivity + equal order
    # makes tau bijective
    EmbeddingMap("trivial", tau.image, tau.source_metric, tau.target_metric)

    k = len(T1.representatives)
    if len(T2.representatives) != k:
        raise ValueError("transversals have different lengths")
    if rho is None:
        rho = range(k)
    rho = [int(v) for v in rho]
    if sorted(rho) != list(range(k)):
        raise ValueError("rho must be a bijection between the transversals")

    d1 = extend_metric(G1, H1, tau.source_metric)
    d2 = extend_metric(G2, H2, tau.target_metric)

    coset_of = T1.coset_index_of()
    image = [0] * G1.order
    h1_elements = H1.elements
    for x in G1.elements():
        j = int(coset_of[x])
        g1 = T1.representatives[j]
        hpos = H1.position(G1.op(x, G1.inv(g1)))
        h2 = H2.elements[tau.image[hpos]]
        g2 = T2.representatives[rho[j]]
        image[x] = G2.op(h2, g2)
    return EmbeddingMap("eta", image, d1, d2)


def lift_gauge_check(
    tau: EmbeddingMap,
    T1: Transversal,
    T2: Transversal,
    rho_a: Sequence[int],
    rho_b: Sequence[int],
) -> bool:
    """Two lifts of the same tau differ by a symmetry of the extended target
    metric: check that eta_a o eta_b^-1 preserves it, exhaustively."""
    eta_a = lift_isometry(tau, T1, T2, rho_a)
    eta_b = lift_isometry(tau, T1, T2, rho_b)
    inv_b = [0] * eta_b.target_size
    for x, v in enumerate(eta_b.image):
        inv_b[v] = x
    f = [eta_a.image[inv_b[x]] for x in range(eta_a.target_size)]
    D = eta_a.target_metric.dist
    return bool(np.array_equal(D[np.ix_(f, f)], D))


# ---------------------------------------------------------------------------
# Chain isometries onto block coordinate metrics
# ---------------------------------------------------------------------------


def chain_isometry(G: FiniteGroup, chain: SubgroupChain) -> EmbeddingMap:
    """Isometry from (G, chain metric) onto H^e with the blockwise metric.

    H is the first nontrivial term; every term order must be a power of |H|
    (|H_i| = |H|^{e_i}), giving the target exponent e = log_|H| |G| and the
    block partition (1, e_2 - e_1, ..., e_n - e_{n-1}).  The map is built by
    repeatedly lifting the positional isometry H -> H x {e}^(e-1) with
    canonical transversals, then verified against the independently
    constructed chain and block tables.  A geometric chain yields the unit
    partition, i.e. the plain last-differing-coordinate metric.
    """
    report = validate_chain(G, chain)
    if not report.ok:
        raise ValueError("invalid chain: " + "; ".join(report.issues))
    terms = chain.terms
    n = len(terms) - 1
    if n < 1:
        raise ValueError("chain must contain a nontrivial term")
    H = terms[1]
    h = H.order
    exponents = []
    for i in range(1, n + 1):
        e_i = int_log(terms[i].order, h)
        if e_i is None:
            raise ValueError(
                f"chain is not graded by |H| = {h}: term {i} has order {terms[i].order}"
            )
        exponents.append(e_i)
    e = exponents[-1]
    partition = BlockPartition(
        tuple([exponents[0]] + [exponents[i] - exponents[i - 1] for i in range(1, n)])
    )

    Hgrp = H.as_group()
    target = product([Hgrp] * e)
    digits = digit_matrix(target.order, [h] * e)
    idp = Hgrp.identity
    k_sets = []
    for e_i in exponents:
        mask = np.all(digits[:, e_i:] == idp, axis=1)
        k_sets.append([int(v) for v in np.flatnonzero(mask)])

    tau = trivial_isometry(H, subgroup(target, k_sets[0]))
    for i in range(1, n):
        ambient1 = terms[i + 1].as_group()
        inner1 = subgroup(
            ambient1, [terms[i + 1].position(x) for x in terms[i].elements]
        )
        outer2 = subgroup(target, k_sets[i])
        ambient2 = outer2.as_group()
        inner2 = subgroup(ambient2, [outer2.position(x) for x in k_sets[i - 1]])
        tau = lift_isometry(tau, transversal(ambient1, inner1), transversal(ambient2, inner2))

    source = chain_metric(chain)
    dest = brt_metric(Hgrp, partition)
    if not np.array_equal(tau.source_metric.dist, source.dist):
        raise IsometryError("internal error: iterated extension is not the chain metric")
    if not np.array_equal(tau.target_metric.dist, dest.dist):
        raise IsometryError("internal error: target extension is not the block metric")
    return EmbeddingMap("chain_iso", tau.image, source, dest)


# ---------------------------------------------------------------------------
# First-order Reed-Muller encoding of the rescaled two-step chain metric
# ---------------------------------------------------------------------------


def rm1_generator_matrix(p: int, n: int) -> np.ndarray:
    """Generator matrix of the p-ary first-order Reed-Muller code RM(1, n-1):
    the all-ones row followed by the coordinate functions, with evaluation
    points in mixed-radix ascending order."""
    cols = p ** (n - 1)
    points = digit_matrix(cols, [p] * (n - 1))
    rows = np.ones((n, cols), dtype=np.int64)
    for k in range(1, n):
        rows[k] = points[:, k - 1]
    return rows


def rm1_embedding(p: int, n: int) -> EmbeddingMap:
    """Embed (Z_{p^n}, homogeneous metric) into p-ary Hamming space of length
    p^(n-1) through the first-order Reed-Muller code.

    The chain isometry of <0> < <p^(n-1)> < Z_{p^n} produces coefficient
    vectors (a_0, ..., a_{n-1}); evaluating a_0 + a_1 z_1 + ... + a_{n-1} z_{n-1}
    over all points z gives a codeword whose Hamming weight equals the
    homogeneous weight of the source element (verified over all pairs).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 2:
        raise ValueError("requires n >= 2")
    cols = p ** (n - 1)
    if cols > 1024:
        raise ValueError("code length bound exceeded (p^(n-1) <= 1024)")
    m = p**n
    G = cyclic(m)
    from .groups import make_chain

    chain = make_chain(G, [[0], range(0, m, p ** (n - 1)), range(m)])
    ci = chain_isometry(G, chain)
    coeff_rows = np.array([_digits_of(v, p, n) for v in ci.image], dtype=np.int64)
    codewords = coeff_rows @ rm1_generator_matrix(p, n) % p

    image = []
    for row in codewords:
        v = 0
        for digit in row:
            v = v * p + int(digit)
        image.append(v)
    source = homogeneous_metric(p, n)
    if p**cols <= max_carrier():
        return EmbeddingMap("rm1", image, source, hamming_power_metric(p, cols))
    return EmbeddingMap(
        "rm1", image, source, HammingSpace(p, cols), _target_rows=codewords
    )


def _digits_of(value: int, base: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        value, r = divmod(value, base)
        out.append(r)
    return tuple(reversed(out))
