"""Symmetry groups, regular representations, and isometry search.

Permutations are image tuples over ``0..n-1``.  The backtracking searches are
bounded at carrier size 12; a plain full-enumeration fallback is provided so
the pruned search can be certified against it on small carriers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .embeddings import EmbeddingMap, _distance_mismatch
from .groups import FiniteGroup
from .metrics import MetricTable, validate_metric
from .util import format_cycles

Permutation = tuple[int, ...]

SEARCH_LIMIT = 12
BRUTEFORCE_LIMIT = 9


def perm_compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(x) = p(q(x))."""
    return tuple(p[v] for v in q)


def perm_inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def is_full_cycle(p: Permutation) -> bool:
    """True when p is a single cycle through every point."""
    x, steps = 0, 0
    while True:
        x = p[x]
        steps += 1
        if x == 0:
            break
    return steps == len(p)


@dataclass(frozen=True)
class SymmetryGroup:
    """All distance-preserving permutations of a carrier; verified closed."""

    size: int
    elements: tuple[Permutation, ...]

    def __post_init__(self):
        members = set(self.elements)
        identity = tuple(range(self.size))
        if identity not in members:
            raise ValueError("symmetry group must contain the identity")
        for p in self.elements:
            if perm_inverse(p) not in members:
                raise ValueError("symmetry group not closed under inverse")
        # full closure check below ~2000 elements, seeded sample above
        if len(members) <= 2000:
            pairs = itertools.product(self.elements, repeat=2)
        else:
            rng = np.random.default_rng(0)
            picks = rng.integers(0, len(self.elements), size=(4_000_000 // len(members), 2))
            pairs = ((self.elements[a], self.elements[b]) for a, b in picks)
        for p, q in pairs:
            if perm_compose(p, q) not in members:
                raise ValueError("symmetry group not closed under composition")

    @property
    def order(self) -> int:
        return len(self.elements)

    def to_json_list(self) -> list[list[int]]:
        return [list(p) for p in self.elements]


def _row_profiles(D: np.ndarray) -> list[tuple[int, ...]]:
    return [tuple(sorted(row)) for row in D.tolist()]


def _all_distance_permutations(D1: np.ndarray, D2: np.ndarray, first_only: bool):
    """Backtracking search for bijections with D2[f(x), f(y)] = D1[x, y].

    Candidates for each position must match the sorted row profile and stay
    consistent with all previously placed points; candidates are tried in
    ascending index order, so the first result is deterministic.
    """
    n = D1.shape[0]
    prof1 = _row_profiles(D1)
    prof2 = _row_profiles(D2)
    if sorted(prof1) != sorted(prof2):
        return []
    results: list[Permutation] = []
    image = [-1] * n
    used = [False] * n

    def place(k: int):
        if k == n:
            results.append(tuple(image))
            return first_only
        for v in range(n):
            if used[v] or prof2[v] != prof1[k]:
                continue
            ok = True
            for j in range(k):
                if D2[v, image[j]] != D1[k, j]:
                    ok = False
                    break
            if ok:
                image[k] = v
                used[v] = True
                if place(k + 1):
                    return True
                used[v] = False
                image[k] = -1
        return False

    place(0)
    return results


def symmetry_group(d: MetricTable, *, limit: int = SEARCH_LIMIT) -> SymmetryGroup:
    """Every permutation preserving d, by pruned backtracking (carrier <= 12)."""
    if d.size > limit:
        raise ValueError(f"carrier {d.size} exceeds the symmetry search bound {limit}")
    perms = _all_distance_permutations(d.dist, d.dist, first_only=False)
    return SymmetryGroup(d.size, tuple(sorted(perms)))


def symmetry_group_bruteforce(d: MetricTable, *, limit: int = BRUTEFORCE_LIMIT) -> SymmetryGroup:
    """Full-enumeration fallback used to certify the pruned search."""
    n = d.size
    if n > limit:
        raise ValueError(f"carrier {n} exceeds the brute-force bound {limit}")
    D = d.dist
    found = []
    batch: list[Permutation] = []

    def flush():
        if not batch:
            return
        arr = np.array(batch, dtype=np.int64)
        ok = np.ones(len(batch), dtype=bool)
        for x in range(n):
            rows = D[arr[:, x][:, None], arr]  # (B, n)
            ok &= np.all(rows == D[x], axis=1)
            if not ok.any():
                batch.clear()
                return
        for keep, p in zip(ok, batch):
            if keep:
                found.append(p)
        batch.clear()

    for p in itertools.permutations(range(n)):
        batch.append(p)
        if len(batch) >= 20000:
            flush()
    flush()
    return SymmetryGroup(n, tuple(sorted(found)))


def is_isometric_embedding(f: Sequence[int], d1: MetricTable, d2) -> tuple[bool, tuple[int, int] | None]:
    """Check injectivity and distance preservation; returns a witness pair on failure."""
    image = [int(v) for v in f]
    if len(image) != d1.size:
        raise ValueError("map length does not match the source carrier")
    if any(not 0 <= v < d2.size for v in image):
        raise ValueError("image leaves the target carrier")
    if len(set(image)) != len(image):
        seen: dict[int, int] = {}
        for x, v in enumerate(image):
            if v in seen:
                return False, (seen[v], x)
            seen[v] = x
    witness = _distance_mismatch(image, d1, d2)
    return (witness is None), witness


def has_cyclic_representation(d: MetricTable) -> tuple[bool, Permutation | None]:
    """Does the symmetry group contain a single full-length cycle?

    Such a cycle generates a regular cyclic subgroup; the witness is returned
    in image form (use :func:`grpmetric.util.format_cycles` to display it).
    """
    gamma = symmetry_group(d)
    for p in gamma.elements:
        if is_full_cycle(p):
            return True, p
    return False, None


class RegularRepresentation(NamedTuple):
    """An isomorphism from a template group onto a regular subgroup of the
    symmetry group: ``perms[g]`` is the permutation assigned to element g."""

    group: FiniteGroup
    perms: tuple[Permutation, ...]


def _subgroups_of_order(elements: list[Permutation], order: int) -> list[tuple[Permutation, ...]]:
    """All subgroups of the given order of a small permutation group."""
    index = {p: i for i, p in enumerate(elements)}
    k = len(elements)
    compose_t = [[index[perm_compose(elements[i], elements[j])] for j in range(k)] for i in range(k)]
    inverse_t = [index[perm_inverse(p)] for p in elements]

    def closure(seed: frozenset[int]) -> frozenset[int]:
        closed = set(seed) | {index[tuple(range(len(elements[0])))]}
        frontier = list(closed)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(closed):
                    for c in (compose_t[a][b], compose_t[b][a], inverse_t[a]):
                        if c not in closed:
                            closed.add(c)
                            nxt.append(c)
            frontier = nxt
        return frozenset(closed)

    found: set[frozenset[int]] = set()
    # groups of order <= 12 need at most three generators
    singles = []
    for i in range(k):
        cl = closure(frozenset([i]))
        if len(cl) == order:
            found.add(cl)
        elif len(cl) < order and order % len(cl) == 0:
            singles.append(i)
    for gens in itertools.combinations(range(k), 2):
        cl = closure(frozenset(gens))
        if len(cl) == order:
            found.add(cl)
    for gens in itertools.combinations(singles, 3):
        cl = closure(frozenset(gens))
        if len(cl) == order:
            found.add(cl)
    return [tuple(elements[i] for i in sorted(s)) for s in sorted(found, key=sorted)]


def _isomorphism_onto(G: FiniteGroup, perms: Sequence[Permutation]) -> tuple[Permutation, ...] | None:
    """Try to realize G as the abstract group of ``perms``; returns the table
    g -> permutation or None.  Backtracking on a generating set of G."""
    n = G.order
    index = {p: i for i, p in enumerate(perms)}
    if len(perms) != n:
        return None
    perm_orders = []
    for p in perms:
        q, k = p, 1
        ident = tuple(range(len(p)))
        while q != ident:
            q = perm_compose(q, p)
            k += 1
        perm_orders.append(k)

    from .groups import element_order, subgroup_generated

    gens: list[int] = []
    span = {G.identity}
    for x in range(n):
        if x not in span:
            gens.append(x)
            span = set(subgroup_generated(G, gens).elements)
            if len(span) == n:
                break
    if len(span) != n:
        return None
    gen_orders = [element_order(G, g) for g in gens]

    def words(assignment: dict[int, Permutation]) -> tuple[Permutation, ...] | None:
        """Close the generator assignment into a full homomorphism table,
        using phi(x g) = phi(x) o phi(g)."""
        table: dict[int, Permutation] = {G.identity: tuple(range(len(perms[0])))}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, pg in assignment.items():
                    y = G.op(x, g)
                    cand = perm_compose(table[x], pg)
                    if y in table:
                        if table[y] != cand:
                            return None
                    else:
                        table[y] = cand
                        nxt.append(y)
            frontier = nxt
        if len(table) != n:
            return None
        images = [table[x] for x in range(n)]
        if len(set(images)) != n or any(p not in index for p in images):
            return None
        return tuple(images)

    def assign(k: int, chosen: dict[int, Permutation]):
        if k == len(gens):
            return words(chosen)
        for p, po in zip(perms, perm_orders):
            if po != gen_orders[k]:
                continue
            chosen[gens[k]] = p
            out = assign(k + 1, chosen)
            if out is not None:
                return out
            del chosen[gens[k]]
        return None

    return assign(0, {})


def find_regular_subgroups(d: MetricTable, G: FiniteGroup) -> list[RegularRepresentation]:
    """All regular subgroups of the symmetry group isomorphic to G.

    Regular means order |X| and transitive; for such actions,
    permutation-isomorphism and abstract isomorphism coincide.
    """
    if G.order != d.size:
        raise ValueError("template group order must equal the carrier size")
    gamma = symmetry_group(d)
    out: list[RegularRepresentation] = []
    for sub in _subgroups_of_order(list(gamma.elements), d.size):
        orbit = {p[0] for p in sub}
        if len(orbit) != d.size:
            continue  # not transitive
        iso = _isomorphism_onto(G, sub)
        if iso is not None:
            out.append(RegularRepresentation(G, iso))
    return out


class TransferResult(NamedTuple):
    group: FiniteGroup
    metric: MetricTable
    iso: EmbeddingMap


def transfer(d: MetricTable, R: Sequence[Permutation], x0: int = 0) -> TransferResult:
    """Install the group structure of a regular symmetry group on the carrier.

    For each x there is a unique g_x in R with g_x(x0) = x; the product
    x * y = g_y(x) makes the carrier a group with identity x0, carried by the
    bijection x -> g_x.  The original table becomes a right-invariant metric
    for that structure (verified), and the identity map is the isometry.
    """
    n = d.size
    perms = [tuple(p) for p in R]
    if len(perms) != n:
        raise ValueError("R must have exactly carrier-size many permutations")
    for p in perms:
        if not np.array_equal(d.dist[np.ix_(p, p)], d.dist):
            raise ValueError(f"permutation {format_cycles(p)} does not preserve the metric")
    reach: dict[int, Permutation] = {}
    for p in perms:
        x = p[x0]
        if x in reach:
            raise ValueError("R is not regular: two elements move the base point alike")
        reach[x] = p
    if len(reach) != n:
        raise ValueError("R is not regular: the base-point orbit misses the carrier")

    table = np.empty((n, n), dtype=np.int64)
    for y in range(n):
        gy = reach[y]
        for x in range(n):
            table[x, y] = gy[x]
    group = FiniteGroup(table, name=f"transfer@{x0}", kind="tabulated")
    metric = MetricTable(d.dist.copy(), group=group, tag="pullback")
    report = validate_metric(metric, group)
    if not report.right_invariant:
        raise AssertionError("transferred metric failed the right-invariance check")
    iso = EmbeddingMap("transfer", range(n), d, metric)
    return TransferResult(group, metric, iso)


def search_isometry(d1: MetricTable, d2: MetricTable) -> EmbeddingMap | None:
    """A distance-preserving bijection between equal carriers, if one exists.

    Sound fast rejection first: every point must map to a point with the same
    sorted distance row, so mismatched row-profile multisets (for invariant
    metrics, mismatched weight distributions) give None immediately.
    """
    if d1.size != d2.size:
        raise ValueError("carriers have different sizes")
    if d1.size > SEARCH_LIMIT:
        raise ValueError(f"carrier {d1.size} exceeds the search bound {SEARCH_LIMIT}")
    results = _all_distance_permutations(d1.dist, d2.dist, first_only=True)
    if not results:
        return None
    return EmbeddingMap("search", results[0], d1, d2)
