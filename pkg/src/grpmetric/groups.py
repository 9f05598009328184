"""Finite groups on 0-based element indices, plus subgroups, chains and transversals.

Element encodings are fixed so that every run produces identical output:

* ``cyclic(m)`` uses the residues ``0..m-1``;
* products use mixed-radix indices with the leftmost factor most significant;
* ``dihedral(k)`` (order ``2k``) encodes the element ``r^a s^b`` as ``a + k*b``;
* ``quaternion(2^e)`` encodes ``a^s b^t`` as ``s + 2^(e-1) t``.

Group axioms are verified exhaustively for orders up to 512 and on a seeded
sample of triples above that.  All objects are immutable after construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .util import check_carrier, digit_matrix, int_log

EXHAUSTIVE_ORDER = 512
SUBGROUP_SEARCH_ORDER = 64


class GroupAxiomError(ValueError):
    """A supplied Cayley table violates the group axioms."""


def _verify_table(table: np.ndarray, rng_seed: int = 0) -> int:
    """Check shape, closure, identity, inverses and associativity.

    Returns the identity index.  Associativity is exhaustive up to
    ``EXHAUSTIVE_ORDER`` and sampled (200k seeded triples) above.
    """
    n = table.shape[0]
    if table.ndim != 2 or table.shape != (n, n):
        raise GroupAxiomError("Cayley table must be square")
    if table.min() < 0 or table.max() >= n:
        raise GroupAxiomError("Cayley table entries must lie in [0, order)")

    identity = None
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            identity = e
            break
    if identity is None:
        raise GroupAxiomError("no two-sided identity element")

    # Every row/column must be a permutation (Latin square), giving inverses.
    for i in range(n):
        if len(np.unique(table[i])) != n or len(np.unique(table[:, i])) != n:
            raise GroupAxiomError(f"row/column {i} is not a permutation")
    if not np.all(np.sort(np.argwhere(table == identity)[:, 0]) == idx):
        raise GroupAxiomError("some element has no inverse")

    if n <= EXHAUSTIVE_ORDER:
        for i in range(n):
            if not np.array_equal(table[table[i], :], table[i][table]):
                raise GroupAxiomError(f"associativity fails for left factor {i}")
    else:
        rng = np.random.default_rng(rng_seed)
        a, b, c = rng.integers(0, n, size=(3, 200_000))
        if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
            raise GroupAxiomError("associativity fails on sampled triples")
    return identity


class FiniteGroup:
    """A finite group backed by a dense Cayley table on ``0..order-1``."""

    def __init__(
        self,
        table: np.ndarray,
        *,
        name: str = "G",
        kind: str = "tabulated",
        params: tuple = (),
        labels: Sequence[str] | None = None,
        _verified_identity: int | None = None,
    ):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
        check_carrier(table.shape[0], "group order")
        if _verified_identity is None:
            self.identity = _verify_table(table)
        else:
            self.identity = _verified_identity
        table.setflags(write=False)
        self.table = table
        self.name = name
        self.kind = kind
        self.params = params
        self._labels = tuple(labels) if labels is not None else None
        inv = np.argmax(table == self.identity, axis=1)
        inv.setflags(write=False)
        self._inv = inv

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def elements(self) -> range:
        return range(self.order)

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    @property
    def inverse_vector(self) -> np.ndarray:
        return self._inv

    def label(self, x: int) -> str:
        if self._labels is not None:
            return self._labels[x]
        return str(x)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def cyclic(m: int) -> FiniteGroup:
    """The cyclic group Z_m with i*j = (i+j) mod m."""
    if m < 1:
        raise ValueError("cyclic group order must be >= 1")
    check_carrier(m, "group order")
    idx = np.arange(m, dtype=np.int64)
    table = (idx[:, None] + idx[None, :]) % m
    return FiniteGroup(table, name=f"Z{m}", kind="cyclic", params=(m,),
                       _verified_identity=0)


def product(factors: Sequence[FiniteGroup]) -> FiniteGroup:
    """Direct product with mixed-radix encoding, leftmost factor most significant.

    A single factor is returned unchanged.
    """
    if not factors:
        raise ValueError("empty factor list")
    if len(factors) == 1:
        return factors[0]
    order = math.prod(f.order for f in factors)
    check_carrier(order, "group order")
    radices = [f.order for f in factors]
    digits = digit_matrix(order, radices)
    table = np.zeros((order, order), dtype=np.int64)
    for col, f in enumerate(factors):
        d = digits[:, col]
        table = table * f.order + f.table[np.ix_(d, d)]
    labels = None
    if order <= EXHAUSTIVE_ORDER:
        labels = [
            "(" + ",".join(f.label(digits[x, c]) for c, f in enumerate(factors)) + ")"
            for x in range(order)
        ]
    name = " x ".join(f.name for f in factors)
    from .util import encode_mixed_radix

    identity = encode_mixed_radix([f.identity for f in factors], radices)
    return FiniteGroup(table, name=name, kind="product", params=tuple(factors),
                       labels=labels, _verified_identity=identity)


def dihedral(k: int) -> FiniteGroup:
    """Dihedral group of order 2k; r^a s^b is encoded as a + k*b."""
    if k < 1:
        raise ValueError("dihedral parameter must be >= 1")
    order = 2 * k
    check_carrier(order, "group order")
    idx = np.arange(order)
    a, b = idx % k, idx // k
    sign = np.where(b == 1, -1, 1)
    # (r^a1 s^b1)(r^a2 s^b2) = r^(a1 + (-1)^b1 a2) s^(b1+b2)
    aa = (a[:, None] + sign[:, None] * a[None, :]) % k
    bb = (b[:, None] + b[None, :]) % 2
    table = aa + k * bb
    labels = []
    for x in range(order):
        ax, bx = x % k, x // k
        rot = "" if ax == 0 else ("r" if ax == 1 else f"r{ax}")
        labels.append(("e" if ax == 0 else rot) if bx == 0 else (rot + "s"))
    return FiniteGroup(table, name=f"D{k}", kind="dihedral", params=(k,),
                       labels=labels, _verified_identity=0)


def quaternion(order: int) -> FiniteGroup:
    """Generalized quaternion group of order 2^e >= 8; a^s b^t maps to s + (order/2) t."""
    e = int_log(order, 2)
    if e is None or order < 8:
        raise ValueError("generalized quaternion order must be a power of two >= 8")
    check_carrier(order, "group order")
    half = order // 2
    idx = np.arange(order)
    s, t = idx % half, idx // half
    sign = np.where(t == 1, -1, 1)
    ss = (s[:, None] + sign[:, None] * s[None, :]) % half
    both = (t[:, None] & t[None, :]).astype(np.int64)
    ss = (ss + both * (half // 2)) % half  # b^2 = a^(order/4)
    tt = (t[:, None] + t[None, :]) % 2
    table = ss + half * tt
    labels = []
    for x in range(order):
        sx, tx = x % half, x // half
        pw = "" if sx == 0 else ("a" if sx == 1 else f"a{sx}")
        labels.append(("1" if sx == 0 else pw) if tx == 0 else (pw + "b"))
    return FiniteGroup(table, name=f"Q{order}", kind="quaternion", params=(order,),
                       labels=labels, _verified_identity=0)


def tabulated(table, *, name: str = "G") -> FiniteGroup:
    """Group from an explicit Cayley table; the axioms are verified."""
    return FiniteGroup(np.asarray(table), name=name, kind="tabulated")


_ATOM = re.compile(r"^(Z|D|Q)(\d+)$")


def parse_group(spec: str) -> FiniteGroup:
    """Parse the group DSL: ``Z<m>``, ``D<k>``, ``Q<2^e>``, ``A x B``, ``A^k``.

    Whitespace-insensitive and case-sensitive (``x`` is the product operator).
    """
    text = spec.replace(" ", "").replace("\t", "")
    if not text:
        raise ValueError("empty group spec")
    factors: list[FiniteGroup] = []
    for part in text.split("x"):
        if "^" in part:
            base, _, exp = part.partition("^")
            try:
                k = int(exp)
            except ValueError:
                raise ValueError(f"bad power in group spec: {part!r}") from None
            if k < 1:
                raise ValueError(f"power must be >= 1 in group spec: {part!r}")
            factors.extend([_parse_atom(base)] * k)
        else:
            factors.append(_parse_atom(part))
    return product(factors)


def _parse_atom(text: str) -> FiniteGroup:
    m = _ATOM.match(text)
    if not m:
        raise ValueError(f"bad group atom: {text!r}")
    family, value = m.group(1), int(m.group(2))
    if family == "Z":
        return cyclic(value)
    if family == "D":
        return dihedral(value)
    return quaternion(value)


def make_group(spec) -> FiniteGroup:
    """Build a group from a DSL string, a Cayley table, or pass one through."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, str):
        return parse_group(spec)
    return tabulated(spec)


def element_order(G: FiniteGroup, x: int) -> int:
    """Smallest k >= 1 with x^k = identity; always divides the group order."""
    if not 0 <= x < G.order:
        raise ValueError(f"element index {x} out of range")
    k, acc = 1, x
    while acc != G.identity:
        acc = G.op(acc, x)
        k += 1
    return k


@dataclass(frozen=True)
class Subgroup:
    """A verified subgroup, stored as the sorted tuple of its element indices."""

    group: FiniteGroup
    elements: tuple[int, ...]
    _positions: dict = field(repr=False, compare=False, default=None)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.group.order // len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._positions

    def position(self, x: int) -> int:
        """Position of a parent element within the sorted element list."""
        return self._positions[x]

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group on positions 0..order-1."""
        els = self.elements
        table = np.empty((self.order, self.order), dtype=np.int64)
        for i, a in enumerate(els):
            row = self.group.table[a, list(els)]
            table[i] = [self._positions[int(v)] for v in row]
        labels = [self.group.label(x) for x in els]
        return FiniteGroup(
            table,
            name=f"{self.group.name}|{self.order}",
            kind="tabulated",
            labels=labels,
            _verified_identity=self._positions[self.group.identity],
        )


def subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Verify that ``elements`` forms a subgroup of G and wrap it.

    Checks identity membership, closure, inverses, and that the order divides
    the parent order (Lagrange).
    """
    els = tuple(sorted(set(int(x) for x in elements)))
    if not els:
        raise ValueError("a subgroup cannot be empty")
    member = set(els)
    if G.identity not in member:
        raise ValueError("subgroup must contain the identity")
    for a in els:
        if not 0 <= a < G.order:
            raise ValueError(f"element index {a} out of range")
        if G.inv(a) not in member:
            raise ValueError(f"subgroup not closed under inverse at element {a}")
        for b in els:
            if G.op(a, b) not in member:
                raise ValueError(f"subgroup not closed under the operation at ({a},{b})")
    if G.order % len(els) != 0:
        raise ValueError("subgroup order does not divide the group order")
    positions = {x: i for i, x in enumerate(els)}
    return Subgroup(G, els, positions)


def _closure(G: FiniteGroup, seed: Iterable[int]) -> frozenset[int]:
    closed = {G.identity}
    frontier = list(set(seed) | {G.identity})
    closed.update(frontier)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(closed):
                for c in (G.op(a, b), G.op(b, a), G.inv(a)):
                    if c not in closed:
                        closed.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(closed)


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens`` (and the identity)."""
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < G.order:
            raise ValueError(f"generator index {g} out of range")
    return subgroup(G, _closure(G, gens))


def cyclic_subgroup_of_index(G: FiniteGroup, n: int) -> Subgroup:
    """The subgroup <n> of a cyclic group Z_m, of index n (requires n | m)."""
    if G.kind != "cyclic":
        raise ValueError("cyclic_subgroup_of_index requires a cyclic group")
    m = G.order
    if n < 1 or m % n != 0:
        raise ValueError(f"index {n} does not divide the group order {m}")
    return subgroup(G, range(0, m, n) if n < m else (0,))


@dataclass(frozen=True)
class Transversal:
    """Right-coset representatives: identity coset first, then ascending minima."""

    subgroup: Subgroup
    representatives: tuple[int, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.subgroup.group

    def coset_index_of(self) -> np.ndarray:
        """Array mapping every group element to its coset position."""
        G, H = self.group, self.subgroup
        out = np.full(G.order, -1, dtype=np.int64)
        for j, g in enumerate(self.representatives):
            for h in H.elements:
                out[G.op(h, g)] = j
        return out


def transversal(G: FiniteGroup, H: Subgroup) -> Transversal:
    """Canonical transversal of the right cosets Hg.

    The identity represents its own coset; every other coset is represented by
    its minimal element, and cosets are listed by ascending representative.
    """
    if H.group is not G:
        raise ValueError("subgroup does not belong to the given group")
    remaining = set(G.elements())
    reps = [G.identity]
    for h in H.elements:
        remaining.discard(h)
    while remaining:
        g = min(remaining)
        reps.append(g)
        for h in H.elements:
            remaining.discard(G.op(h, g))
    reps = [reps[0]] + sorted(reps[1:])
    out = Transversal(H, tuple(reps))
    if len(reps) != H.index:
        raise ValueError("transversal does not cover every coset exactly once")
    return out


@dataclass(frozen=True)
class SubgroupChain:
    """A strictly increasing chain {e} = H_0 < H_1 < ... < H_n = G."""

    group: FiniteGroup
    terms: tuple[Subgroup, ...]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def indices(self) -> tuple[int, ...]:
        """Consecutive index ratios [H_i : H_{i-1}]."""
        return tuple(
            self.terms[i].order // self.terms[i - 1].order
            for i in range(1, len(self.terms))
        )


@dataclass(frozen=True)
class ChainReport:
    ok: bool
    issues: tuple[str, ...]
    indices: tuple[int, ...]


def make_chain(G: FiniteGroup, element_sets: Sequence[Iterable[int]]) -> SubgroupChain:
    """Build and validate a chain from raw element sets (endpoints included)."""
    terms = tuple(subgroup(G, s) for s in element_sets)
    chain = SubgroupChain(G, terms)
    report = validate_chain(G, chain)
    if not report.ok:
        raise ValueError("invalid subgroup chain: " + "; ".join(report.issues))
    return chain


def validate_chain(G: FiniteGroup, chain: SubgroupChain) -> ChainReport:
    """Check endpoints, strict inclusions and the subgroup property of each term."""
    issues: list[str] = []
    terms = chain.terms
    if chain.group is not G:
        issues.append("chain is attached to a different group")
    if not terms:
        return ChainReport(False, ("chain has no terms",), ())
    for i, term in enumerate(terms):
        try:
            subgroup(G, term.elements)
        except ValueError as exc:
            issues.append(f"term {i} is not a subgroup: {exc}")
    if terms[0].elements != (G.identity,):
        issues.append("endpoint: first term must be the trivial subgroup")
    if terms[-1].order != G.order:
        issues.append("endpoint: last term must be the full group")
    for i in range(1, len(terms)):
        prev, cur = set(terms[i - 1].elements), set(terms[i].elements)
        if not prev < cur:
            issues.append(f"term {i - 1} is not strictly contained in term {i}")
    indices = chain.indices if not issues else ()
    return ChainReport(not issues, tuple(issues), indices)


def _extensions_of(G: FiniteGroup, base: frozenset[int], target_order: int) -> list[frozenset[int]]:
    """All subgroups of the given order containing ``base`` (desk scale only)."""
    found: set[frozenset[int]] = set()
    frontier = {base}
    seen = {base}
    while frontier:
        nxt: set[frozenset[int]] = set()
        for current in frontier:
            for x in range(G.order):
                if x in current:
                    continue
                grown = _closure(G, current | {x})
                if len(grown) > target_order or target_order % len(grown) != 0:
                    continue
                if len(grown) == target_order:
                    found.add(grown)
                elif grown not in seen:
                    seen.add(grown)
                    nxt.add(grown)
        frontier = nxt
    return sorted(found, key=lambda s: tuple(sorted(s)))


def geometric_chain(G: FiniteGroup, q: int) -> SubgroupChain:
    """A chain with every consecutive index equal to q, chosen deterministically.

    Requires |G| = q^n.  Cyclic groups use divisor arithmetic directly; other
    groups (order <= 64) take, at each step, the lexicographically smallest
    qualifying subgroup by sorted element list.
    """
    if q < 2:
        raise ValueError("chain index q must be >= 2")
    n = int_log(G.order, q)
    if n is None:
        raise ValueError(f"group order {G.order} is not a power of {q}")
    if G.kind == "cyclic":
        m = G.order
        sets = [range(0, m, m // q**i) if q**i < m else range(m) for i in range(n + 1)]
        sets[0] = [0]
        return make_chain(G, sets)
    if G.order > SUBGROUP_SEARCH_ORDER:
        raise ValueError(
            f"subgroup search is limited to order {SUBGROUP_SEARCH_ORDER} "
            "for non-cyclic groups"
        )
    sets = [frozenset({G.identity})]
    for i in range(1, n + 1):
        candidates = _extensions_of(G, sets[-1], q**i)
        if not candidates:
            raise RuntimeError(
                f"internal error: no index-{q} extension above term {i - 1}"
            )
        sets.append(candidates[0])
    return make_chain(G, [sorted(s) for s in sets])


def coordinate_chain(G: FiniteGroup) -> SubgroupChain:
    """The chain X^i x {0}^(n-i) inside a product of n equal factors.

    Term i frees the leftmost i coordinates; its elements are exactly the
    indices divisible by |X|^(n-i).
    """
    if G.kind != "product":
        raise ValueError("coordinate_chain requires a product group")
    factors = G.params
    q = factors[0].order
    if any(f.order != q for f in factors):
        raise ValueError("coordinate_chain requires equal-order factors")
    n = len(factors)
    sets = [range(0, G.order, q ** (n - i)) if i else [0] for i in range(n + 1)]
    return make_chain(G, sets)


def divisor_chain(G: FiniteGroup, orders: Sequence[int]) -> SubgroupChain:
    """Chain of the unique cyclic subgroups with the given ascending orders.

    ``orders`` lists the orders of the intermediate terms; the trivial subgroup
    and the full group are appended automatically if missing.
    """
    if G.kind != "cyclic":
        raise ValueError("divisor_chain requires a cyclic group")
    m = G.order
    full = [o for o in orders if o not in (1, m)]
    full = [1] + full + [m]
    sets = []
    for o in full:
        if o < 1 or m % o != 0:
            raise ValueError(f"order {o} does not divide {m}")
        sets.append(range(0, m, m // o) if o > 1 else [0])
    return make_chain(G, sets)


def smallest_order2_subgroup(G: FiniteGroup) -> Subgroup:
    """The order-2 subgroup generated by the smallest involution."""
    for x in G.elements():
        if x != G.identity and G.op(x, x) == G.identity:
            return subgroup(G, (G.identity, x))
    raise ValueError("group has no element of order 2")
