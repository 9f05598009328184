"""Weight functions, weight distributions, and enumerator polynomials."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .groups import SubgroupChain, validate_chain
from .metrics import MetricTable


@dataclass(frozen=True)
class WeightFunction:
    """w(x) = d(x, base) for a fixed base point; zero exactly at the base."""

    values: tuple[int, ...]
    base: int

    @property
    def size(self) -> int:
        return len(self.values)

    def __getitem__(self, x: int) -> int:
        return self.values[x]


@dataclass(frozen=True)
class EnumeratorPolynomial:
    """Coefficients A_0..A_N of sum_x t^w(x), stored ascending by weight.

    A_0 = 1 (the base point is the unique weight-0 element) and the
    coefficients sum to the carrier size.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("enumerator must have A_0 = 1")
        if any(c < 0 for c in self.coeffs):
            raise ValueError("enumerator coefficients must be nonnegative")

    @property
    def carrier(self) -> int:
        return sum(self.coeffs)

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def pretty(self) -> str:
        """Descending-degree display, e.g. ``4t^3 + 2t^2 + t + 1``."""
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                t = "t" if i == 1 else f"t^{i}"
                parts.append(t if c == 1 else f"{c}{t}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> str:
        return json.dumps({"coeffs": list(self.coeffs), "carrier": self.carrier})

    def __str__(self) -> str:
        return self.pretty()


def weight_function(d: MetricTable, x0: int | None = None) -> WeightFunction:
    """Row x0 of the distance table; x0 defaults to the group identity (else 0)."""
    if x0 is None:
        x0 = d.group.identity if d.group is not None else 0
    if not 0 <= x0 < d.size:
        raise ValueError(f"base point {x0} out of range")
    return WeightFunction(tuple(int(v) for v in d.dist[x0]), x0)


def weight_enumerator(d: MetricTable, x0: int | None = None) -> EnumeratorPolynomial:
    """A_i = #{ x : d(x, x0) = i }."""
    w = weight_function(d, x0)
    counts = np.bincount(np.asarray(w.values, dtype=np.int64))
    return EnumeratorPolynomial(tuple(int(c) for c in counts))


def chain_enumerator(chain: SubgroupChain) -> EnumeratorPolynomial:
    """Closed-form enumerator of a chain metric: A_i = |H_i| - |H_{i-1}|, A_0 = 1."""
    report = validate_chain(chain.group, chain)
    if not report.ok:
        raise ValueError("invalid chain: " + "; ".join(report.issues))
    sizes = [t.order for t in chain.terms]
    coeffs = [1] + [sizes[i] - sizes[i - 1] for i in range(1, len(sizes))]
    return EnumeratorPolynomial(tuple(coeffs))


def geometric_enumerator(q: int, n: int) -> EnumeratorPolynomial:
    """1 + (q-1) * sum_{i>=1} q^(i-1) t^i, the enumerator shared by the base-q
    and last-differing-coordinate metrics on a carrier of size q^n."""
    return EnumeratorPolynomial((1,) + tuple((q - 1) * q ** (i - 1) for i in range(1, n + 1)))


def product_enumerator_check(d1: MetricTable, d2: MetricTable) -> bool:
    """Verify the product-space enumerator decomposition by exhaustive expansion.

    W_prod = W_1 + W_2 - 1 + sum over pairs of nonzero points of t^(w1+w2);
    the constant is adjusted so each element is counted exactly once (the two
    carriers share the base point 0, which would otherwise be counted twice).
    Also cross-checks against the polynomial product W_1 * W_2.
    """
    from .metrics import product_metric

    w1 = weight_function(d1, 0)
    w2 = weight_function(d2, 0)
    lhs = weight_enumerator(product_metric([d1, d2]), 0).coeffs

    top = max(w1.values) + max(w2.values)
    rhs = np.zeros(top + 1, dtype=np.int64)
    for i, c in enumerate(weight_enumerator(d1, 0).coeffs):
        rhs[i] += c
    for i, c in enumerate(weight_enumerator(d2, 0).coeffs):
        rhs[i] += c
    rhs[0] -= 1
    for x1 in range(d1.size):
        if w1.values[x1] == 0:
            continue
        for x2 in range(d2.size):
            if w2.values[x2] == 0:
                continue
            rhs[w1.values[x1] + w2.values[x2]] += 1

    conv = np.convolve(
        np.bincount(np.asarray(w1.values)), np.bincount(np.asarray(w2.values))
    )
    lhs_arr = np.zeros(top + 1, dtype=np.int64)
    lhs_arr[: len(lhs)] = lhs
    conv_arr = np.zeros(top + 1, dtype=np.int64)
    conv_arr[: len(conv)] = conv
    return bool(np.array_equal(lhs_arr, rhs) and np.array_equal(lhs_arr, conv_arr))
