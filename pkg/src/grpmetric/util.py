"""Small shared helpers: carrier bounds, integer arithmetic, mixed-radix codecs."""

from __future__ import annotations

import math
import os
from typing import Sequence

import numpy as np

DEFAULT_MAX_CARRIER = 4096


def max_carrier() -> int:
    """Dense-table carrier bound.

    GRPMETRIC_MAX_CARRIER may lower the default of 4096; raising it is ignored.
    """
    raw = os.environ.get("GRPMETRIC_MAX_CARRIER")
    if raw is None:
        return DEFAULT_MAX_CARRIER
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_CARRIER
    if value <= 0:
        return DEFAULT_MAX_CARRIER
    return min(value, DEFAULT_MAX_CARRIER)


def check_carrier(size: int, what: str = "carrier") -> None:
    bound = max_carrier()
    if size > bound:
        raise ValueError(f"{what} size {size} exceeds the dense-table bound {bound}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def totient(n: int) -> int:
    """Euler's totient of n >= 1."""
    if n < 1:
        raise ValueError("totient requires n >= 1")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def int_log(value: int, base: int) -> int | None:
    """Exact logarithm: the k with base**k == value, or None."""
    if base < 2 or value < 1:
        return None
    k = 0
    while value % base == 0:
        value //= base
        k += 1
    return k if value == 1 else None


def decode_mixed_radix(index: int, radices: Sequence[int]) -> tuple[int, ...]:
    """Digits of ``index``, leftmost radix most significant."""
    digits = []
    for radix in reversed(radices):
        index, digit = divmod(index, radix)
        digits.append(digit)
    if index:
        raise ValueError("index out of range for the given radices")
    return tuple(reversed(digits))


def encode_mixed_radix(digits: Sequence[int], radices: Sequence[int]) -> int:
    if len(digits) != len(radices):
        raise ValueError("digit/radix length mismatch")
    index = 0
    for digit, radix in zip(digits, radices):
        if not 0 <= digit < radix:
            raise ValueError(f"digit {digit} out of range for radix {radix}")
        index = index * radix + digit
    return index


def digit_matrix(count: int, radices: Sequence[int]) -> np.ndarray:
    """Rows 0..count-1 decoded into mixed-radix digit columns."""
    out = np.empty((count, len(radices)), dtype=np.int64)
    idx = np.arange(count, dtype=np.int64)
    for col in range(len(radices) - 1, -1, -1):
        idx, out[:, col] = np.divmod(idx, radices[col])
    return out


def format_cycles(perm: Sequence[int]) -> str:
    """Cycle notation for a permutation given as an image array (0-based)."""
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            seen[nxt] = True
            cycle.append(nxt)
            nxt = perm[nxt]
        if len(cycle) > 1:
            parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) if parts else "()"
