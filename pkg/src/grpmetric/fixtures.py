"""Reference 4-point metrics for the representation-search examples.

Three hand-transcribed integral metrics on the labelled carrier
(x, y, z, w) = (0, 1, 2, 3):

* ``d1`` - the 4-cycle x-y-z-w with unit edges and both diagonals at 2.
  Its symmetry group is dihedral of order 8 and it carries both a cyclic
  and a Klein regular representation.
* ``d2`` - four unit distances with d(x,y) = d(z,w) = 2.
* ``d3`` - the three point-pairings receive the three distinct values
  1, 2, 3 (d(x,y) = d(z,w) = 1, d(x,z) = d(y,w) = 2, d(x,w) = d(y,z) = 3).
"""

from __future__ import annotations

from .metrics import MetricTable, custom_metric

POINT_LABELS = ("x", "y", "z", "w")

_D1 = [
    [0, 1, 2, 1],
    [1, 0, 1, 2],
    [2, 1, 0, 1],
    [1, 2, 1, 0],
]

_D2 = [
    [0, 2, 1, 1],
    [2, 0, 1, 1],
    [1, 1, 0, 2],
    [1, 1, 2, 0],
]

_D3 = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]


def four_point_metric(name: str) -> MetricTable:
    """One of the fixtures ``d1``, ``d2``, ``d3``."""
    try:
        table = {"d1": _D1, "d2": _D2, "d3": _D3}[name]
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; expected d1, d2 or d3") from None
    return custom_metric(table, tag=f"fixture-{name}")
