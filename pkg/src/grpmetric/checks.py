"""Named verification checks behind the ``verify`` command.

Each check exhausts an advertised pair/element space and reports how much it
covered; a failing check always carries a witness string.  Check names are
stable identifiers forming part of the CLI contract.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import embeddings, groups, isometry, metrics, weights
from .util import format_cycles


@dataclass
class VerificationReport:
    check: str
    params: dict
    status: str  # pass | fail | error
    witness: str | None
    counts: dict
    elapsed_s: float

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "counts": self.counts,
            "elapsed_s": round(self.elapsed_s, 3),
        }


class CheckFailure(Exception):
    """Raised inside a check body to fail with a witness."""


def _need(condition: bool, witness: str) -> None:
    if not condition:
        raise CheckFailure(witness)


def run_check(name: str, **params) -> VerificationReport:
    """Run a named check; unknown names raise KeyError."""
    fn = CHECKS[name]
    start = time.perf_counter()
    clean = {k: v for k, v in params.items() if v is not None}
    try:
        counts = fn(**clean)
        status, witness = "pass", None
    except CheckFailure as exc:
        status, witness, counts = "fail", str(exc), {}
    except (ValueError, embeddings.IsometryError) as exc:
        status, witness, counts = "fail", f"{type(exc).__name__}: {exc}", {}
    return VerificationReport(name, clean, status, witness, counts,
                              time.perf_counter() - start)


# ---------------------------------------------------------------------------


def check_psi_embeddings(m_max: int = 60, variants_m_max: int = 24) -> dict:
    """Canonical subgroup embeddings of Z_m: injective, distance-preserving
    against the closed-form weight, and parameter-independent."""
    pairs = 0
    for m in range(1, m_max + 1):
        divisors = [n for n in range(1, m) if m % n == 0] or [1]
        for n in divisors:
            emb = embeddings.cyclic_embedding(m, n)
            formula = np.array(
                [embeddings.cyclic_embedding_weight(m, n, t) for t in range(m)]
            )
            idx = np.arange(m)
            table = formula[(idx[:, None] - idx[None, :]) % m]
            _need(
                np.array_equal(emb.source_metric.dist, table),
                f"pullback differs from the closed form at m={m}, n={n}",
            )
            pairs += m * m
    variants = 0
    sampled_pairs = []
    for m in range(2, variants_m_max + 1):
        for n in (n for n in range(1, m) if m % n == 0):
            same, checked, count, exhaustive = embeddings.psi_variant_tables_identical(m, n)
            _need(same, f"variant tables differ at m={m}, n={n}")
            variants += checked
            if not exhaustive:
                sampled_pairs.append(f"{m}/{n}")
    counts = {"pairs": pairs, "variants": variants}
    if sampled_pairs:
        counts["variant_space_sampled_at"] = sampled_pairs
    return counts


def check_base_q(q: int = 2, n: int = 3) -> dict:
    """Digit-evaluation bijection between the coordinate and base-q metrics."""
    emb = embeddings.base_q_isometry(q, n)
    size = q**n
    _need(emb.is_bijective, "map is not bijective")
    roundtrip = embeddings.compose(emb, emb.inverse())
    _need(roundtrip.image == tuple(range(size)), "inverse roundtrip is not the identity")
    enum = weights.weight_enumerator(emb.source_metric)
    _need(
        enum == weights.geometric_enumerator(q, n),
        f"enumerator {enum.pretty()} differs from the closed form",
    )
    return {"pairs": size * (size - 1) // 2, "carrier": size}


ORDER8_SPECS = ("Z8", "Z2^3", "Z2 x Z4", "D4", "Q8")


def check_extension_order8() -> dict:
    """Every pair of order-8 groups is isometric for the lifted order-2 metric."""
    import itertools

    gs = [groups.parse_group(s) for s in ORDER8_SPECS]
    subs = [groups.smallest_order2_subgroup(G) for G in gs]
    lifts = 0
    for (G1, H1), (G2, H2) in itertools.combinations(zip(gs, subs), 2):
        tau = embeddings.trivial_isometry(H1, H2)
        eta = embeddings.lift_isometry(
            tau, groups.transversal(G1, H1), groups.transversal(G2, H2)
        )
        enum = weights.weight_enumerator(eta.source_metric)
        _need(enum.pretty() == "6t^2 + t + 1",
              f"{G1.name} vs {G2.name}: enumerator {enum.pretty()}")
        lifts += 1
    return {"lifts": lifts, "pairs_per_lift": 28}


def check_geometric_chain_rt(group: str = "D4", q: int = 2) -> dict:
    """A geometric chain gives the unit partition and the plain coordinate metric."""
    G = groups.parse_group(group)
    chain = groups.geometric_chain(G, q)
    iso = embeddings.chain_isometry(G, chain)
    n = chain.length
    _need(
        iso.target_metric.meta.get("partition") == (1,) * n,
        f"partition {iso.target_metric.meta.get('partition')} is not all ones",
    )
    rt = metrics.rt_metric(q, n)
    _need(np.array_equal(iso.target_metric.dist, rt.dist),
          "target table differs from the coordinate metric")
    return {"pairs": G.order * (G.order - 1) // 2, "chain_length": n}


def check_chain_rt_all(q: int = 2) -> dict:
    """Chain metrics of q^n-order groups land in (H^n, coordinate metric)."""
    if q == 2:
        specs = ORDER8_SPECS
    elif q == 3:
        specs = ("Z27", "Z3^3", "Z9 x Z3")
    else:
        raise ValueError("only q in {2, 3} is wired up for this check")
    total = 0
    for spec in specs:
        G = groups.parse_group(spec)
        iso = embeddings.chain_isometry(G, groups.geometric_chain(G, q))
        n = iso.target_metric.meta["partition"]
        _need(n == (1,) * len(n), f"{spec}: partition {n} is not all ones")
        rt = metrics.rt_metric(q, len(n))
        _need(np.array_equal(iso.target_metric.dist, rt.dist),
              f"{spec}: target differs from the coordinate metric")
        total += G.order * (G.order - 1) // 2
    return {"groups": len(specs), "pairs": total}


def check_block_chain() -> dict:
    """Chain isometries for graded chains, plus the rescaled-weight example."""
    z8 = groups.cyclic(8)
    iso = embeddings.chain_isometry(z8, groups.geometric_chain(z8, 2))
    _need(iso.target_metric.meta["partition"] == (1, 1, 1), "Z8 partition")
    pairs = 28

    for q in (2, 3):
        for n in (2, 3):
            m = q**n
            G = groups.cyclic(m)
            chain = groups.make_chain(G, [[0], range(0, m, q ** (n - 1)), range(m)])
            iso = embeddings.chain_isometry(G, chain)
            _need(iso.target_metric.meta["partition"] == (1, n - 1),
                  f"two-step partition at q={q}, n={n}")
            pairs += m * (m - 1) // 2
            # rescaling the two chain strata gives the homogeneous weights
            scale = {0: 0, 1: q ** (n - 1), 2: q ** (n - 2) * (q - 1)}
            hom = metrics.homogeneous_metric(q, n)
            chain_w = metrics.chain_metric(chain).dist[0]
            _need(
                all(scale[int(c)] == int(h) for c, h in zip(chain_w, hom.dist[0])),
                f"rescaled weights differ at q={q}, n={n}",
            )

    for spec in ("D4", "Q8"):
        G = groups.parse_group(spec)
        iso = embeddings.chain_isometry(G, groups.geometric_chain(G, 2))
        _need(iso.target_metric.meta["partition"] == (1, 1, 1), f"{spec} partition")
        pairs += 28
    return {"pairs": pairs}


def check_cyclic_representation(p: int = 2, n: int = 3) -> dict:
    """Full-length cycles exist in the Hamming symmetry group only at (2,2);
    the group order is (p!)^n n!."""
    import math

    d = metrics.hamming_power_metric(p, n)
    gamma = isometry.symmetry_group(d)
    expected_order = math.factorial(p) ** n * math.factorial(n)
    _need(gamma.order == expected_order,
          f"symmetry group order {gamma.order} != {expected_order}")
    found, cycle = isometry.has_cyclic_representation(d)
    expected = (p, n) == (2, 2) or n == 1
    _need(found == expected,
          f"cycle {'found: ' + format_cycles(cycle) if found else 'missing'}"
          f" but expected {'one' if expected else 'none'}")
    return {"symmetries": gamma.order, "carrier": p**n}


def check_chain_identities(q_max: int = 4, n_max: int = 4) -> dict:
    """Chain metrics of the divisor and coordinate chains reproduce the base-q
    and coordinate metrics entrywise."""
    entries = 0
    for q in range(2, q_max + 1):
        for n in range(1, n_max + 1):
            if q**n > 256:
                continue
            zq = groups.cyclic(q**n)
            _need(
                metrics.chain_metric(groups.geometric_chain(zq, q))
                == metrics.qadic_metric(q, n),
                f"divisor chain differs from base-{q} at n={n}",
            )
            prod = groups.product([groups.cyclic(q)] * n)
            if n == 1:
                coord = groups.make_chain(prod, [[0], range(q)])
            else:
                coord = groups.coordinate_chain(prod)
            _need(
                metrics.chain_metric(coord) == metrics.rt_metric(q, n),
                f"coordinate chain differs from the coordinate metric at q={q}, n={n}",
            )
            entries += 2 * (q**n) ** 2
    return {"entries": entries}


def check_z12_tables() -> dict:
    """The four subgroup embeddings of Z_12: weight rows and enumerators."""
    rows = {
        6: (0, 1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1),
        4: (0, 1, 2, 3, 4, 4, 4, 4, 4, 3, 2, 1),
        3: (0, 1, 2, 3, 3, 3, 3, 3, 3, 3, 2, 1),
        2: (0, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1),
    }
    enums = {
        6: "t^6 + 2t^5 + 2t^4 + 2t^3 + 2t^2 + 2t + 1",
        4: "5t^4 + 2t^3 + 2t^2 + 2t + 1",
        3: "7t^3 + 2t^2 + 2t + 1",
        2: "9t^2 + 2t + 1",
    }
    for n, row in rows.items():
        emb = embeddings.cyclic_embedding(12, n)
        got = tuple(int(v) for v in emb.source_metric.dist[0])
        _need(got == row, f"n={n}: weight row {got}")
        enum = weights.weight_enumerator(emb.source_metric)
        _need(enum.pretty() == enums[n], f"n={n}: enumerator {enum.pretty()}")
    return {"rows": 4, "pairs": 4 * 144}


def check_base_q_example() -> dict:
    """Order-8 goldens: weights and the shared enumerator 4t^3+2t^2+t+1."""
    q23 = metrics.qadic_metric(2, 3)
    rt23 = metrics.rt_metric(2, 3)
    _need(tuple(q23.dist[0]) == (0, 3, 2, 3, 1, 3, 2, 3), "base-2 weight row")
    _need(tuple(rt23.dist[0]) == (0, 3, 2, 3, 1, 3, 2, 3), "coordinate weight row")
    for d in (q23, rt23):
        enum = weights.weight_enumerator(d)
        _need(enum.pretty() == "4t^3 + 2t^2 + t + 1", f"enumerator {enum.pretty()}")
    embeddings.base_q_isometry(2, 3)
    return {"pairs": 28, "carriers": 2}


def check_order6_tables() -> dict:
    """Z_6 and the dihedral group of order 6: subgroup-metric weight tables."""
    z6, d3 = groups.cyclic(6), groups.dihedral(3)
    cases = [
        (z6, (0, 3), (0, 2, 2, 1, 2, 2), "4t^2 + t + 1"),
        (z6, (0, 2, 4), (0, 2, 1, 2, 1, 2), "3t^2 + 2t + 1"),
        (d3, (0, 3), (0, 2, 2, 1, 2, 2), "4t^2 + t + 1"),
        (d3, (0, 1, 2), (0, 1, 1, 2, 2, 2), "3t^2 + 2t + 1"),
    ]
    for G, els, row, enum_str in cases:
        H = groups.subgroup(G, els)
        ext = metrics.extend_metric(G, H, metrics.hamming_metric(len(els)))
        _need(tuple(int(v) for v in ext.dist[0]) == row,
              f"{G.name} |H|={len(els)}: row {tuple(ext.dist[0])}")
        enum = weights.weight_enumerator(ext)
        _need(enum.pretty() == enum_str, f"{G.name}: enumerator {enum.pretty()}")
    _need(weights.weight_enumerator(metrics.lee_metric(6)).pretty()
          == "t^3 + 2t^2 + 2t + 1", "Lee enumerator on Z_6")
    ham6 = metrics.hamming_metric(6, group=z6)
    _need(weights.weight_enumerator(ham6).pretty() == "5t + 1", "Hamming enumerator")
    # the two subgroup choices lift to isometries between the two groups
    for za, db in [((0, 3), (0, 3)), ((0, 2, 4), (0, 1, 2))]:
        Ha, Hb = groups.subgroup(z6, za), groups.subgroup(d3, db)
        tau = embeddings.trivial_isometry(Ha, Hb)
        embeddings.lift_isometry(tau, groups.transversal(z6, Ha),
                                 groups.transversal(d3, Hb))
    return {"tables": 6, "lifts": 2, "pairs": 6 * 15 + 2 * 15}


def check_order8_tables() -> dict:
    """Order-8 groups: order-2 stratum weights and the extension enumerators."""
    for spec in ORDER8_SPECS:
        G = groups.parse_group(spec)
        H = groups.smallest_order2_subgroup(G)
        ext = metrics.extend_metric(G, H, metrics.hamming_metric(2))
        w = ext.dist[G.identity]
        _need(w[H.elements[1]] == 1, f"{spec}: involution weight")
        enum = weights.weight_enumerator(ext)
        _need(enum.pretty() == "6t^2 + t + 1", f"{spec}: enumerator {enum.pretty()}")
    z4_cases = [("Z8", (0, 2, 4, 6)), ("Z2 x Z4", (0, 1, 2, 3)),
                ("D4", (0, 1, 2, 3)), ("Q8", (0, 1, 2, 3))]
    for spec, els in z4_cases:
        G = groups.parse_group(spec)
        H = groups.subgroup(G, els)
        e1 = weights.weight_enumerator(metrics.extend_metric(G, H, metrics.hamming_metric(4)))
        e2 = weights.weight_enumerator(metrics.extend_metric(G, H, metrics.lee_metric(4)))
        _need(e1.pretty() == "4t^2 + 3t + 1", f"{spec}: Ext(Ham) {e1.pretty()}")
        _need(e2.pretty() == "4t^3 + t^2 + 2t + 1", f"{spec}: Ext(Lee) {e2.pretty()}")
    klein_cases = [("Z2^3", (0, 1, 2, 3)), ("Z2 x Z4", (0, 2, 4, 6)), ("D4", (0, 2, 4, 6))]
    for spec, els in klein_cases:
        G = groups.parse_group(spec)
        H = groups.subgroup(G, els)
        e1 = weights.weight_enumerator(metrics.extend_metric(G, H, metrics.hamming_metric(4)))
        e2 = weights.weight_enumerator(
            metrics.extend_metric(G, H, metrics.hamming_power_metric(2, 2)))
        _need(e1.pretty() == "4t^2 + 3t + 1", f"{spec}: Ext(Ham) {e1.pretty()}")
        _need(e2.pretty() == "4t^3 + t^2 + 2t + 1", f"{spec}: Ext(Ham^2) {e2.pretty()}")
    return {"groups": 5, "extension_tables": 19}


def check_diagonal_example() -> dict:
    """Diagonal-chain and coordinate enumerators on the 256-element carrier."""
    diag = metrics.diagonal_chain_metric(groups.cyclic(2), 2, 3)
    enum = weights.weight_enumerator(diag)
    _need(enum.pretty() == "240t^4 + 12t^3 + 2t^2 + t + 1",
          f"diagonal enumerator {enum.pretty()}")
    rt = metrics.rt_metric(2, 8)
    enum_rt = weights.weight_enumerator(rt)
    _need(enum_rt.pretty()
          == "128t^8 + 64t^7 + 32t^6 + 16t^5 + 8t^4 + 4t^3 + 2t^2 + t + 1",
          f"coordinate enumerator {enum_rt.pretty()}")
    return {"carrier": 256, "enumerators": 2}


CHECKS: dict[str, Callable[..., dict]] = {
    "thm-4.4": check_psi_embeddings,
    "thm-5.2": check_base_q,
    "thm-6.1": check_extension_order8,
    "prop-7.10": check_geometric_chain_rt,
    "thm-7.11": check_chain_rt_all,
    "thm-8.2": check_block_chain,
    "prop-3.3": check_cyclic_representation,
    "rem-7.2": check_chain_identities,
    "ex-4.8": check_z12_tables,
    "ex-5.3": check_base_q_example,
    "ex-6.5": check_order6_tables,
    "ex-6.6": check_order8_tables,
    "ex-7.4": check_diagonal_example,
}
