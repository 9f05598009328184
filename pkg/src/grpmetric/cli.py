"""Command-line surface: enumerate weights, run named checks, export tables.

Exit codes: 0 on success/pass, 1 when a verification fails, 2 on usage or
construction errors.  Exports are byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import checks, embeddings, groups, metrics, weights

CHECK_NAMES = sorted(checks.CHECKS)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grpmetric",
        description="Integral metrics on finite groups: enumerators, named "
                    "verifications, and table/graph exports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enum = sub.add_parser("enumerate", help="weight enumerator of a group metric")
    enum.add_argument("--group", required=True, help="group spec, e.g. Z12, Z2^3, D4, Q8, Z2 x Z4")
    enum.add_argument("--metric", required=True,
                      help="metric spec: hamming | lee | qadic:q,n | rt:q,n | "
                           "brt:q,m1+m2 | chain:q=2 | chain:o1|o2 | hom:p,n | "
                           "diag:r,n | psi:n")
    enum.add_argument("--x0", type=int, default=None, help="base point (default: identity)")
    enum.add_argument("--json", action="store_true", help="machine output instead of the polynomial")

    verify = sub.add_parser("verify", help="run a named verification")
    verify.add_argument("check", help="one of: " + ", ".join(CHECK_NAMES))
    verify.add_argument("--q", type=int)
    verify.add_argument("--n", type=int)
    verify.add_argument("--p", type=int)
    verify.add_argument("--group", dest="group")
    verify.add_argument("--m-max", type=int, dest="m_max")
    verify.add_argument("--variants-m-max", type=int, dest="variants_m_max")
    verify.add_argument("--q-max", type=int, dest="q_max")
    verify.add_argument("--n-max", type=int, dest="n_max")

    export = sub.add_parser("export", help="write a distance matrix, DOT graph, or embedding")
    export.add_argument("what", choices=["distmatrix", "dot", "embedding"])
    export.add_argument("--group", help="group spec (distmatrix/dot)")
    export.add_argument("--metric", help="metric spec (distmatrix/dot)")
    export.add_argument("--kind", choices=["base_q", "psi", "rm1", "chain_iso"],
                        help="embedding constructor (embedding)")
    export.add_argument("--q", type=int)
    export.add_argument("--n", type=int)
    export.add_argument("--m", type=int)
    export.add_argument("--p", type=int)
    export.add_argument("--output", "-o", default="-", help="output path (default stdout)")
    return parser


_CHECK_PARAMS = {
    "thm-4.4": ("m_max", "variants_m_max"),
    "thm-5.2": ("q", "n"),
    "thm-6.1": (),
    "prop-7.10": ("group", "q"),
    "thm-7.11": ("q",),
    "thm-8.2": (),
    "prop-3.3": ("p", "n"),
    "rem-7.2": ("q_max", "n_max"),
    "ex-4.8": (),
    "ex-5.3": (),
    "ex-6.5": (),
    "ex-6.6": (),
    "ex-7.4": (),
}


def _cmd_enumerate(args) -> int:
    G = groups.parse_group(args.group)
    table = metrics.parse_metric(args.metric, G)
    enum = weights.weight_enumerator(table, args.x0)
    if args.json:
        print(enum.to_json())
    else:
        print(enum.pretty())
    return 0


def _cmd_verify(args) -> int:
    name = args.check
    if name not in checks.CHECKS:
        print(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}", file=sys.stderr)
        return 2
    params = {k: getattr(args, k, None) for k in _CHECK_PARAMS[name]}
    report = checks.run_check(name, **params)
    print(json.dumps(report.to_json_dict(), sort_keys=True))
    if report.status == "pass":
        return 0
    if report.status == "fail":
        return 1
    return 2


def _metric_from_args(args) -> metrics.MetricTable:
    if not args.group or not args.metric:
        raise ValueError("--group and --metric are required for this export")
    G = groups.parse_group(args.group)
    return metrics.parse_metric(args.metric, G)


def _export_distmatrix(table: metrics.MetricTable) -> str:
    header = ",".join(table.label(x) for x in range(table.size))
    lines = [header]
    for row in table.dist:
        lines.append(",".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def _export_dot(table: metrics.MetricTable) -> str:
    lines = ["graph {"]
    for i in range(table.size):
        for j in range(i + 1, table.size):
            lines.append(f"  {i} -- {j} [label={table.d(i, j)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _export_embedding(args) -> str:
    kind = args.kind
    if kind == "base_q":
        emb = embeddings.base_q_isometry(args.q or 2, args.n or 3)
    elif kind == "psi":
        if args.m is None or args.n is None:
            raise ValueError("embedding kind psi needs --m and --n")
        emb = embeddings.cyclic_embedding(args.m, args.n)
    elif kind == "rm1":
        if args.p is None or args.n is None:
            raise ValueError("embedding kind rm1 needs --p and --n")
        emb = embeddings.rm1_embedding(args.p, args.n)
    elif kind == "chain_iso":
        if not args.group:
            raise ValueError("embedding kind chain_iso needs --group (and --q)")
        G = groups.parse_group(args.group)
        emb = embeddings.chain_isometry(G, groups.geometric_chain(G, args.q or 2))
    else:
        raise ValueError("embedding export needs --kind")
    return json.dumps(emb.to_json_dict(), sort_keys=True) + "\n"


def _cmd_export(args) -> int:
    if args.what == "embedding":
        text = _export_embedding(args)
    else:
        table = _metric_from_args(args)
        text = _export_distmatrix(table) if args.what == "distmatrix" else _export_dot(table)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_export(args)
    except (ValueError, embeddings.IsometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
