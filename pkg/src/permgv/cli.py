"""Command-line interface: ``permgv <subcommand> [options]``.

Exit codes: 0 success, 1 failed verification or violated check,
2 usage error (bad flags or parameters).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal
from fractions import Fraction

from . import bounds as B
from . import codes as C
from . import exactgraph as G

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

SWEEP_COLUMNS = ["n", "d", "log_ratio", "log_ratio_per_n", "improvement_ratio"]


class UsageError(Exception):
    pass


def big(v: int | None) -> dict | None:
    """Exact decimal plus a short scientific rendering."""
    if v is None:
        return None
    approx = format(Decimal(v), ".6e") if v else "0.000000e+0"
    return {"exact": str(v), "approx": approx}


def _short(v) -> str:
    if v is None:
        return "vacuous"
    if isinstance(v, dict) and "exact" in v:
        return v["exact"] if len(v["exact"]) <= 24 else v["approx"]
    if isinstance(v, float):
        return f"{v:.9g}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(str(x) for x in v) + ")"
    return str(v)


def _flat(v) -> str:
    if v is None:
        return ""
    if isinstance(v, dict) and "exact" in v:
        return v["exact"]
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return repr(v) if isinstance(v, float) else str(v)


def emit(doc: dict, fmt: str, out) -> None:
    """Write a result document; ``rows`` documents render as tables."""
    if fmt == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, **doc}, indent=2) + "\n")
        return
    if "rows" in doc:
        columns = doc["columns"]
        if fmt == "csv":
            w = csv.writer(out, lineterminator="\n")
            w.writerow(columns)
            for row in doc["rows"]:
                w.writerow([_flat(row[c]) for c in columns])
            return
        cells = [[_short(row[c]) for c in columns] for row in doc["rows"]]
        widths = [max(len(c), *(len(r[i]) for r in cells)) if cells else len(c) for i, c in enumerate(columns)]
        out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)) + "\n")
        for r in cells:
            out.write("  ".join(x.rjust(w) for x, w in zip(r, widths)) + "\n")
        return
    items = [("command", doc["command"])]
    items += list(doc.get("params", {}).items())
    items += list(doc["result"].items())
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["field", "value"])
        for k, v in items:
            w.writerow([k, _flat(v)])
        return
    width = max(len(k) for k, _ in items)
    for k, v in items:
        out.write(f"{k.ljust(width)}  {_short(v)}\n")


def _params(n: int, d: int) -> B.CodeParameters:
    try:
        return B.CodeParameters(n, d)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def report_dict(report: B.BoundReport) -> dict:
    return {
        "gv_lower": big(report.gv_lower),
        "sphere_packing_upper": big(report.sphere_packing_upper),
        "delta_degree": big(report.delta_degree),
        "true_max_degree": big(report.true_max_degree),
        "e_upper": big(report.e_upper),
        "g_max": big(report.g_max),
        "g_argmax": list(report.g_argmax),
        "aks_lower": big(report.aks_lower),
        "aks_lower_true_degree": big(report.aks_lower_true_degree),
        "log_ratio": report.log_ratio,
        "improvement_ratio": report.improvement_ratio,
    }


def cmd_bounds(args) -> tuple[dict, int]:
    p = _params(args.n, args.d)
    report = B.bound_report(p)
    doc = {
        "command": "bounds",
        "params": {"n": p.n, "d": p.d},
        "result": report_dict(report),
    }
    if args.format == "json":
        doc["provenance"] = report.provenance
    return doc, EXIT_OK


def sweep_d(delta: Fraction, n: int) -> int:
    """Nearest integer to delta*n (halves round up), at least 2."""
    return max(2, int((delta * n + Fraction(1, 2)) // 1))


def _sweep_row(nd: tuple[int, int]) -> dict:
    n, d = nd
    p = B.CodeParameters(n, d)
    lr = B.log_ratio(p)
    return {
        "n": n,
        "d": d,
        "log_ratio": lr,
        "log_ratio_per_n": lr / n,
        "improvement_ratio": B.improvement_ratio(p),
    }


def _parse_delta(text: str) -> Fraction:
    try:
        delta = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse delta {text!r}") from None
    if not 0 < delta < Fraction(1, 2):
        raise UsageError(f"delta must lie in (0, 1/2), got {delta}")
    return delta


def _parse_ns(text: str) -> list[int]:
    try:
        ns = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"cannot parse n values {text!r}") from None
    if not ns or ns[0] < 2:
        raise UsageError("n values must be integers >= 2")
    return ns


def cmd_sweep(args) -> tuple[dict, int]:
    delta = _parse_delta(args.delta)
    ns = _parse_ns(args.n_values)
    pairs = []
    for n in ns:
        d = sweep_d(delta, n)
        if d > n:
            raise UsageError(f"n={n} too small for delta={delta}")
        pairs.append((n, d))
    if args.threads > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(_sweep_row, pairs))
    else:
        rows = [_sweep_row(nd) for nd in pairs]
    doc = {
        "command": "sweep",
        "params": {"delta": str(delta), "n_values": ns},
        "columns": SWEEP_COLUMNS,
        "rows": rows,
    }
    return doc, EXIT_OK


def cmd_graph_stats(args) -> tuple[dict, int]:
    p = _params(args.n, args.d)
    try:
        graph = G.build_graph(p, allow_large=args.allow_large)
    except G.GraphTooLargeError as exc:
        raise UsageError(str(exc)) from None
    stats = G.neighborhood_stats(graph)
    e_up = B.e_upper_bound(p)
    holds = stats.neighborhood_edges <= e_up
    result = {
        "degree": stats.degree,
        "true_max_degree": B.true_max_degree(p),
        "neighborhood_edges": stats.neighborhood_edges,
        "triangles_total": stats.triangles_total,
        "e_upper": big(e_up),
        "edges_over_e_upper": float(Fraction(stats.neighborhood_edges, e_up)),
        "e_upper_holds": holds,
        "transitivity_sample_ok": G.check_transitivity_sample(graph, 10, args.seed),
    }
    doc = {"command": "graph-stats", "params": {"n": p.n, "d": p.d, "seed": args.seed}, "result": result}
    return doc, EXIT_OK if holds else EXIT_FAILURE


def cmd_construct(args) -> tuple[dict, int]:
    p = _params(args.n, args.d)
    try:
        code = C.greedy_construct(p, order=args.order, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    check = C.verify(code)
    gv = B.gv_lower(p)
    if args.output == "-":
        sys.stdout.buffer.write(C.serialize(code))
        sys.stdout.flush()
    elif args.output:
        C.write_code(args.output, code)
    result = {
        "size": len(code),
        "gv_lower": big(gv),
        "meets_gv": len(code) >= gv,
        "ok": check.ok,
        "min_distance": check.min_distance,
    }
    params = {"n": p.n, "d": p.d, "order": args.order, "seed": args.seed}
    ok = check.ok and (args.order != "lexicographic" or len(code) >= gv)
    return {"command": "construct", "params": params, "result": result}, EXIT_OK if ok else EXIT_FAILURE


def cmd_verify(args) -> tuple[dict, int]:
    try:
        code = C.read_code(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    except C.CodeFormatError as exc:
        doc = {
            "command": "verify",
            "params": {"file": args.file},
            "result": {"ok": False, "error": str(exc), "line": exc.line, "column": exc.column},
        }
        return doc, EXIT_FAILURE
    check = C.verify(code)
    result = {
        "n": code.n,
        "d": code.d,
        "size": len(code),
        "ok": check.ok,
        "min_distance": check.min_distance,
        "violating_pair": list(check.violating_pair) if check.violating_pair else None,
    }
    return {"command": "verify", "params": {"file": args.file}, "result": result}, (
        EXIT_OK if check.ok else EXIT_FAILURE
    )


def cmd_alpha(args) -> tuple[dict, int]:
    p = _params(args.n, args.d)
    try:
        graph = G.build_graph(p)
        if args.strategy == "exact":
            size, witness = G.exact_alpha(graph, long_run=args.long_run)
        else:
            size, witness = G.heuristic_alpha(graph, args.strategy, seed=args.seed, k=args.k)
    except G.GraphTooLargeError as exc:
        raise UsageError(str(exc)) from None
    code = C.PermutationCode(n=p.n, d=p.d, words=witness)
    check = C.verify(code)
    if args.output == "-":
        sys.stdout.buffer.write(C.serialize(code))
        sys.stdout.flush()
    elif args.output:
        C.write_code(args.output, code)
    result = {
        "alpha" if args.strategy == "exact" else "size": size,
        "gv_lower": big(B.gv_lower(p)),
        "sphere_packing_upper": big(B.sphere_packing_upper(p)),
        "witness_ok": check.ok,
        "witness_min_distance": check.min_distance,
    }
    params = {"n": p.n, "d": p.d, "strategy": args.strategy, "seed": args.seed, "k": args.k}
    return {"command": "alpha", "params": params, "result": result}, EXIT_OK if check.ok else EXIT_FAILURE


def cmd_lemma7(args) -> tuple[dict, int]:
    p = _params(args.n, args.d)
    if not 0 < args.epsilon < 1 / 6:
        raise UsageError(f"epsilon must lie in (0, 1/6), got {args.epsilon}")
    rep = B.lemma7_check(p, args.epsilon)
    result = {
        "min_margin": rep.min_margin,
        "argmin_profile": list(rep.argmin_profile),
        "violated": rep.violated,
    }
    params = {"n": p.n, "d": p.d, "epsilon": args.epsilon}
    code = EXIT_FAILURE if (rep.violated and args.strict) else EXIT_OK
    return {"command": "lemma7", "params": params, "result": result}, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "csv", "json"], default="table")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(
        prog="permgv", description="Bounds and constructions for permutation codes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def nd(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("bounds", parents=[common], help="all bounds for one (n, d)")
    nd(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", parents=[common], help="log-ratio trend at fixed d/n")
    p.add_argument("--delta", required=True, help="ratio d/n, e.g. 1/4 or 0.25")
    p.add_argument("--n", "--n-values", dest="n_values", required=True, help="comma-separated n values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("graph-stats", parents=[common], help="exact neighbourhood statistics")
    nd(p)
    p.add_argument("--allow-large", action="store_true", help="permit n=8 (~200 MB)")
    p.set_defaults(func=cmd_graph_stats)

    p = sub.add_parser("construct", parents=[common], help="greedy code construction")
    nd(p)
    p.add_argument("--order", choices=["lexicographic", "seeded-shuffle"], default="lexicographic")
    p.add_argument("--output", help="write the code file here ('-' for stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a code file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("alpha", parents=[common], help="independence number of the distance graph")
    nd(p)
    p.add_argument(
        "--strategy", choices=["exact", "greedy-lex", "random-greedy", "best-of-k"], default="exact"
    )
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--long-run", action="store_true", help="permit exact search at n=6")
    p.add_argument("--output", help="write the witness code here ('-' for stdout)")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("lemma7", parents=[common], help="entropy-margin diagnostic over edge profiles")
    nd(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--strict", action="store_true", help="exit 1 when the inequality is violated")
    p.set_defaults(func=cmd_lemma7)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    # a witness or code written to stdout replaces the report there
    out = sys.stderr if getattr(args, "output", None) == "-" else sys.stdout
    try:
        doc, code = args.func(args)
    except UsageError as exc:
        print(f"permgv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    buf = io.StringIO()
    emit(doc, args.format, buf)
    out.write(buf.getvalue())
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
