"""Command-line interface.

Commands: construct, verify, solve, sweep, export-dot, random-subsets.
Exit codes: 0 success / all checks pass, 1 check failure or uncertified
search, 2 unsupported parameters / infeasible / empty range, 3 I/O or parse
errors.  All commands are deterministic; only random-subsets takes a seed.
The SIDCODES_THREADS environment variable caps sweep workers (default 1).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds as bounds_mod
from .constructions import UnsupportedParametersError, construct
from .files import (
    CodeFileError,
    code_to_json,
    dump_code,
    load_code,
    random_subsets,
    render_dot,
    subsets_to_json,
    write_sweep_csv,
)
from .graphs import DimensionError, Topology, build_product_graph
from .solver import PruneRule, SolveBudget, SolveStatus, solve_min_id, solve_min_sid
from .verification import (
    CheckResult,
    CodeSet,
    audit_necessary_cycle,
    audit_necessary_path,
    check_degree_condition,
    check_sufficient_cycle,
    check_sufficient_path,
    is_dominating,
    is_identifying,
    is_self_identifying_def1,
    is_self_identifying_def2,
    verify_code,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNSUPPORTED = 2
EXIT_IO = 3

_CHECK_NAMES = ("dominating", "identifying", "def1", "def2", "degree", "sufficient", "necessary")


def worker_count() -> int:
    raw = os.environ.get("SIDCODES_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, min(value, os.cpu_count() or 1))


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _write_out(path: str | None, text: str) -> None:
    fp, owned = _open_out(path)
    try:
        fp.write(text)
    finally:
        if owned:
            fp.close()


def _parse_range(text: str) -> range:
    lo, _, hi = text.partition(":")
    try:
        a = int(lo)
        b = int(hi) if hi else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use A:B or a single integer")
    return range(a, b + 1)


def _budget_from_args(args) -> SolveBudget:
    pruning = frozenset(PruneRule(p) for p in args.pruning.split(",") if p) if args.pruning else frozenset(PruneRule)
    return SolveBudget(
        max_nodes=args.max_nodes,
        max_seconds=args.max_seconds,
        allow_symmetry=not args.no_symmetry,
        pruning=pruning,
    )


def cmd_construct(args) -> int:
    try:
        code, plan = construct(args.m, args.n, args.topology)
    except (UnsupportedParametersError, DimensionError) as exc:
        print(f"unsupported parameters: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    lower = bounds_mod.lower_bound(args.m, args.n, args.topology)
    upper = bounds_mod.upper_bound(args.m, args.n, args.topology)
    print(f"{code.graph.describe()}: constructed {len(code)} codewords "
          f"(family {plan.family.value}); bounds [{lower}, {upper}]")
    try:
        if args.format == "json":
            fp, owned = _open_out(args.out)
            try:
                dump_code(fp, code, plan)
            finally:
                if owned:
                    fp.close()
        else:
            _write_out(args.out, render_dot(code.graph, code))
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _run_checks(code: CodeSet, names: list[str]) -> tuple[dict[str, CheckResult], bool]:
    graph = code.graph
    report = verify_code(code)
    results = dict(report.conditions)
    results["def1"] = results.pop("self_identifying")
    results["def2"] = is_self_identifying_def2(code)
    results["degree"] = results.pop("degree_condition")
    if "sufficient" in names:
        check = check_sufficient_path if graph.topology is Topology.PATH else check_sufficient_cycle
        results["sufficient"] = check(code)
    if "necessary" in names:
        audit = audit_necessary_path if graph.topology is Topology.PATH else audit_necessary_cycle
        audit_report = audit(code)
        for key, value in audit_report.conditions.items():
            if key not in ("dominating", "identifying", "self_identifying", "degree_condition"):
                results[key] = value
        results["necessary"] = CheckResult(
            all(v.holds for k, v in results.items()
                if k not in _CHECK_NAMES),
        )
    requested_ok = all(results[name].holds for name in names)
    return results, requested_ok


def cmd_verify(args) -> int:
    try:
        with open(args.infile, encoding="utf-8") as fp:
            code, _plan = load_code(fp)
    except OSError as exc:
        print(f"cannot read {args.infile}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CodeFileError, DimensionError) as exc:
        print(f"bad code file: {exc}", file=sys.stderr)
        return EXIT_IO
    names = [c for c in args.checks.split(",") if c]
    for name in names:
        if name not in _CHECK_NAMES:
            print(f"unknown check {name!r}; choose from {', '.join(_CHECK_NAMES)}", file=sys.stderr)
            return EXIT_UNSUPPORTED
    results, ok = _run_checks(code, names)
    payload = {
        name: {"holds": res.holds, "witnesses": [list(v) for v in res.witness]}
        for name, res in results.items()
    }
    print(json.dumps(payload, indent=2))
    if not ok:
        for name in names:
            res = results[name]
            if not res.holds:
                print(f"check {name} failed: {res.reason or 'violated'} "
                      f"witnesses={[list(v) for v in res.witness]}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_solve(args) -> int:
    try:
        graph = build_product_graph(args.m, args.n, args.topology)
    except DimensionError as exc:
        print(f"unsupported parameters: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    budget = _budget_from_args(args)
    solver = solve_min_sid if args.kind == "sid" else solve_min_id
    result = solver(graph, budget)
    payload = {
        "m": args.m,
        "n": args.n,
        "topology": str(graph.topology),
        "kind": args.kind,
        "status": result.status.value,
        "optimum": result.optimum,
        "certified": result.certified,
        "nodes_explored": result.nodes_explored,
        "prunes_by_rule": result.prunes_by_rule,
        "witness": [list(v) for v in result.witness.vertices()] if result.witness else None,
    }
    print(json.dumps(payload, indent=2))
    if result.status is SolveStatus.CERTIFIED:
        return EXIT_OK
    if result.status is SolveStatus.BUDGET_EXCEEDED:
        return EXIT_FAIL
    return EXIT_UNSUPPORTED


def cmd_sweep(args) -> int:
    m_values = list(args.m_range)
    n_values = [n for n in args.n_range if n >= 3]
    if not m_values or not n_values:
        print("empty sweep range", file=sys.stderr)
        return EXIT_UNSUPPORTED
    try:
        workers = worker_count()
        if workers > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=workers) as pool:
                chunks = pool.map(
                    _sweep_one, [(m, n_values, args.topology) for m in m_values]
                )
                rows = [row for chunk in chunks for row in chunk]
        else:
            rows = bounds_mod.sweep_rows(m_values, n_values, args.topology)
    except (UnsupportedParametersError, ValueError) as exc:
        print(f"unsupported sweep parameters: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    try:
        fp, owned = _open_out(args.out)
        try:
            count = write_sweep_csv(fp, rows)
        finally:
            if owned:
                fp.close()
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {count} rows", file=sys.stderr)
    return EXIT_OK


def _sweep_one(task):
    m, n_values, topology = task
    return bounds_mod.sweep_rows([m], n_values, topology)


def cmd_export_dot(args) -> int:
    try:
        graph = build_product_graph(args.m, args.n, args.topology)
    except DimensionError as exc:
        print(f"unsupported parameters: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    code = None
    if args.code:
        try:
            with open(args.code, encoding="utf-8") as fp:
                code, _plan = load_code(fp)
        except OSError as exc:
            print(f"cannot read {args.code}: {exc}", file=sys.stderr)
            return EXIT_IO
        except (CodeFileError, DimensionError) as exc:
            print(f"bad code file: {exc}", file=sys.stderr)
            return EXIT_IO
        if (code.graph.m, code.graph.n, code.graph.topology) != (graph.m, graph.n, graph.topology):
            print("code file does not match the requested graph", file=sys.stderr)
            return EXIT_IO
        code = CodeSet(graph, code.members)
    try:
        _write_out(args.out, render_dot(graph, code))
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_random_subsets(args) -> int:
    try:
        graph = build_product_graph(args.m, args.n, args.topology)
    except DimensionError as exc:
        print(f"unsupported parameters: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    subsets = random_subsets(graph, args.count, args.seed)
    try:
        _write_out(args.out, json.dumps(subsets_to_json(graph, subsets, args.seed), indent=2) + "\n")
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sidcodes",
        description="Self-identifying codes in products of complete graphs with paths/cycles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_args(p):
        p.add_argument("--m", type=int, required=True, help="complete-graph side size")
        p.add_argument("--n", type=int, required=True, help="path/cycle length")
        p.add_argument("--topology", choices=("path", "cycle"), required=True)

    p = sub.add_parser("construct", help="emit an explicit self-identifying code")
    add_graph_args(p)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a code file against selected conditions")
    p.add_argument("infile", help="code file (JSON)")
    p.add_argument("--checks", default="def1", help=f"comma list from: {', '.join(_CHECK_NAMES)}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="certified minimum code search")
    add_graph_args(p)
    p.add_argument("--kind", choices=("sid", "id"), default="sid")
    p.add_argument("--max-nodes", type=int, default=SolveBudget.max_nodes)
    p.add_argument("--max-seconds", type=float, default=SolveBudget.max_seconds)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--pruning", default=None,
                   help="comma list from: forced_boundary, triple_column, degree_condition "
                        "(default: all)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="bounds/construction densities over a parameter range")
    p.add_argument("--m-range", type=_parse_range, required=True, help="A:B inclusive")
    p.add_argument("--n-range", type=_parse_range, required=True, help="A:B inclusive")
    p.add_argument("--topology", choices=("path", "cycle"), required=True)
    p.add_argument("--out", default=None, help="CSV output file (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export-dot", help="render the graph (optionally with a code) as DOT")
    add_graph_args(p)
    p.add_argument("--code", default=None, help="code file to overlay")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("random-subsets", help="reproducible random vertex subsets (test support)")
    add_graph_args(p)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_random_subsets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entrypoint() -> None:  # console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entrypoint()
