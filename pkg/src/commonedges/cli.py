"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 infeasible size, 3 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import montecarlo
from .counting import InfeasibleError
from .distribution import (
    FOREST_CAP,
    exact_pmf_complete,
    exact_pmf_general,
    k_tree_bounds,
    summary_line,
)
from .graph import Graph, GraphError, read_edge_list
from .rng import SEED_ENV, default_seed

EXIT_USAGE, EXIT_INFEASIBLE, EXIT_VERIFY = 1, 2, 3


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_graph_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--complete", type=int, metavar="N", help="complete graph K_N")
    src.add_argument("--multipartite", type=_int_list, metavar="N1,N2,...",
                     help="complete multipartite graph")
    src.add_argument("--gnp", nargs=2, metavar=("N", "P"), help="Erdős–Rényi G(N, P)")
    src.add_argument("--path", type=int, metavar="N", help="path on N vertices")
    src.add_argument("--cycle", type=int, metavar="N", help="cycle on N vertices")
    src.add_argument("--double-clique", nargs=2, type=int, metavar=("N", "K"),
                     help="two K_{N/2} joined by K disjoint edges")
    src.add_argument("--file", metavar="PATH", help="edge-list file")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", metavar="PATH", help="write here instead of stdout")


def _seed(args) -> int:
    return default_seed() if args.seed is None else args.seed


def _graph_source(args) -> tuple[str, tuple]:
    if args.complete is not None:
        return "complete", (args.complete,)
    if args.multipartite is not None:
        return "multipartite", tuple(args.multipartite)
    if args.gnp is not None:
        n, p = int(args.gnp[0]), float(args.gnp[1])
        if not 0 < p <= 1:
            raise UsageError(f"G(n,p) needs 0 < p <= 1, got {p}")
        return "gnp", (n, p)
    if args.path is not None:
        return "path", (args.path,)
    if args.cycle is not None:
        return "cycle", (args.cycle,)
    if args.double_clique is not None:
        return "double-clique", tuple(args.double_clique)
    return "file", (args.file,)


def _build(family: str, params: tuple, seed: int) -> Graph:
    if family == "file":
        return read_edge_list(params[0])
    return montecarlo.build_graph(family, params, seed)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_exact_pmf(args) -> int:
    family, params = _graph_source(args)
    if family == "complete":
        if params[0] < 2:
            raise UsageError("exact-pmf --complete needs N >= 2")
        pmf = exact_pmf_complete(params[0])
    else:
        g = _build(family, params, _seed(args))
        if not g.is_connected:
            raise UsageError("graph is disconnected; it has no spanning tree")
        pmf = exact_pmf_general(g, cap=args.cap)
    _emit(pmf.to_json() if args.format == "json" else pmf.to_csv(), args.output)
    print(summary_line(pmf), file=sys.stderr)
    return 0


def cmd_simulate(args) -> int:
    seed = _seed(args)
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.preset:
        report = montecarlo.get_preset(args.preset).run(args.trials, seed, args.workers)
    else:
        family, params = _graph_source(args)
        if args.k_trees != 2:
            g = _build(family, params, seed)
            report = montecarlo.simulate_k_trees(g.n, args.k_trees, args.trials, seed,
                                                 args.workers, g=g)
        elif family == "gnp":
            report = montecarlo.simulate_gnp(montecarlo.GnpSpec(*params), args.trials, seed,
                                             args.workers)
        else:
            g = _build(family, params, seed)
            if not g.is_connected:
                raise UsageError("graph is disconnected; it has no spanning tree")
            report = montecarlo.simulate_common_edges(g, args.trials, seed, args.workers)
    text = report.to_json() if args.format == "json" else report.empirical.to_csv()
    _emit(text, args.output)
    print(f"seed={report.seed} trials={report.trials} graph={report.graph} "
          f"mean={report.mean:.6g} variance={report.variance:.6g} "
          f"elapsed={report.elapsed:.2f}s", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    from .verify import CHECKS, run_checks

    names = args.check or list(CHECKS)
    failed = False
    for result in run_checks(names, args.n):
        print(json.dumps({"check": result.name, "passed": result.passed,
                          "detail": result.detail}, default=str))
        failed |= not result.passed
    return EXIT_VERIFY if failed else 0


def cmd_bounds(args) -> int:
    if args.k < 3:
        raise UsageError("bounds are defined for k >= 3 trees")
    ns = list(range(args.n_range[0], args.n_range[1] + 1, args.n_range[2])) \
        if args.n_range else args.n
    rows = []
    for n in ns:
        lower, upper = k_tree_bounds(n, args.k)
        rows.append({"n": n, "k": args.k, "lower": lower, "upper": upper})
    if args.format == "json":
        text = json.dumps(rows, indent=2)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["n", "k", "lower", "upper"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.output)
    return 0


def cmd_presets(args) -> int:
    for p in montecarlo.scenario_presets():
        print(f"{p.name:16s} {p.description}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = Parser(prog="commonedges",
                    description="Common edges of independent uniform spanning trees.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("exact-pmf", help="exact law of the common-edge count")
    _add_graph_source(p)
    _add_output(p)
    p.add_argument("--cap", type=int, default=FOREST_CAP, help="maximum forests to enumerate")
    p.add_argument("--seed", type=int, help=f"seed for --gnp draws (default ${SEED_ENV} or 0)")
    p.set_defaults(func=cmd_exact_pmf)

    p = sub.add_parser("simulate", help="Monte Carlo common-edge distribution")
    _add_graph_source(p, required=False)
    p.add_argument("--preset", choices=[s.name for s in montecarlo.scenario_presets()])
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, help=f"run seed (default ${SEED_ENV} or 0)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--k-trees", type=int, default=2, metavar="K",
                   help="intersect K trees instead of 2")
    _add_output(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run oracle-agreement checks")
    p.add_argument("--check", action="append",
                   choices=["forest-count", "lcy", "moon", "moments", "chen-stein", "sampler"])
    p.add_argument("--n", type=int, help="size parameter for the selected checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="union / Bonferroni bounds for k >= 3 trees of K_n")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, nargs="+")
    group.add_argument("--n-range", type=int, nargs=3, metavar=("LO", "HI", "STEP"))
    p.add_argument("--k", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("presets", help="list scenario presets")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and not args.preset and not any(
            getattr(args, a) is not None for a in
            ("complete", "multipartite", "gnp", "path", "cycle", "double_clique", "file")):
        parser.error("simulate needs a graph source or --preset")
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError) as exc:
        print(f"commonedges: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"commonedges: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
