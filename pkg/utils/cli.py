"""
Command-line surface of the conflict-free coloring lab.
Contains one handler per subcommand (gen, color, verify, chi, lab, sweep) and the run() entry point
that maps usage errors to exit code 2 and lab errors to exit code 1 with a JSON document on stderr.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable

from conf.config import CFCN_C, CFCN_TRIALS_PER_ROUND, DEFAULT_SEED, JSON_SCHEMA_VERSION
from models.errors import CFLabError, ParameterError
from models.graph import FamilyTag, Graph, GraphFamily, NeighborhoodMode
from models.hypergraph import Coloring
from models.params import CfcnParams, LayeredParams, MinDegParams
from utils.clawfree_cfcn import color_clawfree_cfcn
from utils.clawfree_cfon import color_clawfree_cfon
from utils.formats import parse_coloring, parse_graph, parse_hypergraph, serialize_coloring, serialize_graph
from utils.graph_core import claw_number, generate
from utils.lowerbound_lab import run_lab
from utils.mindeg_cfon import color_mindeg_cfon
from utils.oracle import chi_cf_exact, solve_cn, solve_on, verify

ALGORITHMS = ("cfon-clawfree", "cfcn-clawfree", "mindeg", "exact-on", "exact-cn")
FAMILIES = tuple(tag.value.replace("_", "-") for tag in FamilyTag)


def _read(path: str) -> bytes:
    return Path(path).read_bytes()



def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dumps(document: dict[str, Any]) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _int_list(text: str) -> list[int]:
    """argparse type for '3,5,8' or the half-open range '0:5'."""
    try:
        if ":" in text:
            start, stop = text.split(":", 1)
            values = list(range(int(start), int(stop)))
        else:
            values = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected '1,2,3' or 'start:stop', got '{text}'")
    if not values:
        raise argparse.ArgumentTypeError(f"'{text}' names no values")
    return values



def _family(args: argparse.Namespace, name: str | None = None) -> GraphFamily:
    tag = FamilyTag((name or args.family).replace("-", "_"))
    params: dict[str, Any]
    if tag == FamilyTag.star:
        params = {"k": args.k}
    elif tag == FamilyTag.gnp:
        params = {"n": args.n, "p": args.p}
    elif tag == FamilyTag.geometric:
        params = {"n": args.n, "radius": args.radius}
    elif tag == FamilyTag.layered:
        params = {"n": args.n, "eps": args.eps}
    elif tag == FamilyTag.line_graph_of:
        if args.base is None or args.base == "line-graph-of":
            raise ParameterError("base", "line-graph-of needs --base naming another family")
        params = {"base": _family(args, args.base)}
    else:
        params = {"n": args.n}
    if any(value is None for value in params.values()):
        missing = [key for key, value in params.items() if value is None]
        raise ParameterError(missing[0], f"--{missing[0]} is required for family {tag.value}")
    return GraphFamily(tag, params, args.seed)


# Subcommand to generate a graph from a named family
def cmd_gen(args: argparse.Namespace) -> int:
    graph = generate(_family(args))
    _emit(serialize_graph(graph), args.output)
    logging.info(f"🧩 Generated {args.family}: n={graph.n}, m={graph.num_edges}")
    return 0


def _color(graph: Graph, args: argparse.Namespace) -> tuple[Coloring, dict[str, Any]]:
    """Run the selected algorithm; returns the coloring and its certificate document."""
    algo = args.algo
    if algo == "cfon-clawfree":
        coloring, certificate = color_clawfree_cfon(graph, k=args.k, seed=args.seed, fallback=not args.no_fallback)
        return coloring, certificate.to_dict()
    if algo == "cfcn-clawfree":
        k = args.k if args.k is not None else max(2, claw_number(graph) + 1)
        params = CfcnParams(k=k, c=args.c if args.c is not None else CFCN_C, trials_per_round=args.trials, seed=args.seed)
        result = color_clawfree_cfcn(graph, params)
        return result.coloring, {**result.to_dict(), "bound": params.color_bound(graph.n), "params": params.to_dict()}
    if algo == "mindeg":
        params = MinDegParams.for_graph(graph, c=args.c, eps=args.eps or 0.0, seed=args.seed)
        result = color_mindeg_cfon(graph, params, fallback=not args.no_fallback)
        document = {
            "schema": JSON_SCHEMA_VERSION,
            "method": result.method,
            "fallback": result.fallback,
            "window_size": len(result.window_set),
            "colors": result.coloring.num_colors,
            "bound": params.color_bound,
            "params": params.to_dict(),
        }
        return result.coloring, document
    solver = solve_on if algo == "exact-on" else solve_cn
    chi, coloring = solver(graph)
    return coloring, {"schema": JSON_SCHEMA_VERSION, "chi": chi}


# Subcommand to color a graph file with one of the algorithms
def cmd_color(args: argparse.Namespace) -> int:
    graph = parse_graph(_read(args.graph))
    coloring, certificate = _color(graph, args)
    _emit(serialize_coloring(coloring), args.output)

    cert_path = args.cert or (f"{args.output}.json" if args.output else None)
    if cert_path:
        Path(cert_path).write_text(_dumps(certificate), encoding="utf-8")
    logging.info(f"🎨 {args.algo}: {coloring.num_colors} colors on n={graph.n}")
    return 0


# Subcommand to check a coloring against a graph (exit 0 iff conflict-free)
def cmd_verify(args: argparse.Namespace) -> int:
    graph = parse_graph(_read(args.graph))
    coloring = parse_coloring(_read(args.coloring))
    if coloring.n != graph.n:
        raise ParameterError("coloring", f"coloring has {coloring.n} vertices, graph has {graph.n}")
    report = verify(graph, coloring, NeighborhoodMode(args.mode))
    sys.stdout.write(_dumps(report.to_dict()))
    if not report.ok:
        logging.warning(f"⚠️ {len(report.violating_vertices)} vertices violate the {args.mode} condition")
    return 0 if report.ok else 1


# Subcommand to print an exact chromatic number
def cmd_chi(args: argparse.Namespace) -> int:
    text = _read(args.input)
    if args.which == "cf":
        value = chi_cf_exact(parse_hypergraph(text))
    else:
        graph = parse_graph(text)
        value = (solve_on if args.which == "on" else solve_cn)(graph)[0]
    sys.stdout.write(f"{value}\n")
    return 0


# Subcommand to run the layered random graph lab and print one JSON row
def cmd_lab(args: argparse.Namespace) -> int:
    params = LayeredParams(n=args.n, eps=args.eps, seed=args.seed)
    row = run_lab(params, alpha=args.alpha, r_values=args.r, trials=args.trials, samples=args.samples)
    sys.stdout.write(_dumps(row))
    return 0


def _sweep_row(family: str, n: int, seed: int, algo: str, args: argparse.Namespace) -> dict[str, Any]:
    cell = argparse.Namespace(**{**vars(args), "family": family, "n": n, "seed": seed, "algo": algo})
    graph = generate(_family(cell))
    row: dict[str, Any] = {
        "schema": JSON_SCHEMA_VERSION,
        "family": family,
        "n": n,
        "seed": seed,
        "algo": algo,
        "vertices": graph.n,
        "edges": graph.num_edges,
        "Delta": graph.max_degree,
        "delta": graph.min_degree,
    }
    # --k sizes the star family here; the claw bound falls back to claw number + 1
    try:
        coloring, certificate = _color(graph, argparse.Namespace(**{**vars(cell), "k": None}))
    except CFLabError as e:
        return {**row, "colors": None, "ok": False, "error": type(e).__name__}
    mode = NeighborhoodMode.closed if algo in ("cfcn-clawfree", "exact-cn") else NeighborhoodMode.open
    return {
        **row,
        "colors": coloring.num_colors,
        "ok": verify(graph, coloring, mode).ok,
        "error": None,
        "rounds": certificate.get("rounds"),
        "repairs": len(certificate.get("repairs", [])),
        "budget": certificate.get("budget", certificate.get("bound")),
    }


# Subcommand to sweep algorithms over families, sizes and seeds
def cmd_sweep(args: argparse.Namespace) -> int:
    rows = []
    for family in args.families.split(","):
        for n in args.n_values:
            for seed in args.seeds:
                for algo in args.algos.split(","):
                    if algo not in ALGORITHMS:
                        raise ParameterError("algos", f"unknown algorithm '{algo}'")
                    rows.append(_sweep_row(family, n, seed, algo, args))
    rows.sort(key=lambda row: (row["family"], row["n"], row["seed"], row["algo"]))

    if args.format == "json":
        sys.stdout.write(_dumps({"schema": JSON_SCHEMA_VERSION, "rows": rows}))
    else:
        buffer = io.StringIO()
        fieldnames = list(dict.fromkeys(key for row in rows for key in row))
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buffer.getvalue())
    logging.info(f"📊 Sweep finished: {len(rows)} rows")
    return 0


def _add_family_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, help="vertex count")
    parser.add_argument("--k", type=int, help="leaves of the star family")
    parser.add_argument("--p", type=float, help="edge probability (gnp)")
    parser.add_argument("--radius", type=float, help="connection radius (geometric)")
    parser.add_argument("--eps", type=float, help="epsilon (layered)")
    parser.add_argument("--base", choices=FAMILIES, help="base family of line-graph-of")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for every random choice")

    parser = argparse.ArgumentParser(prog="cflab", description="Conflict-free coloring lab")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate a graph")
    gen.add_argument("--family", choices=FAMILIES, required=True)
    _add_family_options(gen)
    gen.add_argument("-o", "--output")
    gen.set_defaults(handler=cmd_gen)

    color = sub.add_parser("color", parents=[common], help="color a graph")
    color.add_argument("graph")
    color.add_argument("--algo", choices=ALGORITHMS, required=True)
    color.add_argument("--k", type=int, help="claw bound k (default: claw number + 1)")
    color.add_argument("--c", type=float, help="fraction constant (cfcn) or min-degree constant (mindeg)")
    color.add_argument("--eps", type=float, default=0.0)
    color.add_argument("--trials", type=int, default=CFCN_TRIALS_PER_ROUND, help="trials per CFCN round")
    color.add_argument("--no-fallback", action="store_true", help="fail instead of repairing")
    color.add_argument("-o", "--output")
    color.add_argument("--cert", help="certificate path (default: <output>.json)")
    color.set_defaults(handler=cmd_color)

    check = sub.add_parser("verify", parents=[common], help="verify a coloring")
    check.add_argument("graph")
    check.add_argument("coloring")
    check.add_argument("--mode", choices=[mode.value for mode in NeighborhoodMode], required=True)
    check.set_defaults(handler=cmd_verify)

    chi = sub.add_parser("chi", parents=[common], help="exact chromatic number")
    chi.add_argument("input", help="graph file (on, cn) or hypergraph file (cf)")
    chi.add_argument("--which", choices=("on", "cn", "cf"), required=True)
    chi.set_defaults(handler=cmd_chi)

    lab = sub.add_parser("lab", parents=[common], help="layered random graph reports")
    lab.add_argument("--n", type=int, required=True)
    lab.add_argument("--eps", type=float, required=True)
    lab.add_argument("--alpha", type=float, default=0.25)
    lab.add_argument("--r", type=_int_list, default="1,2,3,4", help="color counts to probe")
    lab.add_argument("--trials", type=int, default=100)
    lab.add_argument("--samples", type=int, default=20, help="heavy sets sampled")
    lab.set_defaults(handler=cmd_lab)

    sweep = sub.add_parser("sweep", parents=[common], help="run algorithms over many instances")
    sweep.add_argument("--families", required=True, help="comma separated families")
    sweep.add_argument("--n-values", type=_int_list, required=True, help="'10,20' or '10:13'")
    sweep.add_argument("--seeds", type=_int_list, default="0:3", help="'1,2' or '0:5'")
    sweep.add_argument("--algos", default="cfon-clawfree,cfcn-clawfree")
    sweep.add_argument("--k", type=int, help="leaves of the star family")
    sweep.add_argument("--p", type=float)
    sweep.add_argument("--radius", type=float)
    sweep.add_argument("--eps", type=float)
    sweep.add_argument("--c", type=float)
    sweep.add_argument("--base", choices=FAMILIES)
    sweep.add_argument("--trials", type=int, default=CFCN_TRIALS_PER_ROUND)
    sweep.add_argument("--no-fallback", action="store_true")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def run(argv: list[str]) -> int:
    """Parse argv, dispatch, and turn failures into exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except CFLabError as e:
        logging.error(f"❌ {args.command} failed: {e.message}", exc_info=True)
        sys.stderr.write(json.dumps(e.to_dict(), sort_keys=True) + "\n")
        return 1
    except OSError as e:
        logging.error(f"❌ {args.command} failed: {e}")
        document = {"schema": JSON_SCHEMA_VERSION, "error": type(e).__name__, "message": str(e)}
        sys.stderr.write(json.dumps(document, sort_keys=True) + "\n")
        return 1
