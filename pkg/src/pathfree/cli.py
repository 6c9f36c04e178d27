"""Command line front end.

Subcommands
-----------
generate            write a random graph in edge-list format
colour              run the full colouring pipeline and verify the result
extract             one banded path-free extraction on an input graph
verify              check a colouring file against the budget and path bound
bins                exact / Monte Carlo max-load statistics
check-inequalities  run the analytic inequality suite

Exit codes: 0 success (and verified where applicable), 1 verified failure,
2 usage error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bins import compute_bins_stats
from .checks import run_all_checks
from .colouring import parse_colouring, serialize_colouring
from .errors import InternalInvariantError, UsageError
from .extract import extract_from_densest_band
from .generators import (
    GENERATOR_MODELS,
    path_union_graph,
    regular_graph,
    star_forest_graph,
    uniform_edges,
)
from .graph import Graph, parse_edge_list, serialize_edge_list
from .pipeline import PipelineParams, audit_round_budgets, colour_graph
from .verify import verify_colouring

__all__ = ["main"]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _read_graph(path: str) -> Graph:
    return parse_edge_list(_read_text(path))


def _emit(record: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        for key in sorted(record):
            print(f"{key}: {record[key]}")


def _grid(value: str) -> tuple[int, int]:
    try:
        lo_text, _, hi_text = value.partition("..")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {value!r}") from exc
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {value!r}")
    return lo, hi


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathfree",
        description="Colour graphs so no colour class contains a long path.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a random graph")
    gen.add_argument("--model", choices=sorted(GENERATOR_MODELS), default="uniform-m")
    gen.add_argument("--n", type=int, required=True, help="number of vertices")
    gen.add_argument("--m", type=int, help="edge count (uniform-m)")
    gen.add_argument("--d", type=int, help="degree parameter (other models)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--output", default="-")

    col = sub.add_parser("colour", help="colour a graph and verify the result")
    col.add_argument("--input", default="-")
    col.add_argument("--r", type=int, required=True, help="colour budget")
    col.add_argument("--k", type=int, required=True, help="forbidden path length in vertices")
    col.add_argument("--seed", type=int, default=0)
    col.add_argument("--trials", type=int, default=200, help="resamples per extraction")
    col.add_argument("--threads", type=int, default=1)
    col.add_argument("--beta0", type=float, default=None, help="override density scale seed")
    col.add_argument("--strict", action="store_true", help="enforce the analytic preconditions")
    col.add_argument("--exact-cap", type=int, default=24, dest="exact_cap")
    col.add_argument("--output", default=None, help="write the colouring here")
    col.add_argument("--report", default=None, help="write the JSON report here")
    col.add_argument("--format", choices=["json", "text"], default="json")

    ext = sub.add_parser("extract", help="one banded path-free extraction")
    ext.add_argument("--input", default="-")
    ext.add_argument("--r", type=int, required=True)
    ext.add_argument("--k", type=int, required=True)
    ext.add_argument("--beta", type=float, required=True, help="density scale for this round")
    ext.add_argument("--seed", type=int, default=0)
    ext.add_argument("--trials", type=int, default=200)
    ext.add_argument("--threads", type=int, default=1)
    ext.add_argument("--output", default=None, help="write the extracted subgraph here")
    ext.add_argument("--format", choices=["json", "text"], default="json")

    ver = sub.add_parser("verify", help="verify a colouring file")
    ver.add_argument("--input", default="-")
    ver.add_argument("--r", type=int, default=None, help="override the header budget")
    ver.add_argument("--k", type=int, default=None, help="override the header path bound")
    ver.add_argument("--exact-cap", type=int, default=24, dest="exact_cap")
    ver.add_argument("--format", choices=["json", "text"], default="json")

    bins = sub.add_parser("bins", help="max-load statistics for balls in bins")
    bins.add_argument("--q", type=int, help="number of bins")
    bins.add_argument("--n", type=int, help="number of balls")
    bins.add_argument("--grid", type=_grid, nargs=2, metavar=("QLO..QHI", "NLO..NHI"))
    bins.add_argument("--trials", type=int, default=0, help="Monte Carlo trials (0 = skip)")
    bins.add_argument("--seed", type=int, default=0)
    bins.add_argument("--format", choices=["json", "text"], default="json")

    chk = sub.add_parser("check-inequalities", help="run the inequality suite")
    chk.add_argument("--grid", type=_grid, nargs=2, metavar=("QLO..QHI", "NLO..NHI"))
    chk.add_argument("--samples", type=int, default=500, help="Schur transform samples")
    chk.add_argument("--mc-seeds", type=int, default=50, dest="mc_seeds")
    chk.add_argument("--mc-trials", type=int, default=2000, dest="mc_trials")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--format", choices=["json", "text"], default="text")

    return parser


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.model == "uniform-m":
        if args.m is None:
            raise UsageError("--m is required for the uniform-m model")
        g = uniform_edges(args.n, args.m, args.seed)
    else:
        if args.d is None:
            raise UsageError(f"--d is required for the {args.model} model")
        maker = {
            "d-regular": regular_graph,
            "star-forest": star_forest_graph,
            "path-union": path_union_graph,
        }[args.model]
        g = maker(args.n, args.d, args.seed)
    _write_text(args.output, serialize_edge_list(g))
    return 0


def _cmd_colour(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    params = PipelineParams(
        r=args.r,
        k=args.k,
        seed=args.seed,
        trials_per_extraction=args.trials,
        threads=args.threads,
        strict=args.strict,
        **({"beta0": args.beta0} if args.beta0 is not None else {}),
    )
    result = colour_graph(g, params)
    audit = audit_round_budgets(result)
    if audit:
        raise InternalInvariantError("round budget audit failed: " + "; ".join(audit))
    report = verify_colouring(g, result.colouring, args.r, args.k, cap=args.exact_cap)
    if args.output is not None:
        _write_text(args.output, serialize_colouring(g, result.colouring, r=args.r, k=args.k))
    record = result.to_record()
    record["verification"] = report.to_record()
    if args.report is not None:
        _write_text(args.report, json.dumps(record, indent=2, sort_keys=True))
    _emit(record, args.format)
    if result.success and report.verdict == "fail":
        raise InternalInvariantError(
            f"pipeline claimed success but colour {report.witness_colour} "
            f"contains a path on {args.k} vertices"
        )
    if result.success and report.verdict in ("pass", "indeterminate"):
        return 0
    return 1


def _cmd_extract(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    banded = extract_from_densest_band(
        g,
        beta=args.beta,
        r=args.r,
        k=args.k,
        trials=args.trials,
        seed=args.seed,
        threads=args.threads,
    )
    extraction = banded.extraction
    record = {
        "certified": extraction.certified,
        "certificate": extraction.certificate,
        "band_level": banded.band_level,
        "selected_edges": banded.selected_edges,
        "total_edges": banded.total_edges,
        "achieved_ratio": str(banded.achieved_ratio),
        "achieved_ratio_float": float(banded.achieved_ratio),
        "reference_ratio": banded.reference_ratio,
        "q": extraction.q,
        "q_clamped": extraction.q_clamped,
        "crossing_edges": extraction.crossing_edges,
        "kept_edges": extraction.subgraph.edge_count,
        "chosen_trial": extraction.chosen_trial,
        "mean_edges": extraction.mean_edges,
    }
    if args.output is not None:
        _write_text(args.output, serialize_edge_list(extraction.subgraph))
    _emit(record, args.format)
    return 0 if extraction.certified else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    g, colouring, header = parse_colouring(_read_text(args.input))
    r = args.r if args.r is not None else header.get("r")
    k = args.k if args.k is not None else header.get("k")
    if r is None or k is None:
        raise UsageError("the file header carries no r/k; pass --r and --k")
    report = verify_colouring(g, colouring, r, k, cap=args.exact_cap)
    _emit(report.to_record(), args.format)
    return 0 if report.accepted else 1


def _cmd_bins(args: argparse.Namespace) -> int:
    if args.grid is not None:
        (q_lo, q_hi), (n_lo, n_hi) = args.grid
        records = [
            compute_bins_stats(q, n, trials=args.trials, seed=args.seed).to_record()
            for q in range(q_lo, q_hi + 1)
            for n in range(n_lo, n_hi + 1)
        ]
        if args.format == "json":
            print(json.dumps(records, indent=2, sort_keys=True))
        else:
            for record in records:
                print(
                    f"q={record['q']:<3} n={record['n']:<3} "
                    f"w={record['w']:<12} "
                    f"lb_unified={record['lb_unified']:.6f}"
                )
        return 0
    if args.q is None or args.n is None:
        raise UsageError("pass --q and --n, or --grid")
    stats = compute_bins_stats(args.q, args.n, trials=args.trials, seed=args.seed)
    _emit(stats.to_record(), args.format)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    kwargs = {}
    if args.grid is not None:
        kwargs["q_range"], kwargs["n_range"] = args.grid
    results = run_all_checks(
        seed=args.seed,
        schur_samples=args.samples,
        mc_seeds=args.mc_seeds,
        mc_trials=args.mc_trials,
        **kwargs,
    )
    if args.format == "json":
        print(json.dumps([r.to_record() for r in results], indent=2))
    else:
        for result in results:
            print(result.summary_line())
    return 0 if all(r.ok for r in results) else 1


_COMMANDS = {
    "generate": _cmd_generate,
    "colour": _cmd_colour,
    "extract": _cmd_extract,
    "verify": _cmd_verify,
    "bins": _cmd_bins,
    "check-inequalities": _cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help; keep both.
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
