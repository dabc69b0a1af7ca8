"""The pytanner command line.

Subcommands: construct, analyze, ensemble and simulate. Every subcommand
takes `--config FILE.toml`; explicit flags override the file.
"""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any

from pytanner.analysis import ace_spectrum, distance_girth, vnlgd
from pytanner.constants import (
    CANDIDATE_MIN_FREQUENCY,
    DEFAULT_ACE_DEPTH,
    DEFAULT_BATCH_SIZE,
    DEFAULT_ITERATIONS,
    DEFAULT_MAX_FRAMES,
    DEFAULT_MIN_FRAME_ERRORS,
)
from pytanner.construct import ConstructionConfig, Variant, run_construction
from pytanner.ensemble import generate_ensemble, select_candidates
from pytanner.exceptions import TannerError, TannerValidationError
from pytanner.graph import DegreeSequence
from pytanner.io import (
    analysis_of,
    analyze_columns,
    degrees_from_gamma,
    ensemble_columns,
    ensemble_rows,
    load_alist,
    load_run_sections,
    parse_gamma,
    read_degrees,
    save_alist,
    simulate_rows,
    write_csv,
)
from pytanner.io.reports import SIMULATE_COLUMNS
from pytanner.metric import MetricKind
from pytanner.qc import check_qc_structure, circulant_blocks
from pytanner.sim import SimConfig, run_ber, uncoded_ber

logger = logging.getLogger("pytanner")

PROG = "pytanner"

# config keys that differ from the argparse destinations
_CONFIG_ALIASES = {"in": "input", "iters": "max_iterations"}


def _emit(line: str = "") -> None:
    sys.stdout.write(f"{line}\n")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        msg = f"invalid number list {text!r}"
        raise argparse.ArgumentTypeError(msg) from None


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        metavar="FILE.toml",
        help="read option defaults from a TOML file",
    )
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress (twice for debug output)",
    )
    verbosity.add_argument(
        "-q", "--quiet", action="store_true", help="log errors only"
    )
    return common


def _workers_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--workers",
        type=int,
        help="worker processes (default: $PYTANNER_WORKERS or 1)",
    )


def _construct_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, help="number of CNs (rows)")
    parser.add_argument("--n", type=int, help="number of VNs (columns)")
    degrees = parser.add_mutually_exclusive_group()
    degrees.add_argument(
        "--degrees", metavar="FILE", help="file with the n VN degrees"
    )
    degrees.add_argument(
        "--gamma",
        metavar="SPEC",
        help="VN degree distribution, e.g. '0.5x^2 + 0.5x^3'",
    )
    parser.add_argument(
        "--metric",
        choices=[kind.value for kind in MetricKind],
        default=MetricKind.distance.value,
        help="distance (dist) or distance and ACE (dist-ace)",
    )
    parser.add_argument(
        "--variant",
        choices=[variant.value for variant in Variant],
        default=Variant.mm_pega.value,
    )
    parser.add_argument(
        "--edge-trials", type=int, default=1, help="edge-trials r"
    )
    parser.add_argument(
        "--qc-n",
        type=int,
        default=1,
        help="circulant size N (1 = non-QC)",
    )
    parser.add_argument(
        "--cpm-only",
        action="store_true",
        help="restrict nonzero circulants to permutation matrices",
    )


def build_parser() -> tuple[
    argparse.ArgumentParser, dict[str, argparse.ArgumentParser]
]:
    """Return the main parser and its subcommand parsers by name."""
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="LDPC code construction with multi-edge PEG algorithms.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    commands: dict[str, argparse.ArgumentParser] = {}

    construct = subparsers.add_parser(
        "construct", parents=[common], help="construct one code"
    )
    _construct_options(construct)
    construct.add_argument("--seed", type=int, default=0)
    construct.add_argument("--out", metavar="FILE.alist")
    construct.set_defaults(handler=cmd_construct)
    commands["construct"] = construct

    analyze = subparsers.add_parser(
        "analyze", parents=[common], help="girth, VNLGD and ACE spectrum"
    )
    analyze.add_argument("--in", dest="input", metavar="FILE.alist")
    analyze.add_argument("--ace-depth", type=int, default=DEFAULT_ACE_DEPTH)
    analyze.add_argument(
        "--qc-n",
        type=int,
        default=1,
        help="also verify the circulant structure of size N",
    )
    analyze.add_argument("--report", metavar="FILE.csv")
    analyze.set_defaults(handler=cmd_analyze)
    commands["analyze"] = analyze

    ensemble = subparsers.add_parser(
        "ensemble", parents=[common], help="statistics over many seeds"
    )
    _construct_options(ensemble)
    ensemble.add_argument("--count", type=int, default=100)
    ensemble.add_argument("--base-seed", type=int, default=0)
    ensemble.add_argument(
        "--ace-depth", type=int, default=DEFAULT_ACE_DEPTH
    )
    ensemble.add_argument(
        "--min-frequency",
        type=float,
        default=CANDIDATE_MIN_FREQUENCY,
        help="frequency a spectrum needs to select candidates",
    )
    ensemble.add_argument("--report", metavar="FILE.csv")
    _workers_option(ensemble)
    ensemble.set_defaults(handler=cmd_ensemble)
    commands["ensemble"] = ensemble

    simulate = subparsers.add_parser(
        "simulate", parents=[common], help="BER/FER over BPSK-AWGN"
    )
    simulate.add_argument("--in", dest="input", metavar="FILE.alist")
    simulate.add_argument(
        "--ebn0", type=_float_list, metavar="LIST", help="Eb/N0 points in dB"
    )
    simulate.add_argument(
        "--iters",
        dest="max_iterations",
        type=int,
        default=DEFAULT_ITERATIONS,
    )
    simulate.add_argument(
        "--min-frame-errors", type=int, default=DEFAULT_MIN_FRAME_ERRORS
    )
    simulate.add_argument(
        "--max-frames", type=int, default=DEFAULT_MAX_FRAMES
    )
    simulate.add_argument(
        "--batch-size", type=int, default=DEFAULT_BATCH_SIZE
    )
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--report", metavar="FILE.csv")
    _workers_option(simulate)
    simulate.set_defaults(handler=cmd_simulate)
    commands["simulate"] = simulate

    return parser, commands


def _flag(dest: str) -> str:
    aliases = {alias: key for key, alias in _CONFIG_ALIASES.items()}
    return "--" + aliases.get(dest, dest).replace("_", "-")


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        flags = ", ".join(_flag(name) for name in missing)
        msg = f"{args.command}: missing required option(s) {flags}"
        raise TannerValidationError(msg)


def _degrees(args: argparse.Namespace) -> DegreeSequence:
    if args.degrees is not None:
        return read_degrees(args.degrees)
    if args.gamma is None:
        msg = f"{args.command}: one of --degrees or --gamma is required"
        raise TannerValidationError(msg)
    return degrees_from_gamma(parse_gamma(args.gamma), args.n, args.qc_n)


def _construction_config(
    args: argparse.Namespace, seed: int
) -> ConstructionConfig:
    _require(args, "m", "n")
    return ConstructionConfig(
        m=args.m,
        n=args.n,
        degrees=_degrees(args),
        kind=MetricKind(args.metric),
        edge_trials=args.edge_trials,
        seed=seed,
        variant=Variant(args.variant),
        circulant_size=args.qc_n,
        cpm_only=args.cpm_only,
    )


def cmd_construct(args: argparse.Namespace) -> int:
    _require(args, "out")
    cfg = _construction_config(args, args.seed)
    g, trace = run_construction(cfg)
    save_alist(g, args.out)
    _emit(
        f"{cfg.variant.value} r={cfg.effective_trials} N={cfg.circulant_size}"
        f" seed={cfg.seed}: {g.m}x{g.n}, {g.num_edges} edges in "
        f"{len(trace)} stages -> {args.out}"
    )
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    _require(args, "input")
    g = load_alist(args.input)
    analysis = analysis_of(
        args.input,
        g,
        distance_girth(g),
        vnlgd(g),
        ace_spectrum(g, args.ace_depth),
    )
    _emit(f"file:     {analysis.file} ({g.m}x{g.n}, {g.num_edges} edges)")
    _emit(f"girth:    {analysis.girth}")
    _emit(f"vnlgd:    {analysis.vnlgd}")
    _emit(f"spectrum: {analysis.spectrum}")
    if args.qc_n > 1:
        check_qc_structure(g, args.qc_n)
        blocks = circulant_blocks(g, args.qc_n)
        j, k = blocks.shape
        _emit(
            f"qc:       N={args.qc_n}, {j}x{k} blocks, "
            f"{int((blocks == 0).sum())} zero, max weight {blocks.max()}"
        )
    if args.report is not None:
        columns = analyze_columns(args.ace_depth)
        write_csv(args.report, columns, [analysis.row()])
    return 0


def cmd_ensemble(args: argparse.Namespace) -> int:
    cfg = _construction_config(args, args.base_seed)
    report = generate_ensemble(
        cfg,
        args.count,
        args.base_seed,
        ace_depth=args.ace_depth,
        workers=args.workers,
    )
    average = ", ".join(
        "inf" if fraction == 1 else f"{mean:.2f}"
        for fraction, mean in report.average
    )
    _emit(f"codes:       {report.count}")
    _emit(
        f"maximum:     {report.maximum} "
        f"(frequency {report.maximum_frequency:.2f})"
    )
    _emit(
        f"min vnlgd:   {report.minimum_vnlgd} "
        f"(frequency {report.minimum_vnlgd_frequency:.2f})"
    )
    _emit(f"average:     ({average})")
    candidates = select_candidates(report, args.min_frequency)
    seeds = ", ".join(str(report.codes[i].seed) for i in candidates)
    _emit(f"candidates:  {seeds or '-'}")
    if args.report is not None:
        write_csv(
            args.report, ensemble_columns(args.ace_depth), ensemble_rows(report)
        )
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    _require(args, "input", "ebn0")
    g = load_alist(args.input)
    ebn0 = args.ebn0
    if isinstance(ebn0, str):
        ebn0 = _float_list(ebn0)
    cfg = SimConfig(
        ebn0_db=ebn0,
        max_iterations=args.max_iterations,
        min_frame_errors=args.min_frame_errors,
        max_frames=args.max_frames,
        seed=args.seed,
        batch_size=args.batch_size,
    )
    points = run_ber(g, cfg, workers=args.workers)
    _emit("ebn0_db  frames  frame_errors  ber        fer        uncoded")
    for p in points:
        _emit(
            f"{p.ebn0_db:7.2f}  {p.frames:6d}  {p.frame_errors:12d}  "
            f"{p.ber:.3e}  {p.fer:.3e}  {uncoded_ber(p.ebn0_db):.3e}"
        )
    if args.report is not None:
        write_csv(args.report, SIMULATE_COLUMNS, simulate_rows(points))
    return 0


def _apply_config(
    parser: argparse.ArgumentParser,
    command: argparse.ArgumentParser,
    args: argparse.Namespace,
    argv: Sequence[str],
) -> argparse.Namespace:
    sections = load_run_sections(args.config, args.command)
    known = set(vars(command.parse_args([]))) - {"config", "handler"}
    defaults: dict[str, Any] = {}
    for key, value in sections.merged().items():
        dest = _CONFIG_ALIASES.get(key, key)
        if dest not in known:
            if key not in sections.own:
                continue
            msg = f"{args.config}: unknown {args.command} option {key!r}"
            raise TannerValidationError(msg)
        defaults[dest] = value
    command.set_defaults(**defaults)
    logger.debug("%s defaults from %s: %s", args.command, args.config, defaults)
    return parser.parse_args(argv)


def _configure_logging(args: argparse.Namespace) -> None:
    if args.quiet:
        level = logging.ERROR
    else:
        level = max(logging.DEBUG, logging.WARNING - 10 * args.verbose)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: None | Sequence[str] = None) -> int:
    """Run the command line and return the exit status."""
    arguments = list(sys.argv[1:] if argv is None else argv)
    parser, commands = build_parser()
    args = parser.parse_args(arguments)
    try:
        if args.config is not None:
            args = _apply_config(
                parser, commands[args.command], args, arguments
            )
        _configure_logging(args)
        handler: Callable[[argparse.Namespace], int] = args.handler
        return handler(args)
    except (TannerError, OSError) as e:
        sys.stderr.write(f"{PROG}: error: {e}\n")
        return 1
