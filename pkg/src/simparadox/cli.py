"""Command-line interface.

Subcommands: construct, verify, sample, detect, render, demo. Exit
codes: 0 success (and, where a verdict is computed, verdict true),
1 verdict false, 2 invalid input or malformed document, 3 construction
broke down on a numerically degenerate seed, 4 conditioning on an
empty cell.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .decomposition import Quadruple, validate_seed_angles
from .demo import run_demo
from .distribution import assemble_joint
from .distribution import detect as detect_orderings
from .distribution import sample as sample_joint
from .distribution import verify_chain
from .errors import (
    DegenerateSeedError,
    DocumentError,
    DomainError,
    ZeroProbabilityError,
)
from .formats import (
    CONSTRUCTION_METHOD,
    load_dataset,
    load_distribution,
    save_dataset,
    save_distribution,
)
from .render import render_decomposition
from .tree import ChainReport, build, format_cell, verify_alternation

EXIT_OK = 0
EXIT_VERDICT_FALSE = 1
EXIT_INVALID = 2
EXIT_DEGENERATE = 3
EXIT_ZERO_PROBABILITY = 4


def _parse_seed(text: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise DomainError(f"seed must be four comma-separated numbers, got {text!r}")
    try:
        values = [float(part) for part in parts]
    except ValueError as exc:
        raise DomainError(f"seed must be numeric, got {text!r}") from exc
    return values


def _normalized_seed(text: str) -> Quadruple:
    """Seed quadruple with each arm rescaled to mass 1, with a notice."""
    a, b, c, d = _parse_seed(text)
    for arm, total in (("treated", a + b), ("control", c + d)):
        if not total > 0:
            raise DomainError(f"{arm} arm masses must sum to a positive value")
        if abs(total - 1.0) > 1e-9:
            print(f"note: {arm} arm masses rescaled by 1/{total:g}", file=sys.stderr)
    return Quadruple(a / (a + b), b / (a + b), c / (c + d), d / (c + d))


def _parse_order(text: str | None, n: int) -> tuple[int, ...]:
    if text is None:
        return tuple(range(1, n + 1))
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"order must be comma-separated integers, got {text!r}") from exc


def _print_report(report: ChainReport) -> None:
    print(f"{'depth':>5}  {'direction':<9}  {'min margin':>12}  worst cell")
    for record in report.depths:
        direction = record.direction.symbol if record.direction else "mixed"
        print(
            f"{record.depth:>5}  {direction:<9}  {record.min_margin:>12.6e}  "
            f"{format_cell(record.worst_cell)}"
        )
    print(f"verdict: {'pass' if report.verdict else 'fail'}")


def _cmd_construct(args: argparse.Namespace) -> int:
    seed = _normalized_seed(args.seed)
    tree = build(seed, args.n)
    report = verify_alternation(tree)
    _print_report(report)
    joint = assemble_joint(tree, args.p_treated)
    provenance = {
        "seed": [f"{v:.17g}" for v in seed.as_tuple()],
        "construction": CONSTRUCTION_METHOD,
    }
    save_distribution(joint, args.out, provenance)
    print(f"wrote {args.out} (n={joint.n}, p_treated={joint.p_treated:g})")
    return EXIT_OK if report.verdict else EXIT_VERDICT_FALSE


def _cmd_verify(args: argparse.Namespace) -> int:
    joint = load_distribution(args.infile)
    order = _parse_order(args.order, joint.n)
    depth = len(order) if args.depth is None else args.depth
    report = verify_chain(joint, order, depth)
    _print_report(report)
    return EXIT_OK if report.verdict else EXIT_VERDICT_FALSE


def _cmd_sample(args: argparse.Namespace) -> int:
    joint = load_distribution(args.infile)
    data = sample_joint(joint, args.total, args.rng_seed)
    save_dataset(data, args.out)
    print(f"wrote {args.out} ({data.total} observations, {len(data.counts)} nonzero cells)")
    return EXIT_OK


def _cmd_detect(args: argparse.Namespace) -> int:
    data = load_dataset(args.infile)
    max_factors = data.n if args.max_factors is None else args.max_factors
    results = detect_orderings(data, max_factors)
    if not results:
        print("no flipping factor ordering found")
        return EXIT_OK
    for result in results:
        order = ",".join(map(str, result.factor_order))
        directions = " ".join(
            record.direction.symbol if record.direction else "mixed"
            for record in result.report.depths
        )
        margins = " ".join(f"{record.min_margin:.4f}" for record in result.report.depths)
        print(f"order ({order}): flips={result.flips}  directions {directions}  min margins {margins}")
        for warning in result.warnings:
            print(f"  warning: {warning}")
    return EXIT_OK


def _cmd_render(args: argparse.Namespace) -> int:
    seed = _normalized_seed(args.seed)
    validate_seed_angles(seed)
    render_decomposition(seed, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_demo(args: argparse.Namespace) -> int:
    return EXIT_OK if run_demo() else EXIT_VERDICT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simparadox",
        description=(
            "Construct, verify, sample, detect, and render distributions whose "
            "treatment-response comparison reverses at every stratification depth."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    construct = commands.add_parser(
        "construct", help="build a distribution from a seed quadruple and write it as JSON"
    )
    construct.add_argument("--seed", required=True, help="a,b,c,d masses (normalized per arm)")
    construct.add_argument("--n", type=int, required=True, help="number of stratification factors")
    construct.add_argument("--p-treated", type=float, default=0.5, dest="p_treated")
    construct.add_argument("--out", default="distribution.json")
    construct.set_defaults(func=_cmd_construct)

    verify = commands.add_parser("verify", help="check the alternating chain of a distribution file")
    verify.add_argument("--in", dest="infile", required=True)
    verify.add_argument("--order", help="comma-separated factor ordering (default 1..n)")
    verify.add_argument("--depth", type=int, help="conditioning depth (default: full order)")
    verify.set_defaults(func=_cmd_verify)

    sample = commands.add_parser("sample", help="draw a dataset from a distribution file")
    sample.add_argument("--in", dest="infile", required=True)
    sample.add_argument("--total", type=int, required=True)
    sample.add_argument("--rng-seed", type=int, default=0, dest="rng_seed")
    sample.add_argument("--out", default="dataset.csv")
    sample.set_defaults(func=_cmd_sample)

    detect = commands.add_parser("detect", help="find reversing factor orderings in count data")
    detect.add_argument("--in", dest="infile", required=True)
    detect.add_argument("--max-factors", type=int, dest="max_factors")
    detect.set_defaults(func=_cmd_detect)

    render = commands.add_parser("render", help="draw one split of a seed quadruple as SVG")
    render.add_argument("--seed", required=True, help="a,b,c,d masses (normalized per arm)")
    render.add_argument("--out", required=True)
    render.set_defaults(func=_cmd_render)

    demo = commands.add_parser("demo", help="run the reference construction and detection demo")
    demo.set_defaults(func=_cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except DegenerateSeedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ZeroProbabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO_PROBABILITY


if __name__ == "__main__":
    sys.exit(main())
