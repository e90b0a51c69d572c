"""Command line entry point: ``qmblocks {decompose,oracle,export-dot,stats}``."""
from __future__ import annotations

import argparse
import logging
import re
import sys
from dataclasses import dataclass
from typing import Sequence

from ._validation import check_budget
from .alignment import FORMATS, GAP_POLICIES, alignment_to_partition_system, read_alignment
from .canonical import canonical_reference, canonical_state, diff
from .decomposition import decompose
from .exceptions import AlignmentParseError, BudgetExceededError, StructuralError
from .export import decomposition_document, dumps, nsc_dot, qmgraph_dot
from .fuzz import random_system
from .oracle import DEFAULT_BUDGET, blocks_and_cut_vertices, quasi_median_graph
from .partitions import PartitionSystem, nsc_graph

log = logging.getLogger("qmblocks")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    format: str = "fasta"
    gap_policy: str = "letter"
    output: str | None = None
    budget: int = DEFAULT_BUDGET
    seeds: range | None = None
    what: str = "nsc"
    verbosity: int = 0


def parse_seeds(text: str) -> range:
    """``A..B`` (inclusive) or a single seed."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty seed range {text!r}")
    return range(lo, hi + 1)


def _budget(text: str) -> int:
    try:
        return check_budget(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="alignment file")
    common.add_argument("--format", choices=FORMATS, default="fasta")
    common.add_argument("--gap-policy", choices=GAP_POLICIES, default="letter")
    common.add_argument("--output", "-o", help="write here instead of stdout")
    common.add_argument("--verbose", "-v", action="count", default=0)

    parser = _Parser(prog="qmblocks", description="Blocks of the quasi-median graph of an alignment.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("decompose", parents=[common], help="write the block decomposition as JSON")
    oracle = sub.add_parser("oracle", parents=[common], help="compare against the explicit graph")
    oracle.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET)
    oracle.add_argument("--seeds", type=parse_seeds, help="fuzz mode: random systems for seeds A..B")
    dot = sub.add_parser("export-dot", parents=[common], help="write a graph in DOT")
    dot.add_argument("--what", choices=("nsc", "qmgraph"), default="nsc")
    dot.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET)
    sub.add_parser("stats", parents=[common], help="print counts and bounds")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=args.input,
        format=args.format,
        gap_policy=args.gap_policy,
        output=args.output,
        budget=getattr(args, "budget", DEFAULT_BUDGET),
        seeds=getattr(args, "seeds", None),
        what=getattr(args, "what", "nsc"),
        verbosity=args.verbose,
    )


def _load(cfg: RunConfig):
    if not cfg.input:
        raise UsageError("--input is required")
    alignment = read_alignment(cfg.input, cfg.format)
    system, report = alignment_to_partition_system(alignment, cfg.gap_policy)
    for w in report.warnings:
        log.warning(w)
    return system, report


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_decompose(cfg: RunConfig) -> int:
    system, report = _load(cfg)
    _emit(cfg, dumps(decomposition_document(system, decompose(system), report)))
    return EXIT_OK


def _compare(system: PartitionSystem, budget: int) -> list[str]:
    ref = canonical_reference(blocks_and_cut_vertices(quasi_median_graph(system, budget)))
    return diff(canonical_state(decompose(system)), ref)


def cmd_oracle(cfg: RunConfig) -> int:
    if cfg.seeds is None:
        system, _ = _load(cfg)
        problems = _compare(system, cfg.budget)
        lines = ["MATCH"] if not problems else ["MISMATCH", *problems]
        _emit(cfg, "\n".join(lines) + "\n")
        return EXIT_OK if not problems else EXIT_MISMATCH
    lines = []
    matched = 0
    for seed in cfg.seeds:
        problems = _compare(random_system(seed), cfg.budget)
        if problems:
            lines.append(f"seed {seed}: MISMATCH")
            lines.extend("  " + p for p in problems)
        else:
            matched += 1
            log.info("seed %d: MATCH", seed)
    lines.append(f"{matched}/{len(cfg.seeds)} MATCH")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if matched == len(cfg.seeds) else EXIT_MISMATCH


def cmd_export_dot(cfg: RunConfig) -> int:
    system, _ = _load(cfg)
    if cfg.what == "nsc":
        _emit(cfg, nsc_dot(system, nsc_graph(system)))
    else:
        _emit(cfg, qmgraph_dot(quasi_median_graph(system, cfg.budget)))
    return EXIT_OK


def stats_lines(system: PartitionSystem) -> list[str]:
    state = decompose(system)
    n = system.n
    lines = [
        f"n={n}",
        f"m={system.m}",
        f"k={system.max_parts}",
        f"blocks={len(state.blocks)}",
        f"extra_vertices={len(state.extra_vertices)}",
        f"bound={3 * n - 5}",
        f"bound_extra={3 * n - 6}",
    ]
    for k, block in enumerate(sorted(state.blocks.values(), key=lambda b: min(b.parts))):
        lines.append(
            f"block {k}: partitions={len(block.parts)} X={len(block.members_x)} S={len(block.members_s)}"
        )
    return lines


def cmd_stats(cfg: RunConfig) -> int:
    system, _ = _load(cfg)
    _emit(cfg, "\n".join(stats_lines(system)) + "\n")
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "oracle": cmd_oracle,
    "export-dot": cmd_export_dot,
    "stats": cmd_stats,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    cfg = _config(args)
    logging.basicConfig(
        level=logging.DEBUG if cfg.verbosity > 1 else logging.INFO if cfg.verbosity else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qmblocks: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AlignmentParseError, StructuralError, OSError, UnicodeDecodeError) as exc:
        print(f"qmblocks: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"qmblocks: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
