"""Command-line interface.

Subcommands: eval, len, ball, probe-mac, check-ci, probe-monotone.
Exit codes: 0 success (probes: claim confirmed), 1 probe refuted,
2 usage or parse error, 3 resource cap exceeded.  The CARETCALC_CAP
environment variable overrides the default search cap; --cap overrides
both.  Output is plain tab-separated text, or JSON with --format
structured; identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import cayley, metrics
from .errors import ParseError, SearchCapExceededError
from .group_ops import GeneratingSet, evaluate_word, normal_form
from .tree_core import canonical_encode
from .wordlang import format_word, parse_word

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

ENV_CAP = "CARETCALC_CAP"


def _gens(text: str) -> GeneratingSet:
    try:
        indices = [int(part) for part in text.split(",") if part.strip() != ""]
        return GeneratingSet.of(indices)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _cap(args, fallback: int) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get(ENV_CAP)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ParseError(f"{ENV_CAP} must be an integer, got {env!r}")
        if value <= 0:
            raise ParseError(f"{ENV_CAP} must be positive, got {value}")
        return value
    return fallback


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_record(args, record: dict, order: list[str]) -> None:
    """Plain: one key<TAB>value line per key in order.  Structured: JSON
    of the full record with native types (null/true rather than text)."""
    if args.format == "structured":
        _emit(args, json.dumps(record, sort_keys=True, indent=2) + "\n")
        return
    lines = []
    for key in order:
        value = record[key]
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        elif value is None:
            value = "none"
        elif isinstance(value, bool):
            value = str(value).lower()
        lines.append(f"{key}\t{value}")
    _emit(args, "".join(line + "\n" for line in lines))


def cmd_eval(args) -> int:
    word = parse_word(args.word)
    pair = evaluate_word(word.letters)
    record = {
        "pair": canonical_encode(pair),
        "carets": pair.carets,
        "normal_form": format_word(normal_form(pair)),
    }
    _emit_record(args, record, ["pair", "carets", "normal_form"])
    return EXIT_OK


def cmd_len(args) -> int:
    word = parse_word(args.word)
    pair = evaluate_word(word.letters)
    gens = args.gens
    method = args.method
    if method == "auto":
        method = "formula" if gens.is_consecutive else "bfs"
    if method == "formula" and not gens.is_consecutive:
        raise ParseError(
            f"--method formula needs a consecutive generating set, got {list(gens)}"
        )
    record = {
        "pair": canonical_encode(pair),
        "gens": list(gens),
        "method": method,
        "l_infinity": metrics.l_infinity(pair),
    }
    if method == "formula":
        report = metrics.length_consecutive(
            pair, gens.max_index, cap=_cap(args, metrics.DEFAULT_PENALTY_CAP)
        )
        record["penalty_weight"] = report.penalty_weight
        record["length"] = report.length
        witness = report.witness.parents
        record["witness"] = (
            ",".join(f"{p}>{c}" for c, p in witness) if witness else "-"
        )
        order = ["pair", "gens", "method", "l_infinity", "penalty_weight",
                 "length", "witness"]
    else:
        record["length"] = cayley.bfs_length(
            pair, gens, cap=_cap(args, cayley.DEFAULT_STATE_CAP)
        )
        order = ["pair", "gens", "method", "l_infinity", "length"]
    _emit_record(args, record, order)
    return EXIT_OK


def cmd_ball(args) -> int:
    index = cayley.ball(
        args.gens, args.radius, cap=_cap(args, cayley.DEFAULT_STATE_CAP)
    )
    if args.format == "structured":
        record = {
            "gens": list(args.gens),
            "radius": args.radius,
            "size": index.size,
            "sphere_sizes": index.sphere_sizes(),
            "elements": {enc: length for enc, length, _ in index.elements()},
        }
        _emit(args, json.dumps(record, sort_keys=True, indent=2) + "\n")
    else:
        _emit(args, "".join(line + "\n" for line in index.export_lines()))
    return EXIT_OK


def cmd_probe_mac(args) -> int:
    report = cayley.probe_mac(
        args.gens, args.k, cap=_cap(args, cayley.DEFAULT_STATE_CAP)
    )
    record = report.to_dict()
    order = ["gens", "k", "g", "h", "g_length", "h_length", "distance",
             "min_in_ball_path", "verdict"]
    if report.formula_g_length is not None:
        order[-1:-1] = ["formula_g_length", "formula_h_length"]
    _emit_record(args, record, order)
    return EXIT_OK if report.confirmed else EXIT_REFUTED


def cmd_check_ci(args) -> int:
    report = cayley.coarse_isometry_check(
        args.gens_a, args.gens_b, args.radius,
        cap=_cap(args, cayley.DEFAULT_STATE_CAP),
    )
    _emit_record(args, report.to_dict(),
                 ["gens_a", "gens_b", "radius", "elements_checked",
                  "max_difference", "claimed_bound", "within_bound"])
    return EXIT_REFUTED if report.within_bound is False else EXIT_OK


def cmd_probe_monotone(args) -> int:
    ok = cayley.probe_subset_monotonicity(
        args.gens_a, args.gens_b, args.radius,
        cap=_cap(args, cayley.DEFAULT_STATE_CAP),
    )
    record = {
        "gens_a": list(args.gens_a),
        "gens_b": list(args.gens_b),
        "radius": args.radius,
        "monotone": ok,
    }
    _emit_record(args, record, ["gens_a", "gens_b", "radius", "monotone"])
    return EXIT_OK if ok else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caretcalc",
        description="Exact word lengths and convexity probes for Thompson's "
        "group F via reduced tree pair diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--cap", type=_positive_int, default=None,
                       help="search state cap (default from CARETCALC_CAP or built-in)")
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument("--format", choices=("plain", "structured"),
                       default="plain", help="output format")

    p = sub.add_parser("eval", help="evaluate a word to its reduced pair")
    p.add_argument("word", help="word such as 'x1^2 x0^-2' (may be empty)")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("len", help="word length of an element")
    p.add_argument("word")
    p.add_argument("--gens", type=_gens, required=True,
                   help="comma-separated generator indices, e.g. 0,1,2")
    p.add_argument("--method", choices=("auto", "formula", "bfs"), default="auto",
                   help="formula needs consecutive indices; auto picks it when possible")
    common(p)
    p.set_defaults(func=cmd_len)

    p = sub.add_parser("ball", help="enumerate a ball of the word metric")
    p.add_argument("--gens", type=_gens, required=True)
    p.add_argument("--radius", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("probe-mac", help="check a minimal-almost-convexity witness pair")
    p.add_argument("--gens", type=_gens, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    common(p)
    p.set_defaults(func=cmd_probe_mac)

    p = sub.add_parser("check-ci", help="measure the additive gap between two word metrics")
    p.add_argument("--gens-a", type=_gens, required=True)
    p.add_argument("--gens-b", type=_gens, required=True)
    p.add_argument("--radius", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_check_ci)

    p = sub.add_parser("probe-monotone",
                       help="check that a larger generating set never increases length")
    p.add_argument("--gens-a", type=_gens, required=True, help="the smaller set")
    p.add_argument("--gens-b", type=_gens, required=True, help="the larger set")
    p.add_argument("--radius", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_probe_monotone)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchCapExceededError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
