"""
gwkit command line

    gwkit <command> --config <file> [--seed N] [--samples N] [--radius N] [--out <file>]

Commands:
    run          run the verification suites; JSON lines plus a text summary
    normalize    canonical normal form of --word
    multiply     product of --word and --other
    mmap         m-map and |z|_f of --element
    in-a         membership of --element in A({|x|_H <= C}, B(Gamma, C), C)
    quotient     quotient multigraph of the configured action
    iso          quotient isomorphism against --other-config
    predicates   girth, untransvectable and rigid for the configured graph
    report       hypothesis report of the configured action

Exit codes: 0 success, 1 violation or false decision, 2 configuration or
input error, 3 inconclusive only.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from .client import Gwkit
from .errors import EXIT_CONFIG, EXIT_INCONCLUSIVE, EXIT_VIOLATION, GwkitError
from .types import SuiteName, SuiteReport

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwkit",
        description="Exact computations and property checks for graph products and graph-wreath products",
    )
    parser.add_argument(
        "command",
        choices=sorted(COMMANDS),
        help="what to do with the configured objects",
    )
    parser.add_argument("--config", type=Path, required=True, help="JSON run configuration")
    parser.add_argument("--seed", type=int, default=None, help="64-bit RNG seed (overrides the config)")
    parser.add_argument("--samples", type=int, default=None, help="random instances per suite")
    parser.add_argument("--radius", type=int, default=None, help="ball radius for sweeps and predicates")
    parser.add_argument("--out", type=Path, default=None, help="write JSON-line reports here")
    parser.add_argument(
        "--suite",
        dest="suites",
        action="append",
        choices=[s.value for s in SuiteName],
        help="suite to run (repeatable; default: the configured selection)",
    )
    parser.add_argument("--word", help='graph-product element, e.g. "0:1 2:-1"')
    parser.add_argument("--other", help="second graph-product element for multiply")
    parser.add_argument("--element", help='wreath element, e.g. "0:1 3:2 | 1"')
    parser.add_argument("--constant", type=int, default=None, help="the constant C of in-a")
    parser.add_argument("--other-config", type=Path, default=None, help="second configuration for iso")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return parser


def _require(value: Optional[str], flag: str) -> str:
    if value is None:
        raise GwkitError(f"{flag} is required for this command", "missing_argument")
    return value


def _write_reports(reports: List[SuiteReport], out: Optional[Path], stream: TextIO) -> None:
    lines = [r.model_dump_json() for r in reports]
    if out is not None:
        out.write_text("".join(line + "\n" for line in lines))
        logger.info("wrote %d reports to %s", len(lines), out)
    else:
        for line in lines:
            print(line, file=stream)


def summarize(reports: List[SuiteReport]) -> str:
    width = max((len(r.suite.value) for r in reports), default=0)
    rows = []
    for r in reports:
        row = (
            f"{r.suite.value:<{width}}  {r.passed:>6} passed  {r.failed:>4} failed  "
            f"{r.inconclusive:>4} inconclusive"
        )
        if r.counterexample:
            row += f"\n{'':<{width}}  first counterexample: {r.counterexample}"
        rows.append(row)
    return "\n".join(rows)


def run_exit_code(reports: List[SuiteReport]) -> int:
    """1 on any failure, 3 when every suite was inconclusive only, else 0"""
    if any(r.failed for r in reports):
        return EXIT_VIOLATION
    if reports and all(r.exit_code == EXIT_INCONCLUSIVE for r in reports):
        return EXIT_INCONCLUSIVE
    return 0


def cmd_run(kit: Gwkit, args: argparse.Namespace, stream: TextIO) -> int:
    names = [SuiteName(s) for s in args.suites or ()]
    reports = kit.run(names)
    out = args.out if args.out is not None else (Path(kit.config.out) if kit.config.out else None)
    _write_reports(reports, out, stream)
    print(summarize(reports), file=stream)
    return run_exit_code(reports)


def cmd_normalize(kit: Gwkit, args: argparse.Namespace, stream: TextIO) -> int:
    print(kit.gp.render(kit.normalize(_require(args.word, "--word"))), file=stream)
    return 0


def cmd_multiply(kit: Gwkit, args: argparse.Namespace, stream: TextIO) -> int:
    product = kit.multiply(_require(args.word, "--word"), _require(args.other, "--other"))
    print(kit.gp.render(product), file=stream)
    return 0


def cmd_mmap(kit: Gwkit, args: argparse.Namespace, stream: TextIO) -> int:
    print(kit.mmap(_require(args.element, "--element")).model_dump_json(), file=stream)
    return 0


def cmd_in_a(kit: Gwkit, args: argparse.Namespace, stream: TextIO) -> int:
    if args.constant is None:
        raise GwkitError("--constant is required for in-a", "missing_argument")
    member = kit.in_a(_require(args.element, "--element"), args.constant)
    print("true" if member else "false", file=stream)
    return 0 if member else EXIT_VIOLATION


def cmd_quotient(kit: Gwkit, args: argparse.Namespace, stream: TextIO) -> int:
    print(kit.quotient().render(), file=stream)
    return 0


def cmd_iso(kit: Gwkit, args: argparse.Namespace, stream: TextIO) -> int:
    if args.other_config is None:
        raise GwkitError("--other-config is required for iso", "missing_argument")
    decision = kit.iso(Gwkit.from_file(args.other_config))
    if decision.is_true:
        print(f"isomorphic {decision.witness}", file=stream)
        return 0
    print(f"not isomorphic ({decision.note})", file=stream)
    return EXIT_VIOLATION


def cmd_predicates(kit: Gwkit, args: argparse.Namespace, stream: TextIO) -> int:
    report = kit.predicates(args.radius)
    print(report.summary(), file=stream)
    return report.exit_code


def cmd_report(kit: Gwkit, args: argparse.Namespace, stream: TextIO) -> int:
    print(kit.report().model_dump_json(indent=2), file=stream)
    return 0


COMMANDS: Dict[str, Callable[[Gwkit, argparse.Namespace, TextIO], int]] = {
    "run": cmd_run,
    "normalize": cmd_normalize,
    "multiply": cmd_multiply,
    "mmap": cmd_mmap,
    "in-a": cmd_in_a,
    "quotient": cmd_quotient,
    "iso": cmd_iso,
    "predicates": cmd_predicates,
    "report": cmd_report,
}


def main(argv: Optional[Sequence[str]] = None, stream: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    out = stream if stream is not None else sys.stdout
    try:
        # --radius is a predicate radius there, not a config override
        overrides = {"seed": args.seed, "samples": args.samples}
        if args.command != "predicates":
            overrides["radius"] = args.radius
        kit = Gwkit.from_file(args.config, **overrides)
        return COMMANDS[args.command](kit, args, out)
    except GwkitError as e:
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
