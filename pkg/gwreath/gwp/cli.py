from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel

from .commands import (
    build_group,
    certify_group,
    decompose_group,
    inspect_group,
    load_selftest_corpus,
    selftest,
)
from .errors import (
    BudgetExhausted,
    DeskGuardExceeded,
    DomainMismatch,
    HypothesisViolation,
    PosetError,
    SpecParseError,
)
from .instance import load_instance
from .reports import render_text, to_json
from .settings import DeskSettings, SettingsError, load_settings, warn_if_raised

logger = logging.getLogger("gwp")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3

INPUT_ERRORS = (SpecParseError, SettingsError, HypothesisViolation, PosetError, DomainMismatch, DeskGuardExceeded)


def configure_logging(level: str = "INFO") -> None:
    root = logging.getLogger("gwp")
    root.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s %(message)s"))
    root.addHandler(handler)
    root.setLevel(level.upper())
    root.propagate = False


def emit(report: BaseModel, fmt: str) -> None:
    print(to_json(report) if fmt == "json" else render_text(report))


def _settings(args: argparse.Namespace) -> DeskSettings:
    budget = args.budget
    overrides = {
        "seed": args.seed,
        "max_delta": args.max_delta,
        "max_enum": args.max_enum,
        "lift_budget": budget,
        "pair_budget": budget,
        "search_budget": budget,
    }
    settings = load_settings(args.policy, overrides)
    warn_if_raised(settings)
    return settings


def _require_spec(args: argparse.Namespace) -> Path:
    if args.spec is None:
        raise SpecParseError(0, f"{args.command} needs --spec <file>")
    return args.spec


def cmd_inspect(args: argparse.Namespace, settings: DeskSettings) -> int:
    group = build_group(load_instance(_require_spec(args)), settings)
    emit(inspect_group(group), args.format)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, settings: DeskSettings) -> int:
    group = build_group(load_instance(_require_spec(args)), settings)
    report = decompose_group(group, settings)
    emit(report, args.format)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_certify(args: argparse.Namespace, settings: DeskSettings) -> int:
    group = build_group(load_instance(_require_spec(args)), settings)
    report = certify_group(group, settings)
    emit(report, args.format)
    return EXIT_OK if report.certified else EXIT_CHECK_FAILED


def cmd_selftest(args: argparse.Namespace, settings: DeskSettings) -> int:
    if args.spec is not None:
        specs = [load_instance(args.spec)]
    else:
        specs = load_selftest_corpus(args.corpus, empty=args.empty)
    try:
        report = selftest(specs, settings, args.scope)
    except ValueError as exc:
        if isinstance(exc, INPUT_ERRORS):
            raise
        raise SettingsError(str(exc)) from exc
    emit(report, args.format)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


COMMANDS: Dict[str, Callable[[argparse.Namespace, DeskSettings], int]] = {
    "inspect": cmd_inspect,
    "decompose": cmd_decompose,
    "certify": cmd_certify,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", type=Path, default=None, help="Instance file (.gwp)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=None, help="Attempt budget for randomized searches")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-delta", type=int, default=None, help="Desk guard on |Δ|")
    common.add_argument("--max-enum", type=int, default=None, help="Desk guard on |F| for enumeration")
    common.add_argument("--policy", type=Path, default=None, help="YAML policy file")
    common.add_argument("--log-level", default=None)

    parser = argparse.ArgumentParser(prog="gwp", description="Generalised wreath products at desk scale")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("inspect", parents=[common], help="Poset shape, orders and transitivity")
    sub.add_parser("decompose", parents=[common], help="Decomposition tree with witness checks")
    sub.add_parser("certify", parents=[common], help="Certify d(F) = |I|")
    selftest_parser = sub.add_parser("selftest", parents=[common], help="Run the property suites over a corpus")
    selftest_parser.add_argument("--scope", nargs="*", default=[], help="Check or scope names (default: all)")
    selftest_parser.add_argument("--corpus", type=Path, default=None, help="Directory of .gwp files")
    selftest_parser.add_argument("--empty", action="store_true", help="Run on an empty corpus")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _settings(args)
        configure_logging(args.log_level or settings.log_level)
        logger.debug("[cli] command=%s spec=%s seed=%d", args.command, args.spec, settings.seed)
        return COMMANDS[args.command](args, settings)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: cannot read {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
