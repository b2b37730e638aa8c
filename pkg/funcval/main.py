"""
funcval - Command Line Entry Point

    funcval verify <suite> [--n N] [--seed S] [--tol T] [--trials K] [--out PATH] [--format json|csv]
    funcval eval --fn FILE --spec FILE [--out PATH]
    funcval table --spec FILE --tgrid a,b,c [--out PATH]

Exit codes: 0 when every check passes, 1 when a check fails or a
computation errors, 2 for usage and parse errors. FUNCVAL_SEED overrides
--seed.
"""

import argparse
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv

load_dotenv()

from pydantic import ValidationError  # noqa: E402

from funcval import __version__  # noqa: E402
from funcval.api.commands.evaluate import evaluate  # noqa: E402
from funcval.api.commands.table import table  # noqa: E402
from funcval.api.commands.verify import verify  # noqa: E402
from funcval.api.models.request import ReportFormat, SuiteConfig, SuiteName  # noqa: E402
from funcval.core.config import settings  # noqa: E402
from funcval.core.errors import FuncvalError, UsageError  # noqa: E402
from funcval.core.logging import get_logger  # noqa: E402
from funcval.services.suite_runner import resolve_seed  # noqa: E402

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="funcval",
        description="Verify valuations on piecewise-affine convex functions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    verify_parser = commands.add_parser("verify", help="Run a verification suite")
    verify_parser.add_argument("suite", help=", ".join(s.value for s in SuiteName))
    verify_parser.add_argument("--n", type=int, default=2, help="Dimension of generated inputs")
    verify_parser.add_argument("--seed", type=int, default=None, help="Seed (FUNCVAL_SEED wins)")
    verify_parser.add_argument("--tol", type=float, default=None, help="Override the suite tolerance")
    verify_parser.add_argument("--trials", type=int, default=settings.default_trials, help="Random trials")
    verify_parser.add_argument("--out", default=None, help="Report path; stdout when absent")
    verify_parser.add_argument("--format", default=ReportFormat.JSON.value,
                               choices=[f.value for f in ReportFormat], help="Report format")

    eval_parser = commands.add_parser("eval", help="Evaluate Z on a function")
    eval_parser.add_argument("--fn", required=True, help="JSON function file")
    eval_parser.add_argument("--spec", required=True, help="JSON valuation spec file")
    eval_parser.add_argument("--out", default=None, help="Output path; stdout when absent")

    table_parser = commands.add_parser("table", help="Growth function table as CSV")
    table_parser.add_argument("--spec", required=True, help="JSON valuation spec file")
    table_parser.add_argument("--tgrid", required=True, help="Comma-separated t values")
    table_parser.add_argument("--out", default=None, help="Output path; stdout when absent")
    return parser


def suite_config(args: argparse.Namespace) -> SuiteConfig:
    """
    Validated SuiteConfig from parsed arguments

    Raises:
        UsageError: Unknown suite name or out-of-range option
    """
    try:
        suite = SuiteName(args.suite)
    except ValueError:
        names = ", ".join(s.value for s in SuiteName)
        raise UsageError(f"unknown suite {args.suite!r}; choose one of {names}")
    try:
        return SuiteConfig(
            suite=suite,
            n=args.n,
            seed=resolve_seed(args.seed),
            trials=args.trials,
            tol=args.tol,
            out=args.out,
            format=ReportFormat(args.format),
        )
    except ValidationError as e:
        first = e.errors()[0]
        option = ".".join(str(p) for p in first["loc"])
        raise UsageError(f"--{option}: {first['msg']}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI

    Args:
        argv: Arguments without the program name; sys.argv[1:] when None

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        if args.command == "verify":
            return verify(suite_config(args))
        if args.command == "eval":
            return evaluate(args.fn, args.spec, args.out)
        return table(args.spec, args.tgrid, args.out)

    except FuncvalError as e:
        print(f"funcval: error: {e.message}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"funcval: error: {e}", file=sys.stderr)
        return 1
    except Exception as e:
        logger.error(f"Command '{args.command}' failed: {e}", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
