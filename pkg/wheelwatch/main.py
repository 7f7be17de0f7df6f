from __future__ import annotations

import logging
import sys
import time
from typing import Sequence

from wheelwatch.cli.commands import COMMANDS, EXIT_ERROR, EXIT_NOT_FOUND
from wheelwatch.cli.parser import build_parser
from wheelwatch.cli.report import ReportService, RunReport
from wheelwatch.core.errors import CertificateError, CommandTimeout, WheelWatchError

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Sequence[str] | None = None) -> int:
    arguments = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(arguments)
    configure_logging(args.verbose)

    report = RunReport(command=["wheelwatch", *arguments], answer="error", exit_code=EXIT_ERROR)
    started = time.monotonic()
    try:
        exit_code = COMMANDS[args.command](args, report)
    except CommandTimeout as exc:
        report.answer = "timeout"
        exit_code = EXIT_ERROR
        print(f"error: {exc}", file=sys.stderr)
    except CertificateError as exc:
        report.answer = "invalid"
        report.details["violation"] = str(exc)
        exit_code = EXIT_NOT_FOUND if args.command == "verify" else EXIT_ERROR
        print(f"error: {exc}", file=sys.stderr)
    except (WheelWatchError, OSError) as exc:
        exit_code = EXIT_ERROR
        report.details["error"] = str(exc)
        print(f"error: {exc}", file=sys.stderr)
    report.wall_time = round(time.monotonic() - started, 6)
    report.exit_code = exit_code

    if args.report is not None:
        try:
            ReportService().write(report, args.report)
        except OSError as exc:
            print(f"error: could not write report: {exc}", file=sys.stderr)
            return EXIT_ERROR
    logger.debug("%s finished with exit code %s in %.3fs", args.command, exit_code, report.wall_time)
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
