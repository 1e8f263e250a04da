import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from semicut.cli import bench, count_cuts, gen, solve
from semicut.cli.deps import EXIT_ERROR
from semicut.config import Settings, get_settings
from semicut.exceptions import SemicutError

logger = logging.getLogger("semicut")


def configure_logging(level: str) -> None:
    """Log to stderr so stdout carries only command output."""
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def init_sentry(settings: Settings) -> None:
    if not settings.sentry_dsn:
        return
    try:
        import sentry_sdk

        sentry_sdk.init(
            dsn=settings.sentry_dsn,
            environment=settings.sentry_environment,
            traces_sample_rate=1.0 if settings.debug else 0.2,
        )
        logger.info(f"Sentry initialized for environment: {settings.sentry_environment}")
    except ImportError:
        logger.warning("sentry-sdk not installed. Error monitoring disabled.")
    except Exception as e:
        logger.warning(f"Sentry initialization failed: {e}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timing", action="store_true", help="write 0 for every wall time")

    parser = argparse.ArgumentParser(
        prog="semicut",
        description="Exact FAS, cutwidth and OLA on semi-complete digraphs via k-cut enumeration",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (gen, solve, count_cuts, bench):
        command.register(subparsers, [common])
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and dispatch a command.

    Returns:
        0 yes / success, 1 no, 2 usage, parse or validation error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR

    try:
        settings = get_settings()
    except ValidationError as e:
        print(f"semicut: invalid configuration: {e}", file=sys.stderr)
        return EXIT_ERROR

    configure_logging("DEBUG" if settings.debug else settings.log_level)
    init_sentry(settings)

    try:
        return args.handler(args)
    except SemicutError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"semicut {args.command}: {e}", file=sys.stderr)
        return EXIT_ERROR
