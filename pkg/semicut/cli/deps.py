"""
Shared command dependencies: instance loading, output, budgets and timing.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from semicut.config import get_settings
from semicut.exceptions import InvalidParameterError, IOFailureError, ParseError
from semicut.services.digraph import SemiCompleteDigraph, Weight, read_digraph
from semicut.services.digraph.format_service import parse_weight

logger = logging.getLogger(__name__)

# Exit-code contract
EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def load_instance(path: str) -> tuple[SemiCompleteDigraph, str]:
    """
    Read an instance file ("-" for stdin).

    Returns:
        (instance, label used in reports)

    Raises:
        IOFailureError: the file cannot be read
        ParseError / InvalidInstanceError: the content is not a valid instance
    """
    if path == "-":
        return read_digraph(sys.stdin.read()), "-"
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise IOFailureError(path, str(e)) from e
    logger.debug(f"Loaded instance from {path}")
    return read_digraph(text), path


def emit(text: str, out: Optional[str] = None) -> None:
    """Write text to a file, or to stdout when out is None or "-"."""
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as e:
        raise IOFailureError(out, str(e)) from e
    logger.info(f"Wrote {out}")


def parse_budget(text: str, weighted: bool) -> Weight:
    """Unweighted budgets are integers; weighted ones may be rationals or decimals."""
    if not weighted:
        try:
            return int(text)
        except ValueError:
            raise InvalidParameterError(f"k must be an integer, got {text!r}") from None
    try:
        return parse_weight(text.strip())
    except ParseError as e:
        raise InvalidParameterError(f"k must be a number, got {text!r}") from e


def timings_enabled(args: argparse.Namespace) -> bool:
    return get_settings().record_timings and not getattr(args, "no_timing", False)
