"""
Instance Text Format

    semicomplete <n> [weighted]
    <n rows of n characters, '1' = arc present, row u column v = arc (u,v)>
    <if weighted: one line "u v w" per arc>

UTF-8, '#' starts a comment, blank lines are ignored. Weights written as
integers or "p/q" are read exactly (int / Fraction); decimal weights are
read as floats and compared with the configured tolerance (1e-9 by
default). The writer is deterministic: rows in vertex order, weight lines in
lexicographic arc order.
"""

import logging
import re
from fractions import Fraction
from typing import Iterator

import numpy as np

from semicut.exceptions import ParseError
from semicut.services.digraph.digraph_service import (
    Arc,
    SemiCompleteDigraph,
    Weight,
    validate,
)

logger = logging.getLogger(__name__)

HEADER_KEYWORD = "semicomplete"
WEIGHTED_KEYWORD = "weighted"

_INT_RE = re.compile(r"^[+]?\d+$")
_RATIONAL_RE = re.compile(r"^[+]?\d+/\d+$")


def _content_lines(text: str) -> Iterator[tuple[int, str, int]]:
    """Yield (line number, stripped content, column offset) of non-blank lines."""
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        stripped = content.strip()
        if stripped:
            yield number, stripped, len(content) - len(content.lstrip()) + 1


def parse_weight(token: str, line: int = 0, column: int = 1) -> Weight:
    """Parse a weight token: integer, p/q rational, or decimal."""
    try:
        if _INT_RE.match(token):
            return int(token)
        if _RATIONAL_RE.match(token):
            value = Fraction(token)
            return value.numerator if value.denominator == 1 else value
        value = float(token)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"invalid weight {token!r}", line, column) from e
    if value != value or value in (float("inf"), float("-inf")):
        raise ParseError(f"invalid weight {token!r}", line, column)
    return value


def format_weight(w: Weight) -> str:
    if isinstance(w, Fraction):
        return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
    if isinstance(w, float):
        return repr(w)
    return str(w)


def read_digraph(text: str) -> SemiCompleteDigraph:
    """
    Parse an instance from the text format.

    Raises:
        ParseError: with the 1-based line and column of the offending token
        InvalidInstanceError: when the parsed matrix violates semi-completeness
    """
    lines = _content_lines(text)

    try:
        line_no, header, col = next(lines)
    except StopIteration:
        raise ParseError("missing header 'semicomplete <n> [weighted]'", 1, 1) from None

    fields = header.split()
    if fields[0] != HEADER_KEYWORD:
        raise ParseError(f"expected '{HEADER_KEYWORD}', got {fields[0]!r}", line_no, col)
    if len(fields) not in (2, 3) or (len(fields) == 3 and fields[2] != WEIGHTED_KEYWORD):
        raise ParseError("header must read 'semicomplete <n> [weighted]'", line_no, col)
    if not _INT_RE.match(fields[1]):
        raise ParseError(f"vertex count must be a non-negative integer, got {fields[1]!r}", line_no, col)
    n = int(fields[1])
    weighted = len(fields) == 3

    matrix = np.zeros((n, n), dtype=bool)
    for u in range(n):
        try:
            line_no, row, col = next(lines)
        except StopIteration:
            raise ParseError(f"expected {n} matrix rows, got {u}", line_no + 1, 1) from None
        if len(row) != n:
            raise ParseError(f"row {u} has {len(row)} entries, expected {n}", line_no, col)
        for v, ch in enumerate(row):
            if ch not in "01":
                raise ParseError(f"unexpected character {ch!r} in matrix row", line_no, col + v)
            matrix[u, v] = ch == "1"

    weights: dict[Arc, Weight] | None = {} if weighted else None
    for line_no, content, col in lines:
        if weights is None:
            raise ParseError("trailing content after matrix of an unweighted instance", line_no, col)
        parts = content.split()
        if len(parts) != 3:
            raise ParseError("weight line must read 'u v w'", line_no, col)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("arc endpoints must be integers", line_no, col) from None
        if (u, v) in weights:
            raise ParseError(f"duplicate weight for arc ({u},{v})", line_no, col)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"arc ({u},{v}) is out of range", line_no, col)
        weights[(u, v)] = parse_weight(parts[2], line_no, col + content.rfind(parts[2]))

    if weights is not None:
        missing = [(int(u), int(v)) for u, v in zip(*np.nonzero(matrix)) if (int(u), int(v)) not in weights]
        if missing:
            u, v = missing[0]
            raise ParseError(f"arc ({u},{v}) has no weight line", line_no + 1, 1)

    return validate(matrix, weights)


def write_digraph(T: SemiCompleteDigraph) -> str:
    """Serialise an instance; read_digraph(write_digraph(T)) == T."""
    header = f"{HEADER_KEYWORD} {T.n}" + (f" {WEIGHTED_KEYWORD}" if T.is_weighted else "")
    out = [header]
    out.extend("".join("1" if x else "0" for x in row) for row in T.arcs)
    if T.weights is not None:
        out.extend(f"{u} {v} {format_weight(w)}" for (u, v), w in sorted(T.weights.items()))
    return "\n".join(out) + "\n"
