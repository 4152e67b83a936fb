"""Plain-text jet tables.

    # comments start with '#'
    1 2                 header: n m [divided]
    0    0 0 2          one row per point: n coordinates, then the F_alpha
    1/2  1/4 1 2        in graded lexicographic alpha order

The header may end with the word ``divided`` for divided-power tables.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError, UsageError
from .jets import DERIVATIVE, DIVIDED, Jet, PointSet, multi_indices

_NUM = re.compile(r"^-?\d+(/\d+)?$")


def _fields(line: str):
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _number(tok: str, lineno: int, col: int) -> Fraction:
    if not _NUM.match(tok):
        raise ParseError(f"expected a rational number, found {tok!r}", lineno, col)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError("zero denominator", lineno, col) from None


def parse_jet_table(text: str) -> Jet:
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        fields = _fields(line)
        if not fields:
            continue
        if header is None:
            if len(fields) not in (2, 3) or not all(f[0].isdigit() for f in fields[:2]):
                raise ParseError("expected header '<n> <m> [divided]'", lineno, fields[0][1])
            mode = DERIVATIVE
            if len(fields) == 3:
                if fields[2][0] != DIVIDED:
                    raise ParseError(f"unknown header flag {fields[2][0]!r}", lineno, fields[2][1])
                mode = DIVIDED
            n, m = int(fields[0][0]), int(fields[1][0])
            if n < 1:
                raise ParseError("dimension must be at least 1", lineno, fields[0][1])
            header = (n, m, mode)
            width = n + len(multi_indices(m, n))
            continue
        if len(fields) != width:
            col = fields[min(len(fields), width) - 1][1] if len(fields) > width else len(line.rstrip()) + 1
            raise ParseError(f"expected {width} numbers ({n} coordinates + {width - n} jet values), found {len(fields)}", lineno, col)
        nums = [_number(tok, lineno, col) for tok, col in fields]
        rows.append((lineno, tuple(nums[:n]), nums[n:]))
    if header is None:
        raise ParseError("empty jet table", 1, 1)
    n, m, mode = header
    if not rows:
        raise ParseError("jet table has no points", 1, 1)
    idx = multi_indices(m, n)
    seen = {}
    for lineno, p, _ in rows:
        if p in seen:
            raise ParseError(f"point {tuple(str(c) for c in p)} repeats line {seen[p]}", lineno, 1)
        seen[p] = lineno
    try:
        X = PointSet([p for _, p, _ in rows])
    except UsageError as exc:
        raise ParseError(str(exc), rows[0][0], 1) from None
    values = {p: dict(zip(idx, vals)) for _, p, vals in rows}
    return Jet(X, m, values, mode)


def format_jet_table(F: Jet) -> str:
    from ..expr import format_fraction

    idx = multi_indices(F.m, F.n)
    lines = [f"# alpha order: {' '.join(''.join(map(str, a)) for a in idx)}"]
    lines.append(f"{F.n} {F.m}" + (f" {DIVIDED}" if F.mode == DIVIDED else ""))
    for p in F.points:
        cells = [format_fraction(c) for c in p] + [format_fraction(F.values[p][a]) for a in idx]
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"
