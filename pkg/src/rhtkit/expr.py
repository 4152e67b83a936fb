"""Text formats for presentations and algebra elements.

Presentation files are line oriented::

    # the minimal model of S^2
    name S2
    generator x deg 2
    generator y deg 3
    d y = x^2
    relation x^3            (optional, any number)
    truncate 10
    bound 4                 (only for degree-0 generators)

Expressions use ``+ - * ^``, parentheses and rational literals ``p/q``.
Products are taken in the written order, so ``y*x`` picks up the Koszul sign.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1
            while col <= len(text) and text[col - 1].isspace():
                col += 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", column=col)
        kind = m.lastgroup
        start = m.start(kind) + 1
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text, algebra):
        self.toks = _tokenize(text)
        self.i = 0
        self.alg = algebra

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", column=t[2])
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r}", column=t[2])
        return e

    def expr(self):
        e = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self):
        e = self.unary()
        while self.peek()[1] == "*":
            self.take()
            e = e * self.unary()
        return e

    def unary(self):
        t = self.peek()
        if t[1] == "-":
            self.take()
            return -self.unary()
        if t[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num":
                raise ParseError("exponent must be a non-negative integer", column=t[2])
            base = base ** int(t[1])
        return base

    def atom(self):
        t = self.take()
        kind, val, col = t
        if kind == "num":
            num = int(val)
            if self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError("denominator must be an integer literal", column=d[2])
                if int(d[1]) == 0:
                    raise ParseError("zero denominator", column=d[2])
                return self.alg.scalar(Fraction(num, int(d[1])))
            return self.alg.scalar(num)
        if kind == "name":
            if val not in self.alg.index:
                raise ParseError(f"unknown generator {val!r}", column=col)
            return self.alg.gen(val)
        if val == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {val or 'end of input'!r}", column=col)


def parse_expression(text: str, algebra):
    """Parse ``text`` into an element of ``algebra``."""
    return _Parser(text, algebra).parse()


def format_fraction(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(alg, m) -> str:
    parts = []
    for g, e in zip(alg.generators, m):
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return "*".join(parts)


def format_element(a) -> str:
    if not a.terms:
        return "0"
    out = []
    for m in sorted(a.terms, key=lambda m: (a.algebra.mono_degree(m), m), reverse=True):
        c = a.terms[m]
        mono = format_monomial(a.algebra, m)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = format_fraction(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_fraction(mag)}*{mono}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def format_presentation(p) -> str:
    lines = []
    if p.name:
        lines.append(f"name {p.name}")
    for g in p.generators:
        lines.append(f"generator {g.name} deg {g.degree}")
    for g in p.generators:
        dg = p.d_of(g.name)
        if not dg.is_zero():
            lines.append(f"d {g.name} = {format_element(dg)}")
    for r in p.relations:
        lines.append(f"relation {format_element(r)}")
    lines.append(f"truncate {p.truncation}")
    if p.poly_degree_bound is not None:
        lines.append(f"bound {p.poly_degree_bound}")
    return "\n".join(lines) + "\n"


_GEN_LINE = re.compile(r"^generator\s+(\S+)\s+deg\s+(-?\d+)\s*$")
_D_LINE = re.compile(r"^d\s+(\S+)\s*=(.*)$")
_KEYWORD = re.compile(r"^(\w+)")


def parse_presentation(text: str):
    """Parse a presentation file; runs the full validation (including ``d^2 = 0``)."""
    from .cdga import CdgaPresentation

    gens = []
    seen = {}
    d_lines = []
    rel_lines = []
    truncation = None
    bound = None
    name = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        if not line:
            continue
        kw = _KEYWORD.match(line)
        key = kw.group(1) if kw else ""
        if key == "generator":
            m = _GEN_LINE.match(line)
            if not m:
                raise ParseError("expected 'generator <name> deg <k>'", lineno, indent + 1)
            gname, deg = m.group(1), int(m.group(2))
            if gname in seen:
                raise ParseError(f"generator {gname} declared twice", lineno, indent + 1)
            seen[gname] = deg
            gens.append((gname, deg))
        elif key == "d":
            m = _D_LINE.match(line)
            if not m:
                raise ParseError("expected 'd <name> = <expression>'", lineno, indent + 1)
            col = indent + m.start(2) + 1
            d_lines.append((lineno, col, m.group(1), m.group(2)))
        elif key == "relation":
            body = line[len("relation"):]
            rel_lines.append((lineno, indent + len("relation") + 1, body))
        elif key in ("truncate", "bound"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"expected '{key} <non-negative integer>'", lineno, indent + 1)
            if key == "truncate":
                truncation = int(parts[1])
            else:
                bound = int(parts[1])
        elif key == "name":
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise ParseError("expected 'name <text>'", lineno, indent + 1)
            name = parts[1].strip()
        else:
            raise ParseError(f"unknown directive {key or line[:1]!r}", lineno, indent + 1)

    scratch = CdgaPresentation(gens, truncation=truncation or 0, validate=False)

    def expr(lineno, col, body):
        try:
            return parse_expression(body, scratch)
        except ParseError as exc:
            c = None if exc.column is None else col + exc.column - 1
            raise ParseError(str(exc).split(": ", 1)[-1], lineno, c) from None

    diff = {}
    for lineno, col, gname, body in d_lines:
        if gname not in seen:
            raise ParseError(f"d of undeclared generator {gname}", lineno, 3)
        if gname in diff:
            raise ParseError(f"differential of {gname} given twice", lineno, 1)
        diff[gname] = dict(expr(lineno, col, body).terms)
    rels = [dict(expr(lineno, col, body).terms) for lineno, col, body in rel_lines]
    if truncation is None:
        truncation = 10
    return CdgaPresentation(
        gens, diff, rels, truncation=truncation, poly_degree_bound=bound, name=name
    )
