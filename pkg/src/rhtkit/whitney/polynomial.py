"""Sparse multivariate polynomials over Q."""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Sequence

from ..errors import UsageError

Exps = tuple  # exponent vector


def _add(acc: dict, k, c):
    v = acc.get(k, 0) + c
    if v:
        acc[k] = v
    else:
        acc.pop(k, None)


class Polynomial:
    """Polynomial in ``x1..xn`` stored as ``{exponents: Fraction}`` without zero terms."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exps, object] | None = None):
        self.n = n
        clean: dict = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            _add(clean, e, Fraction(c))
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def constant(cls, n: int, c=1) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        """``x_i`` with ``i`` counted from 1."""
        if not 1 <= i <= n:
            raise UsageError(f"no variable x{i} among {n}")
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def parse(cls, n: int, text: str) -> "Polynomial":
        """Parse ``text`` in the variables ``x1..xn`` (``x`` is accepted when ``n = 1``)."""
        from ..expr import parse_expression

        return parse_expression(text, _Ring(n))

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise UsageError(f"polynomials in {self.n} and {other.n} variables")
            return other
        return Polynomial.constant(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _add(out, e, c)
        return Polynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    # -- calculus --------------------------------------------------------------
    def derivative(self, alpha: Sequence[int]) -> "Polynomial":
        """``∂^alpha``."""
        out: dict = {}
        for e, c in self.terms.items():
            if any(a > x for a, x in zip(alpha, e)):
                continue
            coef = c
            for a, x in zip(alpha, e):
                coef *= factorial(x) // factorial(x - a)
            _add(out, tuple(x - a for a, x in zip(alpha, e)), coef)
        return Polynomial(self.n, out)

    def partial(self, i: int) -> "Polynomial":
        """``∂/∂x_i`` with ``i`` counted from 1."""
        alpha = [0] * self.n
        alpha[i - 1] = 1
        return self.derivative(alpha)

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.n:
            raise UsageError(f"point of dimension {len(point)} for {self.n} variables")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def shift(self, center: Sequence, sign: int = 1) -> "Polynomial":
        """The polynomial ``p(x + sign * center)``."""
        out = Polynomial.constant(self.n, 0)
        for e, c in self.terms.items():
            term = Polynomial.constant(self.n, c)
            for i, k in enumerate(e):
                if k:
                    lin = Polynomial.variable(self.n, i + 1) + sign * Fraction(center[i])
                    term = term * lin ** k
            out = out + term
        return out

    def __str__(self):
        from ..expr import format_fraction

        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}") for i, k in enumerate(e) if k
            )
            mag = abs(c)
            body = format_fraction(mag) if not mono else (mono if mag == 1 else f"{format_fraction(mag)}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({self.n}, {self})"


class _Ring:
    """Adapter giving the expression parser access to polynomial variables."""

    def __init__(self, n: int):
        self.n = n
        self.index = {f"x{i}": i for i in range(1, n + 1)}
        if n == 1:
            self.index["x"] = 1

    def scalar(self, c):
        return Polynomial.constant(self.n, c)

    def gen(self, name):
        return Polynomial.variable(self.n, self.index[name])


def binomial_multi(alpha: Sequence[int], beta: Sequence[int]) -> int:
    out = 1
    for a, b in zip(alpha, beta):
        out *= comb(a, b)
    return out


def multi_factorial(alpha: Sequence[int]) -> int:
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


def random_polynomial(n: int, max_degree: int, rng: random.Random, terms: int = 4, coef: int = 5) -> Polynomial:
    out: dict = {}
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(n)] += 1
        _add(out, tuple(e), Fraction(rng.randint(-coef, coef)))
    return Polynomial(n, out)
