"""Jets of finite order on finite point sets.

A jet of order ``m`` assigns to each point ``x`` and each multi-index
``alpha`` with ``|alpha| <= m`` a rational number.  In ``derivative`` mode
the entries stand for ``∂^alpha f(x)``; in ``divided`` mode for
``∂^alpha f(x) / alpha!``.  Multi-indices are always listed in graded
lexicographic order: by ``|alpha|``, then lexicographically descending, so
``(1, 0)`` precedes ``(0, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from ..errors import MembershipError, UsageError
from .polynomial import Polynomial, binomial_multi, multi_factorial

DERIVATIVE = "derivative"
DIVIDED = "divided"


@lru_cache(maxsize=None)
def multi_indices(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """``N(m, n)`` in graded lexicographic order."""
    out = []
    for total in range(m + 1):
        out.extend(_exact(total, n))
    return tuple(out)


def _exact(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exact(total - first, n - 1):
            yield (first,) + rest


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


class PointSet:
    """Finite, duplicate-free list of points of ``Q^n``."""

    def __init__(self, points: Sequence[Sequence]):
        pts = [tuple(Fraction(c) for c in p) for p in points]
        if not pts:
            raise UsageError("a point set must not be empty")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise UsageError("points of different dimensions")
        if len(set(pts)) != len(pts):
            raise UsageError("duplicate points")
        self.points = tuple(pts)
        self.n = n
        self._index = {p: i for i, p in enumerate(pts)}

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return _point(p) in self._index

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"PointSet({[tuple(str(c) for c in p) for p in self.points]})"

    def subset(self, points) -> "PointSet":
        pts = [_point(p) for p in points]
        for p in pts:
            if p not in self._index:
                raise MembershipError(f"{p} is not in the point set")
        return PointSet(pts)


def _point(p) -> tuple:
    return tuple(Fraction(c) for c in p)


@dataclass(frozen=True, eq=False)
class Jet:
    points: PointSet
    m: int
    values: Mapping[tuple, Mapping[tuple, Fraction]]  # point -> alpha -> value
    mode: str = DERIVATIVE

    def __post_init__(self):
        if self.mode not in (DERIVATIVE, DIVIDED):
            raise UsageError(f"unknown jet mode {self.mode!r}")
        idx = multi_indices(self.m, self.points.n)
        clean = {}
        for p in self.points:
            row = self.values.get(p)
            if row is None:
                raise UsageError(f"no jet entries at {p}")
            missing = [a for a in idx if a not in row]
            if missing:
                raise UsageError(f"jet entry for alpha={missing[0]} missing at {p}")
            clean[p] = {a: Fraction(row[a]) for a in idx}
        object.__setattr__(self, "values", clean)

    @property
    def n(self) -> int:
        return self.points.n

    def at(self, x, alpha) -> Fraction:
        x = _point(x)
        if x not in self.values:
            raise MembershipError(f"{x} is not in the point set")
        return self.values[x][tuple(alpha)]

    def row(self, x) -> list[Fraction]:
        x = _point(x)
        if x not in self.values:
            raise MembershipError(f"{x} is not in the point set")
        return [self.values[x][a] for a in multi_indices(self.m, self.n)]

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return (
            self.points == other.points
            and self.m == other.m
            and self.mode == other.mode
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.points, self.m, self.mode))

    def _check(self, other: "Jet"):
        if self.points != other.points or self.m != other.m or self.mode != other.mode:
            raise UsageError("jets live on different point sets, orders or modes")

    def __add__(self, other: "Jet") -> "Jet":
        self._check(other)
        vals = {p: {a: v + other.values[p][a] for a, v in row.items()} for p, row in self.values.items()}
        return Jet(self.points, self.m, vals, self.mode)

    def __sub__(self, other: "Jet") -> "Jet":
        return self + other.scale(-1)

    def scale(self, c) -> "Jet":
        c = Fraction(c)
        vals = {p: {a: c * v for a, v in row.items()} for p, row in self.values.items()}
        return Jet(self.points, self.m, vals, self.mode)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.values.values() for v in row.values())


def zero_jet(X: PointSet, m: int, mode: str = DERIVATIVE) -> Jet:
    idx = multi_indices(m, X.n)
    return Jet(X, m, {p: {a: 0 for a in idx} for p in X}, mode)


def jet_of(f: Polynomial, X: PointSet, m: int, mode: str = DERIVATIVE) -> Jet:
    """``(∂^alpha f(x))`` for ``x`` in ``X``, ``|alpha| <= m`` (divided by ``alpha!`` in divided mode)."""
    if f.n != X.n:
        raise UsageError(f"polynomial in {f.n} variables on points of dimension {X.n}")
    vals = {p: {} for p in X}
    for a in multi_indices(m, X.n):
        da = f.derivative(a)
        div = multi_factorial(a) if mode == DIVIDED else 1
        for p in X:
            vals[p][a] = da(p) / div
    return Jet(X, m, vals, mode)


def to_divided(F: Jet) -> Jet:
    """Intertwiner ``F_alpha -> F_alpha / alpha!``."""
    if F.mode == DIVIDED:
        return F
    vals = {p: {a: v / multi_factorial(a) for a, v in row.items()} for p, row in F.values.items()}
    return Jet(F.points, F.m, vals, DIVIDED)


def to_derivative(F: Jet) -> Jet:
    if F.mode == DERIVATIVE:
        return F
    vals = {p: {a: v * multi_factorial(a) for a, v in row.items()} for p, row in F.values.items()}
    return Jet(F.points, F.m, vals, DERIVATIVE)


def jet_product(F: Jet, G: Jet) -> Jet:
    """Product of jets.

    In derivative mode ``H_alpha = sum (alpha choose beta) F_beta G_(alpha-beta)``
    (the Leibniz rule); in divided mode the coefficient-free
    ``H_alpha = sum_(beta+gamma=alpha) F_beta G_gamma``.
    """
    F._check(G)
    idx = multi_indices(F.m, F.n)
    vals = {}
    for p in F.points:
        fr, gr = F.values[p], G.values[p]
        row = {}
        for a in idx:
            acc = Fraction(0)
            for b in idx:
                if sum(b) > sum(a):
                    break
                if not _leq(b, a):
                    continue
                term = fr[b] * gr[_sub(a, b)]
                if term and F.mode == DERIVATIVE:
                    term *= binomial_multi(a, b)
                acc += term
            row[a] = acc
        vals[p] = row
    return Jet(F.points, F.m, vals, F.mode)


def project(F: Jet, k: int) -> Jet:
    """``P_(k,m)``: keep the entries with ``|alpha| <= k``."""
    if not 0 <= k <= F.m:
        raise UsageError(f"order {k} outside 0..{F.m}")
    idx = multi_indices(k, F.n)
    return Jet(F.points, k, {p: {a: row[a] for a in idx} for p, row in F.values.items()}, F.mode)


MIRRORED = "mirrored"
CLASSICAL = "classical"


def taylor_poly(F: Jet, x, k: int, convention: str = MIRRORED) -> Polynomial:
    """``T^k_x F``: ``y -> sum F_alpha(x) (x - y)^alpha / alpha!``.

    ``convention="classical"`` uses ``(y - x)^alpha`` instead; the two agree
    on even ``|alpha|`` and differ by a sign on odd ``|alpha|``.
    """
    if convention not in (MIRRORED, CLASSICAL):
        raise UsageError(f"unknown Taylor convention {convention!r}")
    if not 0 <= k <= F.m:
        raise UsageError(f"order {k} outside 0..{F.m}")
    x = _point(x)
    if x not in F.values:
        raise MembershipError(f"{x} is not in the point set")
    F = to_derivative(F)
    n = F.n
    s = -1 if convention == MIRRORED else 1
    # (x - y) = -(y - x): build in powers of (y - x), then flip odd terms
    lin = [Polynomial.variable(n, i + 1) - x[i] for i in range(n)]
    out = Polynomial.constant(n, 0)
    for a in multi_indices(k, n):
        c = F.values[x][a]
        if not c:
            continue
        term = Polynomial.constant(n, c / multi_factorial(a) * (s ** sum(a)))
        for i, e in enumerate(a):
            if e:
                term = term * lin[i] ** e
        out = out + term
    return out


def remainder(F: Jet, x, k: int, convention: str = CLASSICAL) -> Jet:
    """``R^k_x F = P_(k,m) F - J^k(T^k_x F)``."""
    T = taylor_poly(F, x, k, convention)
    P = project(to_derivative(F), k)
    R = P - jet_of(T, F.points, k)
    return to_divided(R) if F.mode == DIVIDED else R


def r_entry(F: Jet, beta, x, y, convention: str = CLASSICAL) -> Fraction:
    """``r_(F,beta)(x, y) = (R^m_x F)_beta(y)``."""
    R = remainder(to_derivative(F), x, F.m, convention)
    return R.at(y, beta)


def _check_subset(F: Jet, K) -> list[tuple]:
    pts = [_point(p) for p in (K.points if isinstance(K, PointSet) else K)]
    if not pts:
        raise UsageError("the compact set K must not be empty")
    for p in pts:
        if p not in F.values:
            raise MembershipError(f"{p} is not in the point set")
    return pts


def seminorm_flat(F: Jet, K, k: int) -> Fraction:
    """``|F|_(K,k) = max |F_beta(x)|`` over ``x`` in ``K``, ``|beta| <= k``."""
    pts = _check_subset(F, K)
    if not 0 <= k <= F.m:
        raise UsageError(f"order {k} outside 0..{F.m}")
    idx = multi_indices(k, F.n)
    return max(abs(F.values[p][b]) for p in pts for b in idx)


def seminorm_whitney(F: Jet, K, k: int, convention: str = CLASSICAL) -> Fraction:
    """``||F||_(K,k) = |F|_(K,k) + max |r_(F,beta)(x, y)|`` over ``K x K``, ``|beta| <= k``."""
    pts = _check_subset(F, K)
    flat = seminorm_flat(F, K, k)
    idx = multi_indices(k, F.n)
    D = to_derivative(F)
    worst = Fraction(0)
    for x in pts:
        R = remainder(D, x, F.m, convention)
        for y in pts:
            for b in idx:
                worst = max(worst, abs(R.values[y][b]))
    return flat + worst


# ---------------------------------------------------------------------------
# rate diagnostics


def max_norm(x, y) -> Fraction:
    return max(abs(a - b) for a, b in zip(x, y))


def dyadic_scale(r: Fraction) -> int:
    """The integer ``j`` with ``2^j <= r < 2^(j+1)``, computed exactly."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("scale of a non-positive number")
    j = r.numerator.bit_length() - r.denominator.bit_length()
    while Fraction(2) ** j > r:
        j -= 1
    while Fraction(2) ** (j + 1) <= r:
        j += 1
    return j


@dataclass
class RateBucket:
    scale: int  # distances in [2^scale, 2^(scale+1))
    pairs: int
    max_ratio: Fraction


@dataclass
class RateReport:
    beta: tuple
    order: int
    buckets: list[RateBucket]  # finest scale first
    slopes: list[Fraction]  # diagnostic log-log slopes between consecutive buckets
    verdict: str  # "consistent", "violation" or "insufficient"
    note: str = "diagnostic only: finite samples cannot prove a little-o condition"


def whitney_rate_check(F: Jet, m: int | None = None, beta=None, K=None, convention: str = CLASSICAL) -> RateReport:
    """Ratios ``|r_(F,beta)(x,y)| / |x-y|^(m-|beta|)`` bucketed by dyadic distance scale.

    Distances use the max norm, so every ratio is an exact rational.  The
    verdict is ``consistent`` when the bucket maxima do not increase as the
    scale shrinks and the finest bucket lies strictly below the coarsest (or
    every ratio is zero), ``violation`` otherwise, and ``insufficient`` when
    fewer than two distance scales occur.
    """
    m = F.m if m is None else m
    if m > F.m:
        raise UsageError(f"order {m} exceeds the jet order {F.m}")
    beta = tuple(beta) if beta is not None else (0,) * F.n
    if sum(beta) > m:
        raise UsageError(f"|beta| = {sum(beta)} exceeds m = {m}")
    pts = _check_subset(F, K if K is not None else F.points)
    G = project(to_derivative(F), m)
    power = m - sum(beta)
    buckets: dict[int, list] = {}
    for x in pts:
        R = remainder(G, x, m, convention)
        for y in pts:
            if x == y:
                continue
            dist = max_norm(x, y)
            ratio = abs(R.values[y][beta]) / dist ** power
            buckets.setdefault(dyadic_scale(dist), []).append(ratio)
    rows = [RateBucket(s, len(v), max(v)) for s, v in sorted(buckets.items())]
    slopes = []
    for a, b in zip(rows, rows[1:]):
        if a.max_ratio > 0 and b.max_ratio > 0:
            val = math.log(b.max_ratio / a.max_ratio) / (math.log(2) * (b.scale - a.scale))
            slopes.append(Fraction(val).limit_denominator(1000))
        else:
            slopes.append(None)
    if len(rows) < 2:
        verdict = "insufficient"
    elif all(r.max_ratio == 0 for r in rows):
        verdict = "consistent"
    else:
        monotone = all(a.max_ratio <= b.max_ratio for a, b in zip(rows, rows[1:]))
        verdict = "consistent" if monotone and rows[0].max_ratio < rows[-1].max_ratio else "violation"
    return RateReport(beta, m, rows, slopes, verdict)
