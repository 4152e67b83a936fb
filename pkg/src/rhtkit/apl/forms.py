"""Polynomial differential forms on standard simplices.

``A_PL,n`` is presented in canonical coordinates: ``t_0`` and ``y_0`` are
eliminated through ``t_0 = 1 - (t_1 + ... + t_n)`` and
``y_0 = -(y_1 + ... + y_n)``, leaving the free algebra on ``t_1..t_n``
(degree 0) and ``y_1..y_n`` (degree 1) with ``d t_i = y_i``.  Truncation is
by word length (polynomial degree plus form degree), which ``d``, faces and
degeneracies never increase.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .. import graded
from ..cdga import CdgaMorphism, CdgaPresentation, Element
from ..errors import DegreeRangeError, UsageError


@lru_cache(maxsize=None)
def apl_algebra(n: int, bound: int | None = None) -> CdgaPresentation:
    """Canonical presentation of ``A_PL,n``; ``bound`` caps the word length of basis monomials."""
    gens = [(f"t{i}", 0) for i in range(1, n + 1)] + [(f"y{i}", 1) for i in range(1, n + 1)]
    diff = {f"t{i}": f"y{i}" for i in range(1, n + 1)}
    return CdgaPresentation(
        gens, diff, truncation=n + 1, poly_degree_bound=bound, name=f"A_PL,{n}"
    )


@dataclass(frozen=True, eq=False)
class PolyForm:
    """A polynomial form on the standard ``n``-simplex."""

    n: int
    element: Element

    def __post_init__(self):
        if not apl_algebra(self.n).compatible(self.element.algebra):
            raise UsageError(f"element does not live in A_PL,{self.n}")

    @classmethod
    def parse(cls, n: int, text: str) -> "PolyForm":
        """Parse an expression in ``t0..tn``, ``y0..yn`` (``t0``/``y0`` are eliminated)."""
        alg = apl_algebra(n)
        subs = {"t0": str(t(n, 0).element), "y0": str(y(n, 0).element)}
        for name, expr in subs.items():
            text = _replace_name(text, name, f"({expr})")
        return cls(n, alg.element(text))

    @classmethod
    def constant(cls, n: int, c=1) -> "PolyForm":
        return cls(n, apl_algebra(n).scalar(c))

    def _wrap(self, e: Element) -> "PolyForm":
        return PolyForm(self.n, e)

    def _check(self, other: "PolyForm"):
        if other.n != self.n:
            raise UsageError(f"forms on simplices of dimensions {self.n} and {other.n}")

    def __add__(self, other):
        self._check(other)
        return self._wrap(self.element + other.element)

    def __sub__(self, other):
        self._check(other)
        return self._wrap(self.element - other.element)

    def __neg__(self):
        return self._wrap(-self.element)

    def __mul__(self, other):
        if isinstance(other, PolyForm):
            self._check(other)
            return self._wrap(self.element * other.element)
        return self._wrap(self.element.scale(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return self.n == other.n and self.element == other.element

    def __hash__(self):
        return hash((self.n, self.element))

    def d(self) -> "PolyForm":
        return self._wrap(self.element.d())

    def is_zero(self) -> bool:
        return self.element.is_zero()

    @property
    def form_degree(self) -> int | None:
        return self.element.degree

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.element.terms), default=0)

    def __str__(self):
        return str(self.element)

    def __repr__(self):
        return f"PolyForm(n={self.n}, {self.element})"


def _replace_name(text: str, name: str, repl: str) -> str:
    import re

    return re.sub(rf"\b{name}\b", repl, text)


def t(n: int, k: int) -> PolyForm:
    """The barycentric coordinate ``t_k`` on the ``n``-simplex, in canonical form."""
    alg = apl_algebra(n)
    if not 0 <= k <= n:
        raise DegreeRangeError(f"t_{k} does not exist on the {n}-simplex")
    if k == 0:
        e = alg.one()
        for i in range(1, n + 1):
            e = e - alg.gen(f"t{i}")
        return PolyForm(n, e)
    return PolyForm(n, alg.gen(f"t{k}"))


def y(n: int, k: int) -> PolyForm:
    return t(n, k).d()


@lru_cache(maxsize=None)
def _face_map(n: int, i: int) -> CdgaMorphism:
    src, tgt = apl_algebra(n), apl_algebra(n - 1)
    images = {}
    for k in range(1, n + 1):
        if k < i:
            img = t(n - 1, k).element
        elif k == i:
            img = tgt.zero()
        else:
            img = t(n - 1, k - 1).element
        images[f"t{k}"] = img
        images[f"y{k}"] = img.d()
    return CdgaMorphism(src, tgt, images, validate=False)


@lru_cache(maxsize=None)
def _degeneracy_map(n: int, j: int) -> CdgaMorphism:
    src, tgt = apl_algebra(n), apl_algebra(n + 1)
    images = {}
    for k in range(1, n + 1):
        if k < j:
            img = t(n + 1, k).element
        elif k == j:
            img = t(n + 1, k).element + t(n + 1, k + 1).element
        else:
            img = t(n + 1, k + 1).element
        images[f"t{k}"] = img
        images[f"y{k}"] = img.d()
    return CdgaMorphism(src, tgt, images, validate=False)


def face(w: PolyForm, i: int) -> PolyForm:
    """``∂_i``: restriction to the face ``t_i = 0`` of the ``n``-simplex."""
    if w.n == 0 or not 0 <= i <= w.n:
        raise DegreeRangeError(f"face index {i} out of range for the {w.n}-simplex")
    return PolyForm(w.n - 1, _face_map(w.n, i)(w.element))


def degeneracy(w: PolyForm, j: int) -> PolyForm:
    """``s_j``: pull back along the collapse of the ``n+1``-simplex onto the ``n``-simplex."""
    if not 0 <= j <= w.n:
        raise DegreeRangeError(f"degeneracy index {j} out of range for the {w.n}-simplex")
    return PolyForm(w.n + 1, _degeneracy_map(w.n, j)(w.element))


def face_morphism(n: int, i: int) -> CdgaMorphism:
    return _face_map(n, i)


def degeneracy_morphism(n: int, j: int) -> CdgaMorphism:
    return _degeneracy_map(n, j)


# ---------------------------------------------------------------------------
# simplicial identities


@dataclass
class IdentityCheck:
    identity: str
    n: int
    i: int
    j: int
    passed: bool


@dataclass
class IdentityReport:
    n_max: int
    bound: int
    checks: list[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.passed]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.checks:
            out[c.identity] = out.get(c.identity, 0) + 1
        return out


IDENTITY_FAMILIES = (
    "d_i d_j = d_(j-1) d_i (i<j)",
    "s_i s_j = s_(j+1) s_i (i<=j)",
    "d_i s_j = s_(j-1) d_i (i<j)",
    "d_i s_j = id (i=j,j+1)",
    "d_i s_j = s_j d_(i-1) (i>j+1)",
)


def sample_forms(n: int, bound: int = 1) -> list[PolyForm]:
    """All ``t_k``, ``y_k`` (``0 <= k <= n``), plus basis monomials of word length ``<= bound``."""
    forms = [t(n, k) for k in range(n + 1)] + [y(n, k) for k in range(n + 1)]
    if bound > 1:
        alg = apl_algebra(n, bound)
        for deg in range(0, n + 1):
            for m in alg.basis_in_degree(deg):
                if sum(m) >= 2:
                    forms.append(PolyForm(n, alg.monomial(m)))
    return forms


def verify_simplicial_identities(n_max: int, bound: int = 1) -> IdentityReport:
    """Check the five identity families on the generators of ``A_PL,n``, ``n <= n_max``.

    With ``bound > 1`` every basis monomial of word length up to ``bound`` is
    checked as well.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    ff, ss, fs_lo, fs_id, fs_hi = IDENTITY_FAMILIES
    checks = []

    def record(name, n, i, j, forms, lhs, rhs):
        ok = all(lhs(w) == rhs(w) for w in forms)
        checks.append(IdentityCheck(name, n, i, j, ok))

    for n in range(0, n_max + 1):
        forms = sample_forms(n, bound)
        for j in range(0, n + 1):
            for i in range(0, j):
                if n >= 2:
                    record(ff, n, i, j, forms,
                           lambda w, i=i, j=j: face(face(w, j), i),
                           lambda w, i=i, j=j: face(face(w, i), j - 1))
        for j in range(0, n + 1):
            for i in range(0, j + 1):
                record(ss, n, i, j, forms,
                       lambda w, i=i, j=j: degeneracy(degeneracy(w, j), i),
                       lambda w, i=i, j=j: degeneracy(degeneracy(w, i), j + 1))
        for j in range(0, n + 1):
            for i in range(0, n + 2):
                lhs = lambda w, i=i, j=j: face(degeneracy(w, j), i)  # noqa: E731
                if i < j:
                    record(fs_lo, n, i, j, forms, lhs,
                           lambda w, i=i, j=j: degeneracy(face(w, i), j - 1))
                elif i in (j, j + 1):
                    record(fs_id, n, i, j, forms, lhs, lambda w: w)
                else:
                    record(fs_hi, n, i, j, forms, lhs,
                           lambda w, i=i, j=j: degeneracy(face(w, i - 1), j))
    return IdentityReport(n_max, bound, checks)


# ---------------------------------------------------------------------------
# integration and Stokes


def integrate(w: PolyForm) -> Fraction:
    """Exact integral of a top-degree form over the standard simplex.

    Uses ``∫ t_1^a_1 ... t_n^a_n dt_1...dt_n = a_1!...a_n! / (n + sum a)!`` with
    ``y_1 ∧ ... ∧ y_n`` positively oriented.
    """
    n = w.n
    total = Fraction(0)
    for m, c in w.element.terms.items():
        exps, ys = m[:n], m[n:]
        if any(e != 1 for e in ys):
            raise DegreeRangeError(f"integrate needs a form of degree {n}; got a term of degree {sum(ys)}")
        num = 1
        for a in exps:
            num *= factorial(a)
        total += c * Fraction(num, factorial(n + sum(exps)))
    return total


@dataclass
class StokesResult:
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def __iter__(self):
        return iter((self.lhs, self.rhs, self.equal))


def stokes_check(w: PolyForm) -> StokesResult:
    """``∫ dω`` over the simplex against the alternating sum of integrals over its faces."""
    n = w.n
    if n == 0:
        raise DegreeRangeError("Stokes needs a simplex of positive dimension")
    deg = w.form_degree
    if deg is not None and deg != n - 1:
        raise DegreeRangeError(f"Stokes needs a form of degree {n - 1}, got {deg}")
    lhs = integrate(w.d())
    rhs = Fraction(0)
    for i in range(n + 1):
        rhs += (-1) ** i * integrate(face(w, i))
    return StokesResult(lhs, rhs)


def random_form(n: int, degree: int, max_poly_degree: int, rng: random.Random, terms: int = 4) -> PolyForm:
    """Random form of the given form degree with integer coefficients in [-5, 5]."""
    from itertools import combinations

    alg = apl_algebra(n)
    subsets = list(combinations(range(n), degree))
    e = alg.zero()
    for _ in range(terms):
        exps = [0] * n
        for _ in range(rng.randint(0, max_poly_degree)):
            if n:
                exps[rng.randrange(n)] += 1
        ys = [0] * n
        for k in rng.choice(subsets):
            ys[k] = 1
        e = e + alg.monomial(tuple(exps) + tuple(ys)).scale(rng.randint(-5, 5))
    return PolyForm(n, e)


# ---------------------------------------------------------------------------
# acyclicity of the total-degree components


def total_degree_component(n: int, total: int) -> graded.CochainComplexSlice:
    """The summand of ``A_PL,n`` of word length exactly ``total``, as a complex."""
    alg = apl_algebra(n, total)
    pieces = {
        k: tuple(m for m in alg.basis_in_degree(k) if sum(m) == total) for k in range(0, n + 1)
    }
    entries = {}
    for k in range(0, n):
        for m in pieces[k]:
            entries[m] = list(alg.d_monomial(m).items())
    basis = graded.GradedBasis(pieces, lo=-1, hi=n + 1)
    return graded.CochainComplexSlice(basis, graded.LinearMap(basis, basis, 1, entries), -1, n + 1)


def component_cohomology(n: int, total: int) -> dict[int, int]:
    sl = total_degree_component(n, total)
    return {k: graded.cohomology_dim(sl, k) for k in range(0, n + 1)}
