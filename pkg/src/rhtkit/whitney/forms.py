"""Polynomial differential forms on Q^n and the radial homotopy operator.

A form is stored as ``{(a, I): c}`` meaning ``sum c x^a dx_I`` with ``I``
a strictly increasing tuple of 0-based coordinate indices.  The operator

    K(x^a dx_I) = 1/(|a| + k) sum_r (-1)^r x^a x_(i_r) dx_(I minus i_r),   k = |I| >= 1

(and ``K = 0`` on functions) is the homotopy obtained by integrating along
the rays to the origin.  It satisfies ``K d + d K = id - ev0``, where
``ev0`` evaluates functions at 0 and kills forms of positive degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .. import graded
from ..cdga import CdgaMorphism, CdgaPresentation, ChainHomotopy, Element
from ..errors import DegreeRangeError, UnsupportedInputError, UsageError
from .polynomial import Polynomial
from .quadrants import QuadrantSpec, as_spec


def _add(acc: dict, k, c):
    v = acc.get(k, 0) + c
    if v:
        acc[k] = v
    else:
        acc.pop(k, None)


def _insert(j: int, I: tuple) -> tuple[int, tuple] | None:
    """``dx_j ∧ dx_I`` as ``(sign, sorted index tuple)``; ``None`` if ``j`` is in ``I``."""
    if j in I:
        return None
    before = sum(1 for i in I if i < j)
    return (-1) ** before, tuple(sorted(I + (j,)))


class EuclideanPolyForm:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean: dict = {}
        for (a, I), c in (terms or {}).items():
            a, I = tuple(a), tuple(I)
            if len(a) != n or any(i < 0 or i >= n for i in I):
                raise UsageError(f"bad term {(a, I)} for a form on Q^{n}")
            if list(I) != sorted(set(I)):
                raise UsageError(f"index tuple {I} must be strictly increasing")
            _add(clean, (a, I), Fraction(c))
        self.terms = clean

    @classmethod
    def from_coefficients(cls, n: int, coeffs: Mapping[tuple, Polynomial]) -> "EuclideanPolyForm":
        """``sum_I f_I dx_I``; unsorted index tuples are sorted with the matching sign."""
        out: dict = {}
        for I, f in coeffs.items():
            I = tuple(I)
            sign = 1
            srt = list(I)
            for i in range(len(srt)):  # bubble sort, counting swaps
                for j in range(len(srt) - 1 - i):
                    if srt[j] > srt[j + 1]:
                        srt[j], srt[j + 1] = srt[j + 1], srt[j]
                        sign = -sign
            if len(set(srt)) != len(srt):
                continue
            for a, c in f.terms.items():
                _add(out, (a, tuple(srt)), sign * c)
        return cls(n, out)

    @classmethod
    def function(cls, f: Polynomial) -> "EuclideanPolyForm":
        return cls.from_coefficients(f.n, {(): f})

    def coefficient(self, I) -> Polynomial:
        I = tuple(I)
        return Polynomial(self.n, {a: c for (a, J), c in self.terms.items() if J == I})

    @property
    def degree(self) -> int | None:
        degs = {len(I) for _, I in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise UsageError("form is not homogeneous")
        return degs.pop()

    @property
    def coefficient_degree(self) -> int:
        return max((sum(a) for a, _ in self.terms), default=-1)

    def _check(self, other):
        if not isinstance(other, EuclideanPolyForm) or other.n != self.n:
            raise UsageError("forms on different spaces")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return EuclideanPolyForm(self.n, out)

    def __neg__(self):
        return EuclideanPolyForm(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "EuclideanPolyForm":
        return EuclideanPolyForm(self.n, {k: v * c for k, v in self.terms.items()})

    def wedge(self, other: "EuclideanPolyForm") -> "EuclideanPolyForm":
        self._check(other)
        out: dict = {}
        for (a, I), c1 in self.terms.items():
            for (b, J), c2 in other.terms.items():
                if set(I) & set(J):
                    continue
                sign = 1
                for i in I:  # inversions between I and J
                    sign *= (-1) ** sum(1 for j in J if j < i)
                _add(out, (tuple(x + y for x, y in zip(a, b)), tuple(sorted(I + J))), sign * c1 * c2)
        return EuclideanPolyForm(self.n, out)

    __mul__ = wedge

    def __eq__(self, other):
        if not isinstance(other, EuclideanPolyForm):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def d(self) -> "EuclideanPolyForm":
        out: dict = {}
        for (a, I), c in self.terms.items():
            for j, e in enumerate(a):
                if not e:
                    continue
                ins = _insert(j, I)
                if ins is None:
                    continue
                sign, J = ins
                b = a[:j] + (e - 1,) + a[j + 1:]
                _add(out, (b, J), sign * e * c)
        return EuclideanPolyForm(self.n, out)

    def ev0(self) -> "EuclideanPolyForm":
        zero = (0,) * self.n
        c = self.terms.get((zero, ()), 0)
        return EuclideanPolyForm(self.n, {(zero, ()): c} if c else {})

    def __str__(self):
        from ..expr import format_fraction

        if not self.terms:
            return "0"
        parts = []
        for (a, I) in sorted(self.terms, key=lambda k: (len(k[1]), k[1], sum(k[0]), k[0])):
            c = self.terms[(a, I)]
            factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(a) if e]
            factors += [f"dx{i + 1}" for i in I]
            mono = "*".join(factors)
            mag = abs(c)
            body = format_fraction(mag) if not mono else (mono if mag == 1 else f"{format_fraction(mag)}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"EuclideanPolyForm({self.n}, {self})"


def poincare_homotopy(w: EuclideanPolyForm) -> EuclideanPolyForm:
    """The radial homotopy ``K``; lowers the form degree by one."""
    out: dict = {}
    for (a, I), c in w.terms.items():
        k = len(I)
        if k == 0:
            continue
        scale = Fraction(c, sum(a) + k)
        for r, i in enumerate(I):
            b = a[:i] + (a[i] + 1,) + a[i + 1:]
            _add(out, (b, I[:r] + I[r + 1:]), (-1) ** r * scale)
    return EuclideanPolyForm(w.n, out)


def homotopy_defect(w: EuclideanPolyForm) -> EuclideanPolyForm:
    """``K d w + d K w - (w - ev0 w)``; zero for every polynomial form."""
    lhs = poincare_homotopy(w.d()) + poincare_homotopy(w).d()
    return lhs - (w - w.ev0())


def random_euclidean_form(n: int, degree: int, max_coeff_degree: int, rng: random.Random, terms: int = 4) -> EuclideanPolyForm:
    out: dict = {}
    subsets = list(combinations(range(n), degree))
    for _ in range(terms):
        a = [0] * n
        for _ in range(rng.randint(0, max_coeff_degree)):
            a[rng.randrange(n)] += 1
        _add(out, (tuple(a), rng.choice(subsets)), Fraction(rng.randint(-5, 5)))
    return EuclideanPolyForm(n, out)


# ---------------------------------------------------------------------------
# the same complex as a CDGA presentation


@lru_cache(maxsize=None)
def polynomial_de_rham(n: int, bound: int) -> CdgaPresentation:
    """Polynomial forms on Q^n: ``x_i`` in degree 0, ``dx_i`` in degree 1, word length ``<= bound``."""
    gens = [(f"x{i}", 0) for i in range(1, n + 1)] + [(f"dx{i}", 1) for i in range(1, n + 1)]
    return CdgaPresentation(
        gens,
        {f"x{i}": f"dx{i}" for i in range(1, n + 1)},
        truncation=n + 1,
        poly_degree_bound=bound,
        name=f"Omega_poly(Q^{n})",
    )


def to_form(e: Element, n: int) -> EuclideanPolyForm:
    out = {}
    for m, c in e.terms.items():
        a, ind = m[:n], m[n:]
        out[(tuple(a), tuple(i for i, v in enumerate(ind) if v))] = c
    return EuclideanPolyForm(n, out)


def to_element(w: EuclideanPolyForm, alg: CdgaPresentation) -> Element:
    n = w.n
    terms = {}
    for (a, I), c in w.terms.items():
        ind = [0] * n
        for i in I:
            ind[i] = 1
        terms[tuple(a) + tuple(ind)] = c
    return Element(alg, terms)


def radial_homotopy_data(n: int, bound: int) -> ChainHomotopy:
    """``K`` as a chain homotopy between the identity and ``ev0`` on :func:`polynomial_de_rham`."""
    alg = polynomial_de_rham(n, bound)
    ident = CdgaMorphism.identity(alg)
    ev0 = CdgaMorphism(alg, alg, {g.name: alg.zero() for g in alg.generators})
    return ChainHomotopy(ident, ev0, lambda e: to_element(poincare_homotopy(to_form(e, n)), alg))


# ---------------------------------------------------------------------------
# quadrant unions


def _vanishes(a: tuple, zero_sets: list[frozenset]) -> bool:
    # x^a vanishes on the Zariski closure of every member (a coordinate subspace)
    return all(any(a[i - 1] for i in Z) for Z in zero_sets)


def _monomial_forms(n: int, total: int, k: int):
    for I in combinations(range(n), k):
        rest = total - k
        if rest < 0:
            return
        for a in _exps(n, rest):
            yield (a, I)


def _exps(n: int, total: int):
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exps(n - 1, total - first):
            yield (first,) + rest


@dataclass
class QuadrantReport:
    spec: str
    up_to: int
    bound: int
    dims: dict[int, int]
    components: dict[int, dict[int, int]]  # total degree -> degree -> dim H
    homotopy_identity: bool
    ideal_preserved: bool
    notes: list[str] = field(default_factory=list)

    @property
    def contractible(self) -> bool:
        return self.dims.get(0) == 1 and all(v == 0 for k, v in self.dims.items() if k > 0)


def quadrant_poincare_report(q, up_to: int, bound: int = 4) -> QuadrantReport:
    """Cohomology of polynomial forms modulo the forms vanishing on the union ``q``.

    The monomials vanishing on the union generate the ideal ``I``; the
    quotient of all forms by ``I·Ω + d(I·Ω)`` is split by total degree
    ``|a| + |I| <= bound`` and each summand is solved exactly.  The radial
    homotopy identity and ``K(J) ⊆ J`` are checked on every basis form.
    """
    spec: QuadrantSpec = as_spec(q)
    n = spec.n
    origin = (0,) * n
    for quad in spec.quadrants:
        if not quad.closure_contains(origin):
            raise UnsupportedInputError(
                f"the origin is not in the closure of the quadrant {quad.signs()}"
                + (f" centered at {tuple(str(c) for c in quad.center)}" if quad.center else "")
                + "; the radial contraction needs a union star-shaped toward 0"
            )
    if up_to < 0 or bound < 0:
        raise DegreeRangeError("up_to and bound must be non-negative")
    zero_sets = [quad.zero for quad in spec.quadrants]
    dims = {k: 0 for k in range(0, up_to + 1)}
    comps = {}
    identity_ok = True
    preserved = True
    for T in range(0, bound + 1):
        basis = {k: list(_monomial_forms(n, T, k)) for k in range(0, n + 2)}
        index = {k: {lab: i for i, lab in enumerate(basis[k])} for k in basis}

        def vec(w: EuclideanPolyForm, k: int) -> dict:
            return {index[k][lab]: c for lab, c in w.terms.items()}

        ideal = {}
        for k in range(0, n + 1):
            eb = graded.EchelonBasis()
            for lab in basis[k]:
                if _vanishes(lab[0], zero_sets):
                    eb.add({index[k][lab]: Fraction(1)})
            if k >= 1:
                for lab in basis[k - 1]:
                    if _vanishes(lab[0], zero_sets):
                        eb.add(vec(EuclideanPolyForm(n, {lab: 1}).d(), k))
            ideal[k] = eb
        comp = {}
        for k in range(0, min(up_to, n) + 1):
            quo = len(basis[k]) - len(ideal[k])

            def rank_mod(src_k):
                if src_k < 0 or src_k > n:
                    return 0
                tgt_k = src_k + 1
                if tgt_k > n:
                    return 0
                eb = ideal[tgt_k].copy()
                base = len(eb)
                for lab in basis[src_k]:
                    eb.add(vec(EuclideanPolyForm(n, {lab: 1}).d(), tgt_k))
                return len(eb) - base

            comp[k] = quo - rank_mod(k) - rank_mod(k - 1)
            dims[k] += comp[k]
        comps[T] = comp
        for k in range(0, n + 1):
            for lab in basis[k]:
                w = EuclideanPolyForm(n, {lab: 1})
                if not homotopy_defect(w).is_zero():
                    identity_ok = False
                if k >= 1 and _vanishes(lab[0], zero_sets):
                    Kw = poincare_homotopy(w)
                    if not ideal[k - 1].contains(vec(Kw, k - 1)):
                        preserved = False
    return QuadrantReport(str(spec), up_to, bound, dims, comps, identity_ok, preserved)
