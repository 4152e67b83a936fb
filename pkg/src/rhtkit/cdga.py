"""Free graded-commutative algebras with a differential, and their quotients.

A :class:`CdgaPresentation` is a free graded-commutative algebra on named
generators, a differential given on generators and extended by the Leibniz
rule, an optional set of relations, and a truncation degree ``N`` beyond
which nothing is computed.

Monomials are exponent vectors aligned with the generator list; odd
generators carry exponent 0 or 1.  Signs come from counting transpositions
of odd factors while merging two sorted factor lists.

Relations are rewriting rules: the deglex-largest monomial of a relation is
replaced by the remaining terms.  This covers monomial ideals (odd squares,
``x^2 = 0``, truncation ideals) and multiplication tables of
finite-dimensional algebras.  The rules are assumed to form a Groebner basis;
no completion is attempted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from . import graded
from .errors import DegreeRangeError, FinitenessError, PresentationError, UsageError

Monomial = tuple  # exponent vector aligned with CdgaPresentation.generators

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


def merge_inversions(left: Sequence[int], right: Sequence[int]) -> int | None:
    """Transpositions needed to merge two sorted lists of odd factor positions.

    Returns ``None`` when an odd factor occurs in both lists (the product
    contains an odd square and vanishes).
    """
    i = j = inv = 0
    while i < len(left) and j < len(right):
        if left[i] < right[j]:
            i += 1
        elif right[j] < left[i]:
            inv += len(left) - i
            j += 1
        else:
            return None
    return inv


def koszul_sort(positions: Sequence[int], odd: Sequence[bool]) -> tuple[int, list[int]]:
    """Merge-sort a word of generator positions, returning ``(sign, sorted word)``.

    Each adjacent transposition of two odd factors flips the sign; a repeated
    odd factor gives sign 0.
    """
    if len(positions) <= 1:
        return 1, list(positions)
    mid = len(positions) // 2
    s1, left = koszul_sort(positions[:mid], odd)
    s2, right = koszul_sort(positions[mid:], odd)
    if s1 == 0 or s2 == 0:
        return 0, []
    inv = merge_inversions([p for p in left if odd[p]], [p for p in right if odd[p]])
    if inv is None:
        return 0, []
    merged = sorted(left + right)
    return s1 * s2 * (-1 if inv % 2 else 1), merged


def _odd_positions(m: Monomial, odd: Sequence[bool]) -> list[int]:
    return [i for i, e in enumerate(m) if e and odd[i]]


def mono_mul(a: Monomial, b: Monomial, odd: Sequence[bool]) -> tuple[int, Monomial | None]:
    """Product of two canonical monomials: ``a*b = sign * result``."""
    inv = merge_inversions(_odd_positions(a, odd), _odd_positions(b, odd))
    if inv is None:
        return 0, None
    return (-1 if inv % 2 else 1), tuple(x + y for x, y in zip(a, b))


def _add_into(acc: dict, m, c):
    v = acc.get(m, 0) + c
    if v:
        acc[m] = v
    else:
        acc.pop(m, None)


class Element:
    """Finite linear combination of monomials of one presentation."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "CdgaPresentation", terms: Mapping | None = None, reduced=False):
        self.algebra = algebra
        clean = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        if not reduced:
            clean = algebra._reduce(clean)
        self.terms = clean

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if not self.algebra.compatible(other.algebra):
                raise UsageError("elements of different presentations")
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        return Element(self.algebra, acc, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()}, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = multiply(out, self)
        return out

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {m: c * v for m, v in self.terms.items()}, reduced=True)

    def d(self) -> "Element":
        return apply_d(self)

    # inspection -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra.compatible(other.algebra) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        """Common degree of all terms; ``None`` for zero.  Raises if inhomogeneous."""
        degs = {self.algebra.mono_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise UsageError(f"inhomogeneous element (degrees {sorted(degs)})")
        return degs.pop()

    def homogeneous_parts(self) -> dict[int, "Element"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.algebra.mono_degree(m), {})[m] = c
        return {k: Element(self.algebra, t, reduced=True) for k, t in sorted(parts.items())}

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def __str__(self):
        from .expr import format_element

        return format_element(self)

    def __repr__(self):
        return f"Element({self})"


def multiply(a: Element, b: Element) -> Element:
    """Graded-commutative product with Koszul signs, reduced by the relations."""
    if not a.algebra.compatible(b.algebra):
        raise UsageError("cannot multiply elements of different presentations")
    alg = a.algebra
    acc: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            for m, c in alg.mono_product(m1, m2).items():
                _add_into(acc, m, c * c1 * c2)
    return Element(alg, acc, reduced=True)


def apply_d(a: Element) -> Element:
    """Differential, extended from generators by linearity and the Leibniz rule."""
    alg = a.algebra
    acc: dict = {}
    for m, c in a.terms.items():
        for mm, cc in alg.d_monomial(m).items():
            _add_into(acc, mm, c * cc)
    return Element(alg, acc, reduced=True)


def _coerce_terms(alg: "CdgaPresentation", value, what: str) -> dict:
    if value is None or (isinstance(value, (int, Fraction)) and value == 0):
        return {}
    if isinstance(value, Element):
        return dict(value.terms)
    if isinstance(value, str):
        from .expr import parse_expression

        return dict(parse_expression(value, alg).terms)
    if isinstance(value, Mapping):
        return {tuple(m): Fraction(c) for m, c in value.items() if c}
    if isinstance(value, (int, Fraction)):
        return {alg.unit_monomial: Fraction(value)}
    raise TypeError(f"cannot interpret {what}: {value!r}")


class CdgaPresentation:
    """Generators, differential on generators, relations, truncation degree.

    ``differential`` maps generator names to expressions (strings in the
    expression grammar, :class:`Element` objects of a compatible algebra, or
    ``{monomial: coefficient}`` dicts).  Degree-0 generators are only
    admitted together with ``poly_degree_bound``, which caps the number of
    factors (word length) of basis monomials; in that case ``d`` of every
    generator must be linear so the bound cuts out a subcomplex.
    """

    def __init__(
        self,
        generators: Iterable,
        differential: Mapping | None = None,
        relations: Iterable = (),
        truncation: int = 10,
        poly_degree_bound: int | None = None,
        name: str | None = None,
        validate: bool = True,
    ):
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(str(g[0]), int(g[1]))
            gens.append(g)
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.name = name
        self.truncation = int(truncation)
        self.poly_degree_bound = poly_degree_bound
        names = [g.name for g in gens]
        for g in gens:
            if not _NAME_RE.match(g.name):
                raise PresentationError(f"invalid generator name {g.name!r}")
            if g.degree < 0:
                raise PresentationError(f"generator {g.name} has negative degree {g.degree}")
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise PresentationError(f"generator {dup} declared twice")
        self.index = {n: i for i, n in enumerate(names)}
        self.degrees = tuple(g.degree for g in gens)
        self.odd = tuple(g.degree % 2 == 1 for g in gens)
        self.unit_monomial: Monomial = (0,) * len(gens)

        self._rules: list[tuple[Monomial, dict]] = []
        self._d: dict[int, dict] = {}
        self._mono_cache: dict = {}
        self._dmono_cache: dict = {}
        self._basis_cache: dict = {}

        differential = dict(differential or {})
        for n in differential:
            if n not in self.index:
                raise PresentationError(f"differential given for undeclared generator {n}")
        for i, g in enumerate(gens):
            self._d[i] = _coerce_terms(self, differential.get(g.name), f"d {g.name}")
        self.relations: tuple[Element, ...] = tuple(
            Element(self, _coerce_terms(self, r, "relation"), reduced=True) for r in relations
        )
        for r in self.relations:
            if not r.terms:
                continue
            lead = max(r.terms, key=lambda m: (sum(m), m))
            c = r.terms[lead]
            tail = {m: -v / c for m, v in r.terms.items() if m != lead}
            self._rules.append((lead, tail))
        # parsing the relations filled the caches before any rule existed
        self._mono_cache.clear()
        self._dmono_cache.clear()
        # d on generators is stored reduced
        for i in self._d:
            self._d[i] = self._reduce(self._d[i])
        if validate:
            self.validate()

    # -- identity ------------------------------------------------------
    @cached_property
    def signature(self):
        return (
            self.generators,
            tuple(tuple(sorted(self._d[i].items())) for i in range(len(self.generators))),
            tuple((lead, tuple(sorted(tail.items()))) for lead, tail in self._rules),
        )

    def compatible(self, other: "CdgaPresentation") -> bool:
        return other is self or other.signature == self.signature

    def __eq__(self, other):
        if not isinstance(other, CdgaPresentation):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.truncation == other.truncation
            and self.poly_degree_bound == other.poly_degree_bound
        )

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"CdgaPresentation({self.name or ''}[{gens}], N={self.truncation})"

    def replace(self, **kw) -> "CdgaPresentation":
        """Copy with some of name/truncation/poly_degree_bound changed."""
        args = dict(
            generators=self.generators,
            differential={g.name: self.d_of(g.name) for g in self.generators},
            relations=self.relations,
            truncation=self.truncation,
            poly_degree_bound=self.poly_degree_bound,
            name=self.name,
            validate=False,
        )
        args.update(kw)
        new = CdgaPresentation(**args)
        return new

    # -- element constructors -----------------------------------------
    def zero(self) -> Element:
        return Element(self, {}, reduced=True)

    def one(self) -> Element:
        return Element(self, {self.unit_monomial: 1}, reduced=True)

    def scalar(self, c) -> Element:
        return Element(self, {self.unit_monomial: Fraction(c)}, reduced=True)

    def gen(self, name: str) -> Element:
        if name not in self.index:
            raise UsageError(f"unknown generator {name}")
        m = [0] * len(self.generators)
        m[self.index[name]] = 1
        return Element(self, {tuple(m): 1})

    def gens(self) -> list[Element]:
        return [self.gen(g.name) for g in self.generators]

    def monomial(self, m: Monomial) -> Element:
        return Element(self, {tuple(m): 1})

    def element(self, text: str) -> Element:
        from .expr import parse_expression

        return parse_expression(text, self)

    def word(self, names: Sequence[str]) -> Element:
        """Product of generators in the given order, sign from a Koszul merge sort."""
        pos = [self.index[n] for n in names]
        sign, srt = koszul_sort(pos, self.odd)
        if sign == 0:
            return self.zero()
        m = [0] * len(self.generators)
        for p in srt:
            m[p] += 1
        return self.monomial(tuple(m)).scale(sign)

    def d_of(self, name: str) -> Element:
        return Element(self, self._d[self.index[name]], reduced=True)

    # -- monomial arithmetic -----------------------------------------
    def mono_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def mono_product(self, a: Monomial, b: Monomial) -> dict:
        key = (a, b)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        sign, m = mono_mul(a, b, self.odd)
        if m is None or any(e > 1 and o for e, o in zip(m, self.odd)):
            res = {}
        else:
            res = self._reduce({m: Fraction(sign)})
        self._mono_cache[key] = res
        return res

    def _reduce(self, terms: dict) -> dict:
        if not self._rules:
            return terms
        out: dict = {}
        work = dict(terms)
        while work:
            m, c = work.popitem()
            rule = None
            for lead, tail in self._rules:
                if all(x <= y for x, y in zip(lead, m)):
                    rule = (lead, tail)
                    break
            if rule is None:
                _add_into(out, m, c)
                continue
            lead, tail = rule
            q = tuple(y - x for x, y in zip(lead, m))
            sign, check = mono_mul(lead, q, self.odd)
            assert check == m and sign != 0
            for tm, tc in tail.items():
                s2, p = mono_mul(tm, q, self.odd)
                if p is None or any(e > 1 and o for e, o in zip(p, self.odd)):
                    continue
                _add_into(work, p, c * sign * s2 * tc)
        return out

    def d_monomial(self, m: Monomial) -> dict:
        hit = self._dmono_cache.get(m)
        if hit is not None:
            return hit
        # split off the first factor: m = g^e * rest
        first = next((i for i, e in enumerate(m) if e), None)
        if first is None:
            res: dict = {}
        else:
            e = m[first]
            rest = list(m)
            rest[first] = 0
            rest = tuple(rest)
            head = [0] * len(m)
            head[first] = e
            head = tuple(head)
            dg = self._d[first]
            acc: dict = {}
            # d(g^e) = e g^(e-1) dg  (only e = 1 possible for odd g)
            lower = list(head)
            lower[first] = e - 1
            lower = tuple(lower)
            dhead: dict = {}
            for tm, tc in dg.items():
                for pm, pc in self.mono_product(lower, tm).items():
                    _add_into(dhead, pm, e * tc * pc)
            for hm, hc in dhead.items():
                for pm, pc in self.mono_product(hm, rest).items():
                    _add_into(acc, pm, hc * pc)
            sgn = -1 if self.mono_degree(head) % 2 else 1
            for rm, rc in self.d_monomial(rest).items():
                for pm, pc in self.mono_product(head, rm).items():
                    _add_into(acc, pm, sgn * rc * pc)
            res = acc
        self._dmono_cache[m] = res
        return res

    def mono_length(self, m: Monomial) -> int:
        return sum(m)

    def is_reducible(self, m: Monomial) -> bool:
        return any(all(x <= y for x, y in zip(lead, m)) for lead, _ in self._rules)

    # -- validation ----------------------------------------------------
    def validate(self):
        has_poly = any(d == 0 for d in self.degrees)
        for i, g in enumerate(self.generators):
            dg = Element(self, self._d[i], reduced=True)
            for m in dg.terms:
                if self.mono_degree(m) != g.degree + 1:
                    raise PresentationError(
                        f"d {g.name} has a term of degree {self.mono_degree(m)}, expected {g.degree + 1}"
                    )
                if has_poly and self.poly_degree_bound is not None and sum(m) > 1:
                    raise PresentationError(
                        f"d {g.name} is not linear; the polynomial bound would not give a subcomplex"
                    )
            if not apply_d(dg).is_zero():
                raise PresentationError(f"d(d {g.name}) = {apply_d(dg)} is not zero")
        for r in self.relations:
            degs = {self.mono_degree(m) for m in r.terms}
            if len(degs) > 1:
                raise PresentationError(f"relation {r} is not homogeneous")
            dr = Element(self, apply_d(r).terms)
            if not dr.is_zero():
                raise PresentationError(f"d of relation {r} is {dr}, not in the relation ideal")

    # -- bases ---------------------------------------------------------
    def basis_in_degree(self, k: int) -> list[Monomial]:
        """Canonical monomials of degree ``k`` that are not reducible by the relations."""
        if k > self.truncation:
            raise DegreeRangeError(f"degree {k} exceeds truncation {self.truncation}")
        if k < 0:
            return []
        hit = self._basis_cache.get(k)
        if hit is not None:
            return hit
        bound = self.poly_degree_bound
        if bound is None and any(d == 0 for d in self.degrees):
            zero_gens = [g.name for g in self.generators if g.degree == 0]
            raise FinitenessError(
                f"degree-0 generators {zero_gens} need a polynomial degree bound"
            )
        ngen = len(self.generators)
        out: list[Monomial] = []
        cur = [0] * ngen

        def rec(i, rem, length):
            if i == ngen:
                if rem == 0:
                    out.append(tuple(cur))
                return
            deg = self.degrees[i]
            if deg == 0:
                top = bound - length
            else:
                top = rem // deg
                if bound is not None:
                    top = min(top, bound - length)
            if self.odd[i]:
                top = min(top, 1)
            for e in range(top, -1, -1):
                cur[i] = e
                rec(i + 1, rem - e * deg, length + e)
            cur[i] = 0

        rec(0, k, 0)
        out = [m for m in out if not self.is_reducible(m)]
        self._basis_cache[k] = out
        return out

    def basis_index(self, k: int) -> dict:
        return {m: i for i, m in enumerate(self.basis_in_degree(k))}

    def vector(self, a: Element, k: int) -> dict[int, Fraction]:
        """Sparse coordinates of a degree-``k`` element in ``basis_in_degree(k)``."""
        idx = self.basis_index(k)
        out = {}
        for m, c in a.terms.items():
            if m not in idx:
                raise DegreeRangeError(f"monomial {m} is not a degree-{k} basis monomial")
            out[idx[m]] = c
        return out

    def from_vector(self, vec, k: int) -> Element:
        basis = self.basis_in_degree(k)
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        return Element(self, {basis[i]: c for i, c in items if c}, reduced=True)

    def d_columns(self, k: int) -> list[dict[int, Fraction]]:
        """Images of the degree-``k`` basis under ``d`` as sparse vectors in degree ``k+1``."""
        idx = self.basis_index(k + 1)
        cols = []
        for m in self.basis_in_degree(k):
            col = {}
            for mm, c in self.d_monomial(m).items():
                if mm not in idx:
                    raise DegreeRangeError(
                        f"d of basis monomial {m} leaves the truncated basis in degree {k + 1}"
                    )
                col[idx[mm]] = c
            cols.append(col)
        return cols

    def d_matrix(self, k: int) -> list[list[Fraction]]:
        cols = self.d_columns(k)
        rows = len(self.basis_in_degree(k + 1))
        mat = [[Fraction(0)] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, c in col.items():
                mat[i][j] = c
        return mat

    def cocycles(self, k: int) -> list[Element]:
        n = len(self.basis_in_degree(k))
        if n == 0:
            return []
        if k + 1 > self.truncation:
            raise DegreeRangeError(f"cocycles in degree {k} need degree {k + 1} <= truncation")
        if not self.basis_in_degree(k + 1):
            return [self.monomial(m) for m in self.basis_in_degree(k)]
        return [self.from_vector(v, k) for v in graded.nullspace(self.d_matrix(k), n)]

    def coboundary_columns(self, k: int) -> list[dict[int, Fraction]]:
        return self.d_columns(k - 1) if k >= 1 else []

    # -- constructions -------------------------------------------------
    def tensor(self, other: "CdgaPresentation", name: str | None = None) -> "CdgaPresentation":
        """Tensor product of two presentations with disjoint generator names."""
        clash = set(self.index) & set(other.index)
        if clash:
            raise UsageError(f"generator names {sorted(clash)} occur in both factors")
        if self.relations or other.relations:
            raise UsageError("tensor products are only formed for free presentations")
        gens = self.generators + other.generators
        n1 = len(self.generators)
        n2 = len(other.generators)
        diff = {}
        for g in self.generators:
            diff[g.name] = {m + (0,) * n2: c for m, c in self._d[self.index[g.name]].items()}
        for g in other.generators:
            diff[g.name] = {(0,) * n1 + m: c for m, c in other._d[other.index[g.name]].items()}
        return CdgaPresentation(
            gens,
            diff,
            truncation=min(self.truncation, other.truncation),
            name=name,
        )

    def embed(self, a: Element) -> Element:
        """Re-express an element of a presentation whose generators are a prefix of ours."""
        src = a.algebra
        if src.generators != self.generators[: len(src.generators)]:
            raise UsageError("generators are not a prefix")
        pad = (0,) * (len(self.generators) - len(src.generators))
        return Element(self, {m + pad: c for m, c in a.terms.items()})

    def to_text(self) -> str:
        from .expr import format_presentation

        return format_presentation(self)


def basis_in_degree(p: CdgaPresentation, k: int) -> list[Monomial]:
    return p.basis_in_degree(k)


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class CohomologyGroup:
    degree: int
    dim: int
    representatives: list[Element]


@dataclass
class CdgaCohomology:
    """Cohomology of a presentation up to a degree, with the induced product."""

    presentation: CdgaPresentation
    groups: list[CohomologyGroup]
    slice: graded.CochainComplexSlice = field(repr=False)

    @property
    def dims(self) -> dict[int, int]:
        return {g.degree: g.dim for g in self.groups}

    @property
    def up_to(self) -> int:
        return self.groups[-1].degree

    def group(self, k: int) -> CohomologyGroup:
        for g in self.groups:
            if g.degree == k:
                return g
        raise DegreeRangeError(f"cohomology was computed up to degree {self.up_to}, not {k}")

    def class_of(self, z: Element) -> list[Fraction]:
        """Coordinates of the class of a homogeneous cocycle in the representative basis."""
        p = self.presentation
        k = z.degree
        if k is None:
            return []
        grp = self.group(k)
        if not apply_d(z).is_zero():
            raise UsageError(f"{z} is not a cocycle")
        n = len(p.basis_in_degree(k))
        reps = [graded.sparse_to_dense(p.vector(r, k), n) for r in grp.representatives]
        bounds = [graded.sparse_to_dense(c, n) for c in p.coboundary_columns(k)]
        cols = reps + bounds
        if not cols:
            return []
        sol = solve_columns(cols, graded.sparse_to_dense(p.vector(z, k), n))
        if sol is None:
            raise PresentationError(f"{z} is a cocycle outside span(reps) + coboundaries")
        return sol[: len(reps)]

    def cup(self, i: int, a: int, j: int, b: int) -> list[Fraction]:
        """Class of (rep ``a`` of H^i) * (rep ``b`` of H^j) in the basis of H^(i+j)."""
        x = self.group(i).representatives[a]
        y = self.group(j).representatives[b]
        prod = multiply(x, y)
        if prod.is_zero():
            return [Fraction(0)] * self.group(i + j).dim
        return self.class_of(prod)

    def cup_table(self) -> dict[tuple[int, int, int, int], list[Fraction]]:
        table = {}
        for gi in self.groups:
            for gj in self.groups:
                if gi.degree == 0 or gj.degree == 0 or gi.degree + gj.degree > self.up_to:
                    continue
                for a in range(gi.dim):
                    for b in range(gj.dim):
                        table[(gi.degree, a, gj.degree, b)] = self.cup(gi.degree, a, gj.degree, b)
        return table


def solve_columns(cols: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """A solution ``x`` of ``sum x_j cols[j] = rhs``, or ``None``."""
    n = len(rhs)
    aug = [[cols[j][i] for j in range(len(cols))] + [rhs[i]] for i in range(n)]
    rows, pivots = graded.rref(aug)
    ncols = len(cols)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = rows[r][ncols]
    return x


def complex_slice(p: CdgaPresentation, lo: int, hi: int) -> graded.CochainComplexSlice:
    """The cochain complex of ``p`` on degrees ``lo..hi`` as a graded_core slice."""
    if hi > p.truncation:
        raise DegreeRangeError(f"slice up to {hi} exceeds truncation {p.truncation}")
    pieces = {k: tuple(p.basis_in_degree(k)) for k in range(max(lo, 0), hi + 1)}
    entries = {}
    for k in range(max(lo, 0), hi):
        idx = p.basis_index(k + 1)
        for m in pieces[k]:
            dm = p.d_monomial(m)
            for mm in dm:
                if mm not in idx:
                    raise DegreeRangeError(f"d({m}) leaves the truncated basis")
            entries[m] = [(mm, c) for mm, c in dm.items()]
    basis = graded.GradedBasis(pieces, lo=lo, hi=hi)
    # the top degree has no outgoing differential inside the slice
    dmap = graded.LinearMap(basis, basis, 1, entries)
    return graded.CochainComplexSlice(basis, dmap, lo, hi, check=False)


def cohomology(p: CdgaPresentation, up_to: int) -> CdgaCohomology:
    """``H^k(p)`` for ``0 <= k <= up_to`` with representatives; needs ``up_to < N``."""
    if up_to > p.truncation - 1:
        raise DegreeRangeError(f"cohomology up to {up_to} needs truncation >= {up_to + 1}")
    sl = complex_slice(p, -1, up_to + 1)
    groups = []
    for k in range(0, up_to + 1):
        dim, reps = graded.cohomology_at(sl, k)
        groups.append(CohomologyGroup(k, dim, [p.from_vector(v, k) for v in reps]))
    return CdgaCohomology(p, groups, sl)


# ---------------------------------------------------------------------------
# morphisms and homotopies


class CdgaMorphism:
    """Algebra map determined by images of generators; checked against ``d`` and relations."""

    def __init__(
        self,
        source: CdgaPresentation,
        target: CdgaPresentation,
        images: Mapping[str, Element | str],
        validate: bool = True,
    ):
        self.source = source
        self.target = target
        imgs = {}
        for g in source.generators:
            v = images.get(g.name, 0)
            if isinstance(v, Element):
                if not target.compatible(v.algebra):
                    raise UsageError(f"image of {g.name} lives in another presentation")
            else:
                v = Element(target, _coerce_terms(target, v, f"image of {g.name}"))
            imgs[g.name] = v
        self.images = imgs
        self._cache: dict = {}
        if validate:
            self.validate()

    def validate(self):
        for g in self.source.generators:
            img = self.images[g.name]
            if not img.is_zero() and img.degree != g.degree:
                raise PresentationError(
                    f"image of {g.name} has degree {img.degree}, expected {g.degree}"
                )
            lhs = self(self.source.d_of(g.name))
            rhs = apply_d(img)
            if lhs != rhs:
                raise PresentationError(f"morphism does not commute with d on {g.name}")
        for r in self.source.relations:
            if not self(r).is_zero():
                raise PresentationError(f"relation {r} is not sent into the target ideal")

    def on_monomial(self, m: Monomial) -> Element:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        out = self.target.one()
        for g, e in zip(self.source.generators, m):
            for _ in range(e):
                out = multiply(out, self.images[g.name])
        self._cache[m] = out
        return out

    def __call__(self, a: Element) -> Element:
        if not self.source.compatible(a.algebra):
            raise UsageError("element is not in the source presentation")
        acc: dict = {}
        for m, c in a.terms.items():
            for mm, cc in self.on_monomial(m).terms.items():
                _add_into(acc, mm, c * cc)
        return Element(self.target, acc, reduced=True)

    @classmethod
    def identity(cls, p: CdgaPresentation) -> "CdgaMorphism":
        return cls(p, p, {g.name: p.gen(g.name) for g in p.generators})


@dataclass
class QuasiIsoReport:
    ok: bool
    up_to: int
    degrees: list[dict]

    def __bool__(self):
        return self.ok


def induced_rank(f: CdgaMorphism, k: int) -> tuple[int, int, int]:
    """``(dim H^k(source), dim H^k(target), rank H^k(f))`` by exact elimination."""
    src, tgt = f.source, f.target
    z_src = src.cocycles(k)
    b_src = graded.sparse_rank(src.coboundary_columns(k))
    h_src = len(z_src) - b_src
    z_tgt = len(tgt.cocycles(k))
    eb = graded.EchelonBasis()
    for col in tgt.coboundary_columns(k):
        eb.add(col)
    b_tgt = len(eb)
    for z in z_src:
        eb.add(tgt.vector(f(z), k))
    return h_src, z_tgt - b_tgt, len(eb) - b_tgt


def is_quasi_iso_up_to(f: CdgaMorphism, n: int) -> QuasiIsoReport:
    """Whether ``H^k(f)`` is bijective for every ``k <= n``, with a per-degree report."""
    rows = []
    ok = True
    for k in range(0, n + 1):
        hs, ht, rank = induced_rank(f, k)
        bij = hs == ht == rank
        ok = ok and bij
        rows.append({"degree": k, "source_dim": hs, "target_dim": ht, "rank": rank, "bijective": bij})
    return QuasiIsoReport(ok, n, rows)


@dataclass
class ChainHomotopy:
    """Maps ``h^n: A^n -> B^(n-1)`` between morphisms ``f`` and ``g``.

    ``h`` is either a callable on source elements or a mapping from source
    basis monomials to target elements (missing monomials map to zero).
    """

    f: CdgaMorphism
    g: CdgaMorphism
    h: Callable[[Element], Element] | Mapping[Monomial, Element]

    def apply(self, a: Element) -> Element:
        if callable(self.h):
            return self.h(a)
        tgt = self.f.target
        acc: dict = {}
        for m, c in a.terms.items():
            img = self.h.get(m)
            if img is None:
                continue
            for mm, cc in img.terms.items():
                _add_into(acc, mm, c * cc)
        return Element(tgt, acc, reduced=True)


def check_homotopy(h: ChainHomotopy, up_to: int | None = None) -> bool:
    """Verify ``f - g = d h + h d`` on every basis monomial of degree ``<= up_to``."""
    f, g = h.f, h.g
    if not (f.source.compatible(g.source) and f.target.compatible(g.target)):
        raise UsageError("f and g must share source and target")
    src = f.source
    top = src.truncation - 1 if up_to is None else up_to
    for k in range(0, top + 1):
        for m in src.basis_in_degree(k):
            a = src.monomial(m)
            lhs = f(a) - g(a)
            rhs = apply_d(h.apply(a)) + h.apply(apply_d(a))
            if lhs != rhs:
                return False
    return True
