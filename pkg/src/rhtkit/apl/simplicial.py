"""Finite simplicial sets and the polynomial forms on them.

Incidence format, one nondegenerate simplex per line::

    # dim id face_0 face_1 ... face_dim
    0 v0
    0 v1
    1 e v1 v0
    2 f e s0(v0) e2

A face is either the id of a nondegenerate simplex or a degeneracy of one,
written ``s<j>(...)`` (nesting allowed).  Dimension-0 lines list no faces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .. import graded
from ..errors import DegreeRangeError, ParseError, PresentationError
from .forms import PolyForm, apl_algebra, degeneracy, face


@dataclass(frozen=True, order=True)
class Simplex:
    """``s_j1 s_j2 ... s_jr (base)`` with ``j1 > j2 > ... > jr`` (the canonical form)."""

    base: str
    degeneracies: tuple[int, ...] = ()

    def __str__(self):
        out = self.base
        for j in reversed(self.degeneracies):
            out = f"s{j}({out})"
        return out

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degeneracies)


def _push_degeneracy(i: int, js: tuple[int, ...]) -> tuple[int, ...]:
    # s_i s_j = s_(j+1) s_i for i <= j
    if not js or i > js[0]:
        return (i,) + js
    return (js[0] + 1,) + _push_degeneracy(i, js[1:])


def apply_degeneracy(i: int, s: Simplex) -> Simplex:
    return Simplex(s.base, _push_degeneracy(i, s.degeneracies))


class FiniteSimplicialSet:
    """Nondegenerate simplices with their face tables."""

    def __init__(self, simplices, name: str | None = None):
        # simplices: iterable of (id, dim, faces) with faces a sequence of Simplex
        self.name = name
        self.dims: dict[str, int] = {}
        self.faces: dict[str, tuple[Simplex, ...]] = {}
        self.order: list[str] = []
        for sid, dim, faces in simplices:
            if sid in self.dims:
                raise PresentationError(f"simplex {sid} declared twice")
            self.dims[sid] = dim
            self.faces[sid] = tuple(faces)
            self.order.append(sid)
        pos = {s: i for i, s in enumerate(self.order)}
        self.order.sort(key=lambda s: (self.dims[s], pos[s]))
        self.validate()

    @property
    def dimension(self) -> int:
        return max(self.dims.values(), default=-1)

    def simplices(self, dim: int | None = None) -> list[str]:
        return [s for s in self.order if dim is None or self.dims[s] == dim]

    def dim_of(self, s: Simplex) -> int:
        return self.dims[s.base] + len(s.degeneracies)

    def face_of(self, s: Simplex, i: int) -> Simplex:
        """``d_i`` of a possibly degenerate simplex, in canonical form."""
        n = self.dim_of(s)
        if n == 0 or not 0 <= i <= n:
            raise DegreeRangeError(f"face {i} of the {n}-simplex {s}")
        js = s.degeneracies
        if not js:
            return self.faces[s.base][i]
        j, rest = js[0], Simplex(s.base, js[1:])
        if i < j:
            return apply_degeneracy(j - 1, self.face_of(rest, i))
        if i in (j, j + 1):
            return rest
        return apply_degeneracy(j, self.face_of(rest, i - 1))

    def validate(self):
        for sid in self.order:
            dim, faces = self.dims[sid], self.faces[sid]
            if dim < 0:
                raise PresentationError(f"simplex {sid} has negative dimension")
            if len(faces) != (dim + 1 if dim > 0 else 0):
                raise PresentationError(f"simplex {sid} of dimension {dim} needs {dim + 1 if dim else 0} faces")
            for f in faces:
                if f.base not in self.dims:
                    raise PresentationError(f"face {f} of {sid} is not declared")
                if self.dim_of(f) != dim - 1:
                    raise PresentationError(f"face {f} of {sid} has the wrong dimension")
        for sid in self.order:
            s = Simplex(sid)
            n = self.dims[sid]
            for j in range(n + 1):
                for i in range(j):
                    if n >= 2 and self.face_of(self.face_of(s, j), i) != self.face_of(self.face_of(s, i), j - 1):
                        raise PresentationError(
                            f"simplicial identity d_{i} d_{j} = d_{j - 1} d_{i} fails on {sid}"
                        )

    def to_text(self) -> str:
        lines = [f"# {self.name}"] if self.name else []
        for sid in self.order:
            parts = [str(self.dims[sid]), sid] + [str(f) for f in self.faces[sid]]
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, FiniteSimplicialSet):
            return NotImplemented
        return self.dims == other.dims and self.faces == other.faces

    def __repr__(self):
        counts = {}
        for d in self.dims.values():
            counts[d] = counts.get(d, 0) + 1
        return f"FiniteSimplicialSet({self.name or ''} {dict(sorted(counts.items()))})"


_FACE = re.compile(r"s(\d+)\((.*)\)$")


def _parse_face(token: str, lineno: int, col: int) -> Simplex:
    js = []
    while True:
        m = _FACE.match(token)
        if not m:
            break
        js.append(int(m.group(1)))
        token = m.group(2)
    if not re.fullmatch(r"[A-Za-z0-9_]+", token):
        raise ParseError(f"bad simplex reference {token!r}", lineno, col)
    s = Simplex(token)
    for j in reversed(js):
        s = apply_degeneracy(j, s)
    return s


def parse_simplicial_set(text: str, name: str | None = None) -> FiniteSimplicialSet:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            if name is None and raw.strip().startswith("#") and lineno == 1:
                name = raw.strip()[1:].strip() or None
            continue
        fields = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if len(fields) < 2 or not fields[0][0].isdigit():
            raise ParseError("expected '<dim> <id> <faces...>'", lineno, fields[0][1])
        dim = int(fields[0][0])
        faces = [_parse_face(tok, lineno, col) for tok, col in fields[2:]]
        entries.append((fields[1][0], dim, faces))
    return FiniteSimplicialSet(entries, name=name)


def standard_simplex(n: int) -> FiniteSimplicialSet:
    """``Δ^n`` with simplices named by their vertex lists, e.g. ``v012``."""
    from itertools import combinations

    entries = []
    for k in range(n + 1):
        for verts in combinations(range(n + 1), k + 1):
            sid = "v" + "".join(map(str, verts))
            faces = []
            if k > 0:
                for i in range(k + 1):
                    rest = verts[:i] + verts[i + 1:]
                    faces.append(Simplex("v" + "".join(map(str, rest))))
            entries.append((sid, k, faces))
    return FiniteSimplicialSet(entries, name=f"Delta^{n}")


def boundary_of_simplex(n: int) -> FiniteSimplicialSet:
    full = standard_simplex(n)
    entries = [(s, full.dims[s], full.faces[s]) for s in full.order if full.dims[s] < n]
    return FiniteSimplicialSet(entries, name=f"boundary of Delta^{n}")


# ---------------------------------------------------------------------------
# sections


@dataclass
class AplSection:
    """A compatible family of forms, one per nondegenerate simplex."""

    space: FiniteSimplicialSet
    forms: dict[str, PolyForm]

    def form_on(self, s: Simplex) -> PolyForm:
        w = self.forms[s.base]
        for j in reversed(s.degeneracies):
            w = degeneracy(w, j)
        return w

    def is_compatible(self) -> bool:
        for sid in self.space.order:
            n = self.space.dims[sid]
            for i in range(n + 1 if n else 0):
                if face(self.forms[sid], i) != self.form_on(self.space.faces[sid][i]):
                    return False
        return True

    def d(self) -> "AplSection":
        return AplSection(self.space, {s: w.d() for s, w in self.forms.items()})


class _SectionSystem:
    """Coordinates for the forms of degree ``k`` on every simplex, plus the compatibility solve."""

    def __init__(self, X: FiniteSimplicialSet, k: int, bound: int):
        self.X, self.k, self.bound = X, k, bound
        self.offsets: dict[str, int] = {}
        self.bases: dict[str, list] = {}
        n = 0
        for sid in X.order:
            dim = X.dims[sid]
            basis = apl_algebra(dim, bound).basis_in_degree(k) if k <= dim else []
            self.offsets[sid] = n
            self.bases[sid] = basis
            n += len(basis)
        self.size = n
        self._solve()

    def _face_coords(self, dim: int, vec_elem) -> dict:
        alg = apl_algebra(dim, self.bound)
        return alg.vector(vec_elem, self.k) if self.k <= dim else {}

    def _solve(self):
        X, k = self.X, self.k
        rows = []
        for sid in X.order:
            dim = X.dims[sid]
            if dim == 0:
                continue
            src = apl_algebra(dim)
            for i in range(dim + 1):
                f = X.faces[sid][i]
                # coordinates in A_PL,dim-1 of: face_i(w_sid) - (degeneracies applied to w_base)
                cols: dict[int, dict] = {}
                for c, m in enumerate(self.bases[sid]):
                    img = face(PolyForm(dim, src.monomial(m)), i)
                    cols[self.offsets[sid] + c] = self._face_coords(dim - 1, img.element)
                bdim = X.dims[f.base]
                bsrc = apl_algebra(bdim)
                for c, m in enumerate(self.bases[f.base]):
                    w = PolyForm(bdim, bsrc.monomial(m))
                    for j in reversed(f.degeneracies):
                        w = degeneracy(w, j)
                    idx = self.offsets[f.base] + c
                    acc = cols.setdefault(idx, {})
                    for r, v in self._face_coords(dim - 1, w.element).items():
                        acc[r] = acc.get(r, 0) - v
                nrows = len(apl_algebra(dim - 1, self.bound).basis_in_degree(k)) if k <= dim - 1 else 0
                block = [[Fraction(0)] * self.size for _ in range(nrows)]
                for c, col in cols.items():
                    for r, v in col.items():
                        block[r][c] += v
                rows.extend(r for r in block if any(r))
        if rows:
            red, pivots = graded.rref(rows)
        else:
            pivots = []
        self.free = [c for c in range(self.size) if c not in set(pivots)]
        self.basis = graded.nullspace(rows, self.size) if rows else [
            [Fraction(int(i == j)) for i in range(self.size)] for j in range(self.size)
        ]

    def section(self, vec) -> AplSection:
        forms = {}
        for sid in self.X.order:
            dim = self.X.dims[sid]
            alg = apl_algebra(dim)
            e = alg.zero()
            off = self.offsets[sid]
            for c, m in enumerate(self.bases[sid]):
                if vec[off + c]:
                    e = e + alg.monomial(m).scale(vec[off + c])
            forms[sid] = PolyForm(dim, e)
        return AplSection(self.X, forms)

    def coordinates(self, vec) -> list[Fraction]:
        return [vec[f] for f in self.free]

    def d_vector(self, vec, target: "_SectionSystem") -> list[Fraction]:
        out = [Fraction(0)] * target.size
        for sid in self.X.order:
            dim = self.X.dims[sid]
            alg = apl_algebra(dim, self.bound)
            off, toff = self.offsets[sid], target.offsets[sid]
            tindex = {m: i for i, m in enumerate(target.bases[sid])}
            for c, m in enumerate(self.bases[sid]):
                x = vec[off + c]
                if not x:
                    continue
                for mm, v in alg.d_monomial(m).items():
                    out[toff + tindex[mm]] += x * v
        return out


def sections(X: FiniteSimplicialSet, form_degree: int, bound: int) -> list[AplSection]:
    """Basis of the degree-``form_degree`` sections with word length at most ``bound``."""
    sys_ = _SectionSystem(X, form_degree, bound)
    return [sys_.section(v) for v in sys_.basis]


def section_complex(X: FiniteSimplicialSet, up_to: int, bound: int) -> graded.CochainComplexSlice:
    top = min(up_to, X.dimension) + 1
    systems = {k: _SectionSystem(X, k, bound) for k in range(0, top + 1)}
    pieces = {k: tuple((k, i) for i in range(len(s.basis))) for k, s in systems.items()}
    entries = {}
    for k in range(0, top):
        src, tgt = systems[k], systems[k + 1]
        for i, v in enumerate(src.basis):
            coords = tgt.coordinates(src.d_vector(v, tgt))
            entries[(k, i)] = [((k + 1, j), c) for j, c in enumerate(coords) if c]
    basis = graded.GradedBasis(pieces, lo=-1, hi=top)
    return graded.CochainComplexSlice(basis, graded.LinearMap(basis, basis, 1, entries), -1, top)


def sections_cohomology(X: FiniteSimplicialSet, up_to: int, bound: int) -> dict[int, int]:
    """``dim H^k`` of the bounded section complex for ``0 <= k <= up_to``."""
    sl = section_complex(X, up_to, bound)
    out = {}
    for k in range(0, up_to + 1):
        out[k] = graded.cohomology_dim(sl, k) if k < sl.hi else 0
    return out
