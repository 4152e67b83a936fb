"""Exact linear algebra over graded vector spaces.

Everything here works over :class:`fractions.Fraction`; there is no tolerance
anywhere.  Vectors are either dense lists (aligned with a basis) or sparse
``{index: Fraction}`` dicts.  Elimination is deterministic: the pivot of a
column is the first row, in input order, with a nonzero entry there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from heapq import heapify, heappop, heappush
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import BoundaryError, DegreeRangeError, PresentationError

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_rows(matrix) -> list[list[Fraction]]:
    if isinstance(matrix, Mapping):
        # sparse {(i, j): value}
        if not matrix:
            return []
        nrows = max(i for i, _ in matrix) + 1
        ncols = max(j for _, j in matrix) + 1
        rows = [[ZERO] * ncols for _ in range(nrows)]
        for (i, j), v in matrix.items():
            rows[i][j] = Fraction(v)
        return rows
    return [[Fraction(v) for v in row] for row in matrix]


def rref(matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns.

    ``matrix`` is a list of rows or a sparse ``{(row, col): value}`` mapping.

    >>> rref([[0, 1], [1, 0]])[0] == [[1, 0], [0, 1]]
    True
    """
    rows = _as_rows(matrix)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        src = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        prow = rows[r]
        inv = ONE / prow[col]
        if inv != 1:
            prow[:] = [v * inv for v in prow]
        for i, row in enumerate(rows):
            if i != r and row[col] != 0:
                f = row[col]
                rows[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : matrix @ v = 0}``, one vector per free column of the rref."""
    rows, pivots = rref(matrix)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for r, p in enumerate(pivots):
            v[p] = -rows[r][free]
        basis.append(v)
    return basis


class EchelonBasis:
    """Incrementally grown echelon basis of a subspace of ``Q^N``.

    Vectors are sparse dicts.  Used for ranks of large sparse maps and for
    greedy completions ("add this vector if it is new modulo the span").
    """

    def __init__(self):
        self._rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        v = {k: Fraction(x) for k, x in vec.items() if x != 0}
        rows = self._rows
        done = -1
        while True:
            cand = [c for c in v if c > done and c in rows]
            if not cand:
                return v
            c = min(cand)
            f = v[c]
            for k, x in rows[c].items():
                nv = v.get(k, ZERO) - f * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            done = c

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Insert ``vec``; return whether it was independent of the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = ONE / v[p]
        self._rows[p] = {k: x * inv for k, x in v.items()}
        return True

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def copy(self) -> "EchelonBasis":
        out = EchelonBasis()
        out._rows = {p: dict(r) for p, r in self._rows.items()}
        return out


def _integral(vec: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for x in vec.values():
        den = lcm(den, Fraction(x).denominator)
    out = {k: int(Fraction(x) * den) for k, x in vec.items() if x != 0}
    g = reduce(gcd, out.values(), 0)
    if g > 1:
        out = {k: x // g for k, x in out.items()}
    return out


def sparse_rank(vectors: Iterable[Mapping[int, Fraction]]) -> int:
    """Rank over Q by fraction-free elimination on primitive integer rows."""
    rows: dict[int, dict[int, int]] = {}
    for vec in vectors:
        w = _integral(vec)
        heap = list(w)
        heapify(heap)
        last = -1
        while heap:
            c = heappop(heap)
            if c <= last or c not in w:
                continue
            last = c
            row = rows.get(c)
            if row is None:
                rows[c] = w
                break
            a, b = w[c], row[c]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            if ma != 1:
                for k in w:
                    w[k] *= ma
            for k, x in row.items():
                nv = w.get(k, 0) - mb * x
                if nv:
                    if k not in w:
                        heappush(heap, k)
                    w[k] = nv
                else:
                    w.pop(k, None)
            cg = reduce(gcd, w.values(), 0)
            if cg > 1:
                for k in w:
                    w[k] //= cg
    return len(rows)


def dense_to_sparse(vec: Sequence[Fraction]) -> dict[int, Fraction]:
    return {i: Fraction(x) for i, x in enumerate(vec) if x != 0}


def sparse_to_dense(vec: Mapping[int, Fraction], n: int) -> list[Fraction]:
    out = [ZERO] * n
    for i, x in vec.items():
        out[i] = Fraction(x)
    return out


@dataclass(frozen=True)
class GradedBasis:
    """Per-degree ordered basis labels.

    ``lo``/``hi`` bound the degrees the space is considered over (pieces in
    range but absent from ``pieces`` are zero).
    """

    pieces: Mapping[int, tuple]
    lo: int | None = None
    hi: int | None = None

    def __post_init__(self):
        pieces = {int(k): tuple(v) for k, v in self.pieces.items()}
        for k, labels in pieces.items():
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate basis labels in degree {k}")
        object.__setattr__(self, "pieces", pieces)
        keys = [k for k, v in pieces.items() if v] or [0]
        if self.lo is None:
            object.__setattr__(self, "lo", min(keys))
        if self.hi is None:
            object.__setattr__(self, "hi", max(keys))

    def __getitem__(self, degree: int) -> tuple:
        return self.pieces.get(degree, ())

    def dim(self, degree: int) -> int:
        return len(self[degree])

    def index(self, degree: int) -> dict:
        return {lab: i for i, lab in enumerate(self[degree])}

    def check_degree(self, degree: int):
        if not self.lo <= degree <= self.hi:
            raise DegreeRangeError(f"degree {degree} outside [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class LinearMap:
    """Sparse graded linear map of fixed degree ``shift``.

    ``entries[label]`` lists ``(target_label, coefficient)`` pairs; labels
    must be unique across degrees of the source.
    """

    source: GradedBasis
    target: GradedBasis
    shift: int
    entries: Mapping[Hashable, Sequence[tuple[Hashable, Fraction]]] = field(default_factory=dict)

    def __post_init__(self):
        seen = {}
        for deg, labels in self.source.pieces.items():
            for lab in labels:
                if lab in seen and seen[lab] != deg:
                    raise ValueError(f"label {lab!r} appears in degrees {seen[lab]} and {deg}")
                seen[lab] = deg
        for lab, images in self.entries.items():
            if lab not in seen:
                continue
            tdeg = seen[lab] + self.shift
            tindex = self.target.index(tdeg)
            for tl, _ in images:
                if tl not in tindex:
                    raise ValueError(
                        f"image {tl!r} of {lab!r} is not a target basis label in degree {tdeg}"
                    )

    def columns(self, degree: int) -> list[dict[int, Fraction]]:
        """Images of the degree-``degree`` basis vectors as sparse target vectors."""
        tindex = self.target.index(degree + self.shift)
        cols = []
        for lab in self.source[degree]:
            col: dict[int, Fraction] = {}
            for tl, c in self.entries.get(lab, ()):
                i = tindex[tl]
                v = col.get(i, ZERO) + Fraction(c)
                if v:
                    col[i] = v
                else:
                    col.pop(i, None)
            cols.append(col)
        return cols

    def matrix(self, degree: int) -> list[list[Fraction]]:
        rows = self.target.dim(degree + self.shift)
        cols = self.columns(degree)
        m = [[ZERO] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                m[i][j] = v
        return m

    def apply(self, degree: int, vec: Sequence[Fraction]) -> list[Fraction]:
        out = [ZERO] * self.target.dim(degree + self.shift)
        for x, col in zip(vec, self.columns(degree)):
            if x:
                for i, v in col.items():
                    out[i] += x * v
        return out

    def rank(self, degree: int) -> int:
        return sparse_rank(self.columns(degree))


def kernel_basis(m: LinearMap, degree: int) -> list[list[Fraction]]:
    """Basis of ``ker m`` in ``degree``, ordered by the free columns of the rref."""
    m.source.check_degree(degree)
    n = m.source.dim(degree)
    if n == 0:
        return []
    if m.target.dim(degree + m.shift) == 0:
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    return nullspace(m.matrix(degree), n)


def image_basis(m: LinearMap, degree: int) -> list[list[Fraction]]:
    """Basis of ``im m`` from ``degree``, as target vectors, greedy in source order."""
    n = m.target.dim(degree + m.shift)
    eb = EchelonBasis()
    out = []
    for col in m.columns(degree):
        if eb.add(col):
            out.append(sparse_to_dense(col, n))
    return out


@dataclass(frozen=True)
class CochainComplexSlice:
    """Finite piece ``C^lo -> ... -> C^hi`` of a cochain complex."""

    basis: GradedBasis
    differential: LinearMap
    lo: int
    hi: int
    check: bool = True

    def __post_init__(self):
        if self.differential.shift != 1:
            raise ValueError("a cochain differential has shift +1")
        if self.check:
            for k in range(self.lo, self.hi - 1):
                if not self.square_zero_at(k):
                    raise PresentationError(f"d∘d != 0 starting in degree {k}")

    def square_zero_at(self, k: int) -> bool:
        d = self.differential
        mid = d.columns(k + 1)
        for col in d.columns(k):
            acc: dict[int, Fraction] = {}
            for i, x in col.items():
                for j, y in mid[i].items():
                    acc[j] = acc.get(j, ZERO) + x * y
            if any(acc.values()):
                return False
        return True


def _check_interior(c: CochainComplexSlice, k: int):
    if k <= c.lo:
        raise BoundaryError(
            f"degree {k}: incoming differential d^{k - 1} is not part of the slice [{c.lo}, {c.hi}]"
        )
    if k >= c.hi:
        raise BoundaryError(
            f"degree {k}: outgoing differential d^{k} is not part of the slice [{c.lo}, {c.hi}]"
        )


def cohomology_dim(c: CochainComplexSlice, k: int) -> int:
    """``dim H^k`` by ranks only (no representatives); suitable for large slices."""
    _check_interior(c, k)
    d = c.differential
    return c.basis.dim(k) - d.rank(k) - d.rank(k - 1)


def cohomology_at(c: CochainComplexSlice, k: int) -> tuple[int, list[list[Fraction]]]:
    """Dimension of ``H^k`` and cocycles representing a basis of it.

    Representatives are kernel vectors, taken in rref order, that are new
    modulo the image of ``d^{k-1}`` and the representatives chosen before.
    """
    _check_interior(c, k)
    d = c.differential
    eb = EchelonBasis()
    for col in d.columns(k - 1):
        eb.add(col)
    reps = []
    for z in kernel_basis(d, k):
        if eb.add(dense_to_sparse(z)):
            reps.append(z)
    return len(reps), reps
