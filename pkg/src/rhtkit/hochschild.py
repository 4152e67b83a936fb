"""Truncated normalized Hochschild complexes of CDGAs.

A word ``a0[a1|...|ap]`` has ``a0`` in the monomial basis of ``A`` and
``a1..ap`` in the positive-degree basis.  Degrees are reported
cohomologically: ``deg = |a0| + ... + |ap| - p``, which lines the tables up
with the cohomology of the free loop space.  With ``e_i = |a_i|`` and
``eps_i = e0 + (e1 - 1) + ... + (ei - 1)``::

    d(a0[..]) = d a0[..] - sum_i (-1)^eps_(i-1) a0[..|d ai|..]
    b(a0[..]) = (-1)^e0 a0 a1[a2|..] + sum_i (-1)^eps_i a0[..|ai a(i+1)|..]
                - (-1)^((ep - 1) eps_(p-1)) ap a0[a1|..|a(p-1)]

Both have degree +1 and anticommute.  Words of length at most ``P`` span a
subcomplex, since ``b`` shortens words and ``d`` keeps their length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from . import graded
from .cdga import CdgaPresentation
from .errors import DegreeRangeError, UnsupportedInputError

DEGREE_CONVENTION = "degree = sum of factor degrees - word length (cohomological)"

Word = tuple  # (a0, a1, ..., ap), each a monomial exponent tuple


def _add(acc: dict, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _eps(degs) -> list[int]:
    out = [degs[0]]
    for e in degs[1:]:
        out.append(out[-1] + e - 1)
    return out


def internal_d(alg: CdgaPresentation, w: Word) -> dict:
    """The differential induced by ``d`` on a word, as ``{word: coefficient}``."""
    degs = [alg.mono_degree(m) for m in w]
    eps = _eps(degs)
    out: dict = {}
    for i, m in enumerate(w):
        sign = 1 if i == 0 else -((-1) ** (eps[i - 1] % 2))
        for mm, c in alg.d_monomial(m).items():
            _add(out, w[:i] + (mm,) + w[i + 1:], sign * c)
    return out


def hochschild_b(alg: CdgaPresentation, w: Word) -> dict:
    """The Hochschild boundary of a normalized word; empty for words of length 0."""
    p = len(w) - 1
    out: dict = {}
    if p == 0:
        return out
    degs = [alg.mono_degree(m) for m in w]
    eps = _eps(degs)
    for i in range(p):
        sign = (-1) ** (degs[0] % 2) if i == 0 else (-1) ** (eps[i] % 2)
        for mm, c in alg.mono_product(w[i], w[i + 1]).items():
            _add(out, w[:i] + (mm,) + w[i + 2:], sign * c)
    sign = -((-1) ** (((degs[p] - 1) * eps[p - 1]) % 2))
    for mm, c in alg.mono_product(w[p], w[0]).items():
        _add(out, (mm,) + w[1:p], sign * c)
    return out


def total_differential(alg: CdgaPresentation, w: Word) -> dict:
    out = internal_d(alg, w)
    for k, c in hochschild_b(alg, w).items():
        _add(out, k, c)
    return out


def word_degree(alg: CdgaPresentation, w: Word) -> int:
    return sum(alg.mono_degree(m) for m in w) - (len(w) - 1)


def format_word(alg: CdgaPresentation, w: Word) -> str:
    from .expr import format_monomial

    names = [format_monomial(alg, m) or "1" for m in w]
    return f"{names[0]}[{'|'.join(names[1:])}]"


class HochschildComplex:
    """Words of length ``<= max_length`` in total degrees ``0..max_degree + 1``."""

    def __init__(self, p: CdgaPresentation, max_length: int, max_degree: int):
        if max_length < 0 or max_degree < 0:
            raise DegreeRangeError("max_length and max_degree must be non-negative")
        if p.poly_degree_bound is not None or any(g.degree <= 0 for g in p.generators):
            raise UnsupportedInputError("the Hochschild complex needs all generators in positive degree")
        self.max_length = max_length
        self.max_degree = max_degree
        top = max_degree + 1 + max_length  # largest factor degree that can occur
        self.alg = p if p.truncation > top else p.replace(truncation=top + 1)
        self._words: dict[int, tuple] = {}
        self._bases: dict[int, tuple] = {}

    def _basis(self, k: int) -> tuple:
        if k not in self._bases:
            self._bases[k] = tuple(self.alg.basis_in_degree(k))
        return self._bases[k]

    def words(self, k: int) -> tuple:
        """Basis words of total degree ``k``, deterministic order (length, degrees, monomials)."""
        if k in self._words:
            return self._words[k]
        out = []
        if k >= 0:
            for p in range(self.max_length + 1):
                for degs in _compositions(k + p, p):
                    pools = [self._basis(degs[0])] + [self._basis(e) for e in degs[1:]]
                    out.extend(cartesian(*pools))
        self._words[k] = tuple(out)
        return self._words[k]

    def index(self, k: int) -> dict:
        return {w: i for i, w in enumerate(self.words(k))}

    def columns(self, k: int, which: str = "total") -> list[dict]:
        fn = {"total": total_differential, "b": hochschild_b, "d": internal_d}[which]
        tindex = self.index(k + 1)
        cols = []
        for w in self.words(k):
            col = {}
            for ww, c in fn(self.alg, w).items():
                col[tindex[ww]] = c
            cols.append(col)
        return cols

    def rank(self, k: int) -> int:
        if k < 0:
            return 0
        return graded.sparse_rank(self.columns(k))

    def dim(self, k: int) -> int:
        return len(self.words(k))

    def homology_dims(self) -> dict[int, int]:
        ranks = {k: self.rank(k) for k in range(0, self.max_degree + 1)}
        return {
            k: self.dim(k) - ranks[k] - ranks.get(k - 1, 0) for k in range(0, self.max_degree + 1)
        }

    def square_zero(self, which: str = "total", up_to: int | None = None) -> bool:
        """Exhaustive check of ``b^2``, ``d^2`` or ``(b + d)^2 = 0`` on every word."""
        fn = {"total": total_differential, "b": hochschild_b, "d": internal_d}[which]
        for k in range(0, (self.max_degree if up_to is None else up_to) + 1):
            for w in self.words(k):
                if _compose(self.alg, fn, fn, w):
                    return False
        return True

    def anticommute(self, up_to: int | None = None) -> bool:
        """``b d + d b = 0`` on every word."""
        for k in range(0, (self.max_degree if up_to is None else up_to) + 1):
            for w in self.words(k):
                acc = _compose(self.alg, hochschild_b, internal_d, w)
                for key, c in _compose(self.alg, internal_d, hochschild_b, w).items():
                    _add(acc, key, c)
                if acc:
                    return False
        return True


def _compose(alg, f, g, w) -> dict:
    out: dict = {}
    for w1, c1 in g(alg, w).items():
        for w2, c2 in f(alg, w1).items():
            _add(out, w2, c1 * c2)
    return out


def _compositions(total: int, p: int):
    """Degree vectors ``(e0, e1..ep)`` with ``e0 >= 0``, ``ei >= 1`` and sum ``total``."""
    if p == 0:
        yield (total,)
        return
    for e0 in range(0, total - p + 1):
        for rest in _positive_compositions(total - e0, p):
            yield (e0,) + rest


def _positive_compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for e in range(1, total - parts + 2):
        for rest in _positive_compositions(total - e, parts - 1):
            yield (e,) + rest


@dataclass
class HochschildResult:
    dims: dict[int, int]
    stable: dict[int, bool]
    max_length: int
    max_degree: int
    complete: dict[int, bool] = field(default_factory=dict)
    convention: str = DEGREE_CONVENTION

    def flag(self, k: int) -> str:
        return "stable" if self.stable[k] else "truncation-limited"

    def stable_dims(self) -> dict[int, int]:
        return {k: v for k, v in self.dims.items() if self.stable[k]}

    def rows(self) -> list[tuple[int, int, str]]:
        return [(k, self.dims[k], self.flag(k)) for k in sorted(self.dims)]


def hochschild_homology(p: CdgaPresentation, max_degree: int, max_length: int) -> HochschildResult:
    """Dimensions of ``HH`` in degrees ``0..max_degree`` from words of length ``<= max_length``.

    A degree is flagged stable when the dimension does not change with
    ``max_length + 1``; ``complete`` marks the degrees the truncation cannot
    affect at all.
    """
    dims = HochschildComplex(p, max_length, max_degree).homology_dims()
    more = HochschildComplex(p, max_length + 1, max_degree).homology_dims()
    stable = {k: dims[k] == more[k] for k in dims}
    complete = {k: max_length >= longest_word(p, k + 1) for k in dims}
    return HochschildResult(dims, stable, max_length, max_degree, complete)


def longest_word(p: CdgaPresentation, k: int) -> float:
    """Upper bound on the length of a word of degree ``k`` (infinite with degree-1 generators).

    When ``max_length`` reaches this bound for ``k + 1``, the truncation does
    not touch degree ``k`` and its dimension is exact, not merely stable.
    """
    r = min((g.degree for g in p.generators), default=None)
    if r is None:
        return 0
    if r <= 1:
        return float("inf")
    return max(k, 0) // (r - 1)


@dataclass
class LoopSpaceTable:
    space: str
    result: HochschildResult
    header: str = field(default="")

    def __post_init__(self):
        if not self.header:
            self.header = (
                f"ranks of the cohomology of the free loop space of {self.space}; "
                f"{self.result.convention}; word length <= {self.result.max_length}"
            )

    def rows(self):
        return self.result.rows()

    def format(self) -> str:
        lines = [self.header, "degree  rank  flag"]
        for k, d, f in self.rows():
            lines.append(f"{k:>6}  {d:>4}  {f}")
        return "\n".join(lines)


def loop_space_table(model, max_degree: int, max_length: int, space: str | None = None) -> LoopSpaceTable:
    """Run :func:`hochschild_homology` on a minimal model and label the result."""
    p = model.model.underlying if hasattr(model, "model") else getattr(model, "underlying", model)
    name = space or p.name or "the modeled space"
    return LoopSpaceTable(name, hochschild_homology(p, max_degree, max_length))
