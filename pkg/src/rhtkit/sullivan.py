"""Sullivan algebras, minimal models and homotopy ranks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import graded
from .cdga import (
    CdgaMorphism,
    CdgaPresentation,
    Element,
    QuasiIsoReport,
    cohomology,
    is_quasi_iso_up_to,
)
from .errors import DegreeRangeError, UnsupportedInputError


@dataclass
class SullivanModel:
    """A free presentation together with the order in which generators were adjoined."""

    underlying: CdgaPresentation
    generator_order: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.generator_order:
            self.generator_order = tuple(g.name for g in self.underlying.generators)
        self.generator_order = tuple(self.generator_order)
        if sorted(self.generator_order) != sorted(self.underlying.index):
            raise ValueError("generator_order must list every generator exactly once")

    def generator_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for g in self.underlying.generators:
            counts[g.degree] = counts.get(g.degree, 0) + 1
        return dict(sorted(counts.items()))


def is_sullivan(m: SullivanModel) -> bool:
    """``d v`` only involves generators strictly earlier than ``v`` in the order."""
    p = m.underlying
    if p.relations:
        return False
    rank = {name: i for i, name in enumerate(m.generator_order)}
    for name in m.generator_order:
        for mono in p.d_of(name).terms:
            for g, e in zip(p.generators, mono):
                if e and rank[g.name] >= rank[name]:
                    return False
    return True


def is_minimal(m: SullivanModel) -> bool:
    """``d`` lands in products of two or more generators."""
    p = m.underlying
    return all(sum(mono) >= 2 for g in p.generators for mono in p.d_of(g.name).terms)


@dataclass
class MinimalModelResult:
    model: SullivanModel
    quasi_iso: CdgaMorphism
    verified_degree: int
    report: QuasiIsoReport | None = field(default=None, repr=False)


class _Builder:
    """Mutable state of the degree-by-degree construction."""

    def __init__(self, target: CdgaPresentation, truncation: int):
        self.target = target
        self.truncation = truncation
        self.gens: list[tuple[str, int]] = []
        self.diffs: list[dict] = []  # over the generator prefix at insertion time
        self.images: list[Element] = []
        self.counter: dict[int, int] = {}
        self.rebuild()

    def rebuild(self):
        n = len(self.gens)
        diff = {}
        for (name, _), terms in zip(self.gens, self.diffs):
            diff[name] = {m + (0,) * (n - len(m)): c for m, c in terms.items()}
        self.model = CdgaPresentation(self.gens, diff, truncation=self.truncation, validate=False)
        self.phi = CdgaMorphism(
            self.model,
            self.target,
            {name: img for (name, _), img in zip(self.gens, self.images)},
            validate=False,
        )

    def new_name(self, degree: int) -> str:
        self.counter[degree] = self.counter.get(degree, 0) + 1
        return f"v{degree}_{self.counter[degree]}"

    def adjoin(self, degree: int, d_terms: dict, image: Element):
        self.gens.append((self.new_name(degree), degree))
        self.diffs.append(d_terms)
        self.images.append(image)


def _check_simply_connected(target: CdgaPresentation):
    h = cohomology(target, 1)
    if h.dims[0] != 1:
        raise UnsupportedInputError(f"target is not connected: dim H^0 = {h.dims[0]}")
    if h.dims[1] != 0:
        raise UnsupportedInputError(f"target is not simply connected: dim H^1 = {h.dims[1]}")


def minimal_model(target: CdgaPresentation, up_to: int) -> MinimalModelResult:
    """Minimal Sullivan model of a simply connected target, through degree ``up_to``.

    Stage ``k`` first adjoins closed generators of degree ``k`` hitting a
    complement of the image of ``H^k``, then degree-``k`` generators whose
    differentials kill the kernel of ``H^(k+1)``.  All choices come from
    deterministic elimination.
    """
    if target.truncation < up_to + 2:
        raise DegreeRangeError(
            f"target must be truncated at >= {up_to + 2} to build the model through degree {up_to}"
        )
    _check_simply_connected(target)
    b = _Builder(target, up_to + 2)
    for k in range(2, up_to + 1):
        _hit_cokernel(b, k)
        _kill_kernel(b, k)
    model = SullivanModel(b.model.replace(validate=True), tuple(name for name, _ in b.gens))
    phi = CdgaMorphism(model.underlying, target, dict(b.phi.images))
    report = is_quasi_iso_up_to(phi, up_to)
    assert report.ok, report
    return MinimalModelResult(model, phi, up_to, report)


def _hit_cokernel(b: _Builder, k: int):
    tgt, model, phi = b.target, b.model, b.phi
    eb = graded.EchelonBasis()
    for col in tgt.coboundary_columns(k):
        eb.add(col)
    for z in model.cocycles(k):
        eb.add(tgt.vector(phi(z), k))
    added = False
    for z in tgt.cocycles(k):
        if eb.add(tgt.vector(z, k)):
            b.adjoin(k, {}, z)
            added = True
    if added:
        b.rebuild()


def _kill_kernel(b: _Builder, k: int):
    tgt, model, phi = b.target, b.model, b.phi
    zs = model.cocycles(k + 1)
    if not zs:
        return
    tbasis_k = tgt.basis_in_degree(k)
    nrows = len(tgt.basis_in_degree(k + 1))
    cols = [graded.sparse_to_dense(tgt.vector(phi(z), k + 1), nrows) for z in zs]
    cols += [graded.sparse_to_dense(c, nrows) for c in tgt.d_columns(k)]
    if nrows == 0:
        null = [[Fraction(int(i == j)) for i in range(len(cols))] for j in range(len(cols))]
    else:
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
        null = graded.nullspace(mat, len(cols))
    eb = graded.EchelonBasis()
    for col in model.coboundary_columns(k + 1):
        eb.add(col)
    added = False
    r = len(zs)
    for v in null:
        coeffs, pre = v[:r], v[r:]
        if not any(coeffs):
            continue
        z = model.zero()
        for c, zz in zip(coeffs, zs):
            if c:
                z = z + zz.scale(c)
        if not eb.add(model.vector(z, k + 1)):
            continue
        # phi(z) + d(sum pre_j a_j) = 0, so phi(z) = d(a) with a = -sum pre_j a_j
        a = tgt.zero()
        for c, m in zip(pre, tbasis_k):
            if c:
                a = a + tgt.monomial(m).scale(-c)
        b.adjoin(k, dict(z.terms), a)
        added = True
    if added:
        b.rebuild()


def homotopy_ranks(r: MinimalModelResult) -> dict[int, int]:
    """``dim V^k`` for ``k <= verified_degree``; zero ranks are omitted."""
    counts = r.model.generator_counts()
    return {k: v for k, v in counts.items() if k <= r.verified_degree and v}


def cohomology_algebra(p: CdgaPresentation, up_to: int, name: str | None = None) -> CdgaPresentation:
    """``(H(p), d = 0)`` through degree ``up_to`` as a presentation.

    One generator per basis class in positive degrees; relations are the
    multiplication table, and products above ``up_to`` are set to zero.
    """
    h = cohomology(p, up_to)
    gens = []
    reps = []
    for grp in h.groups:
        if grp.degree == 0:
            continue
        for i, rep in enumerate(grp.representatives):
            gens.append((f"h{grp.degree}_{i + 1}", grp.degree))
            reps.append((grp.degree, i, rep))
    scratch = CdgaPresentation(gens, truncation=up_to + 1, validate=False)
    relations = []
    for a in range(len(reps)):
        for bb in range(a, len(reps)):
            (i, ia, _), (j, jb, _) = reps[a], reps[bb]
            x, y = scratch.gen(gens[a][0]), scratch.gen(gens[bb][0])
            prod = x * y
            if prod.is_zero():
                continue  # odd square
            if i + j > up_to:
                relations.append(prod)
                continue
            coords = h.cup(i, ia, j, jb)
            rhs = scratch.zero()
            for c, (name_, deg) in zip(coords, [g for g in gens if g[1] == i + j]):
                if c:
                    rhs = rhs + scratch.gen(name_).scale(c)
            relations.append(prod - rhs)
    return CdgaPresentation(
        gens, {}, relations, truncation=up_to + 1, name=name or f"H({p.name or 'A'})"
    )


@dataclass
class FormalityEvidence:
    """Comparison of the minimal models of ``p`` and of its cohomology algebra."""

    up_to: int
    agrees: bool
    counts: dict[int, int]
    cohomology_counts: dict[int, int]
    matching: dict[str, Fraction] | None
    label: str = "formality evidence up to degree n (not a proof of formality)"

    def __bool__(self):
        return self.agrees


def _diagonal_matching(m1: SullivanModel, m2: SullivanModel) -> dict[str, Fraction] | None:
    """Scalars ``l_i`` with ``v_i -> l_i w_i`` a CDGA isomorphism, if order-matching works."""
    p1, p2 = m1.underlying, m2.underlying
    if [g.degree for g in p1.generators] != [g.degree for g in p2.generators]:
        return None
    scale: dict[str, Fraction] = {}
    images: dict[str, Element] = {}
    for g1, g2 in zip(p1.generators, p2.generators):
        dv = p1.d_of(g1.name)
        # image of d v under the partial map (only earlier generators occur)
        acc = p2.zero()
        for mono, c in dv.terms.items():
            term = p2.scalar(c)
            for gg, e in zip(p1.generators, mono):
                for _ in range(e):
                    term = term * images[gg.name]
            acc = acc + term
        dw = p2.d_of(g2.name)
        if dw.is_zero():
            if not acc.is_zero():
                return None
            lam = Fraction(1)
        else:
            lead = next(iter(sorted(dw.terms)))
            lam = acc.coefficient(lead) / dw.terms[lead]
            if lam == 0 or acc != dw.scale(lam):
                return None
        scale[g1.name] = lam
        images[g1.name] = p2.gen(g2.name).scale(lam)
    return scale


def formal_up_to(p: CdgaPresentation, n: int) -> FormalityEvidence:
    """Compare minimal models of ``p`` and ``(H(p), 0)`` through degree ``n``."""
    if p.truncation < n + 2:
        raise DegreeRangeError(f"need truncation >= {n + 2}")
    m_p = minimal_model(p, n)
    h = cohomology_algebra(p, n + 1)
    m_h = minimal_model(h, n)
    c1 = m_p.model.generator_counts()
    c2 = m_h.model.generator_counts()
    matching = _diagonal_matching(m_p.model, m_h.model) if c1 == c2 else None
    return FormalityEvidence(n, c1 == c2 and matching is not None, c1, c2, matching)


def model_from_generators(
    generators: Sequence[tuple[str, int]], differential: dict, truncation: int
) -> SullivanModel:
    p = CdgaPresentation(generators, differential, truncation=truncation)
    return SullivanModel(p, tuple(g for g, _ in generators))
