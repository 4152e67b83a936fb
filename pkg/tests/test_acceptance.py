"""Acceptance suite: one test per criterion, each with its time budget."""

import io
import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import bundled, presentation
from golden.generate import CASES, render
from oracles import hochschild_oracle
from oracles.cdga_oracle import WordAlgebra
from rhtkit.apl import (
    IDENTITY_FAMILIES,
    boundary_of_simplex,
    component_cohomology,
    random_form,
    sections_cohomology,
    stokes_check,
    verify_simplicial_identities,
)
from rhtkit.cdga import Element
from rhtkit.cli import run
from rhtkit.hochschild import HochschildComplex, hochschild_homology
from rhtkit.sullivan import homotopy_ranks, minimal_model
from rhtkit.whitney import (
    PointSet,
    homotopy_defect,
    jet_of,
    jet_product,
    random_euclidean_form,
    random_polynomial,
    remainder,
    to_divided,
)

GOLDEN = Path(__file__).parent / "golden"


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


def cli_json(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(["--json", *argv], out, err)
    assert code == 0, err.getvalue()
    return json.loads(out.getvalue())


def ranks_of(report):
    return {r["degree"]: r["rank"] for r in report["results"]["ranks"]}


@pytest.mark.criterion(1, "S2 pipeline: minimal model and homotopy ranks of H(S2)")
def test_criterion_01_s2_pipeline():
    with Budget(5):
        r = minimal_model(presentation("h_s2"), 8)
        counts = r.model.generator_counts()
        assert {k: counts.get(k, 0) for k in range(1, 9)} == {k: int(k in (2, 3)) for k in range(1, 9)}
        assert homotopy_ranks(r) == {2: 1, 3: 1}
        assert ranks_of(cli_json("homotopy-ranks", "h_s2.cdga", "--up-to", "8")) == {2: 1, 3: 1}
        mm = cli_json("minimal-model", "h_s2.cdga", "--up-to", "8")
        assert sorted(g["degree"] for g in mm["results"]["generators"]) == [2, 3]


@pytest.mark.criterion(2, "S3 and S4 pipelines up to degree 10")
def test_criterion_02_s3_s4():
    with Budget(10):
        assert homotopy_ranks(minimal_model(presentation("s3"), 10)) == {3: 1}
        assert homotopy_ranks(minimal_model(presentation("h_s4"), 10)) == {4: 1, 7: 1}
        assert ranks_of(cli_json("homotopy-ranks", "h_s4.cdga", "--up-to", "10")) == {4: 1, 7: 1}


LAW_PRESENTATIONS = ["s2", "h_s2", "s3", "h_s4", "cp2", "s3_acyclic", "s2xs2", "point"]


def random_element(p, rng, max_degree):
    degrees = [k for k in range(0, max_degree + 1) if p.basis_in_degree(k)]
    k = rng.choice(degrees)
    basis = p.basis_in_degree(k)
    terms = {m: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for m in rng.sample(basis, min(3, len(basis)))}
    return Element(p, terms), k


@pytest.mark.criterion(3, "CDGA laws: 1000 randomized checks of each law")
def test_criterion_03_cdga_laws():
    rng = random.Random(20261018)
    algebras = [presentation(n) for n in LAW_PRESENTATIONS]
    failures = {"commutativity": 0, "associativity": 0, "leibniz": 0, "d_squared": 0}
    with Budget(30):
        for _ in range(1000):
            p = rng.choice(algebras)
            top = p.truncation // 3
            a, i = random_element(p, rng, top)
            b, j = random_element(p, rng, top)
            c, _ = random_element(p, rng, top)
            if a * b != (b * a).scale((-1) ** (i * j)):
                failures["commutativity"] += 1
            if (a * b) * c != a * (b * c):
                failures["associativity"] += 1
            if (a * b).d() != a.d() * b + (a * b.d()).scale((-1) ** i):
                failures["leibniz"] += 1
            if not a.d().d().is_zero():
                failures["d_squared"] += 1
    assert failures == dict.fromkeys(failures, 0)


@pytest.mark.criterion(4, "simplicial identities of A_PL, all families, n <= 4")
def test_criterion_04_simplicial_identities():
    with Budget(10):
        report = verify_simplicial_identities(4)
    assert report.passed, report.failures[:5]
    assert {c.identity for c in report.checks} == set(IDENTITY_FAMILIES)
    assert len(IDENTITY_FAMILIES) == 5
    assert {c.n for c in report.checks} >= {1, 2, 3, 4}


@pytest.mark.criterion(5, "Stokes: 200 random forms for each n in 1..3")
def test_criterion_05_stokes():
    rng = random.Random(5)
    bad = []
    with Budget(60):
        for n in (1, 2, 3):
            for _ in range(200):
                w = random_form(n, n - 1, 5, rng)
                r = stokes_check(w)
                if not r.equal:
                    bad.append((n, str(w), r))
    assert bad == []


@pytest.mark.criterion(6, "A_PL acyclicity of total-degree components, n <= 3")
def test_criterion_06_acyclicity():
    with Budget(30):
        for n in (1, 2, 3):
            assert component_cohomology(n, 0)[0] == 1
            assert all(v == 0 for k, v in component_cohomology(n, 0).items() if k > 0)
            for T in range(1, 7):
                assert component_cohomology(n, T) == dict.fromkeys(range(n + 1), 0), (n, T)


@pytest.mark.criterion(7, "circle model: sections over the boundary of the 2-simplex")
def test_criterion_07_circle():
    with Budget(10):
        X = boundary_of_simplex(2)
        for D in (2, 3, 4, 5):
            assert sections_cohomology(X, 1, D) == {0: 1, 1: 1}, D
        report = cli_json("apl-sections", "circle.sset", "--up-to", "1", "--bound", "2")
        dims = {r["degree"]: r["dimension"] for r in report["results"]["cohomology"]}
        assert dims == {0: 1, 1: 1}


STAR_SHAPED = ["++", "+*", "0+|+0", "++*|0-*", "+-0|*0+|0*-", "***", "+0*|-*0|0++"]


@pytest.mark.criterion(8, "Poincare homotopy identity and quadrant cohomology")
def test_criterion_08_poincare():
    rng = random.Random(8)
    bad = []
    with Budget(60):
        for _ in range(500):
            n = rng.randint(1, 4)
            k = rng.randint(0, n)
            w = random_euclidean_form(n, k, 6, rng)
            if homotopy_defect(w).terms:
                bad.append(str(w))
        for spec in STAR_SHAPED:
            report = cli_json("quadrant-poincare", spec, "--up-to", "3", "--bound", "3")
            dims = [r["dimension"] for r in report["results"]["cohomology"]]
            assert dims == [1, 0, 0, 0], spec
    assert bad == []


def random_points(n, rng, count=3):
    pts = set()
    while len(pts) < count:
        pts.add(tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)))
    return PointSet(sorted(pts))


@pytest.mark.criterion(9, "jets: homomorphism, remainder vanishing, divided-power agreement")
def test_criterion_09_jets():
    rng = random.Random(9)
    bad = []
    with Budget(30):
        for _ in range(500):
            n, m = rng.randint(1, 3), rng.randint(0, 4)
            X = random_points(n, rng)
            f = random_polynomial(n, 3, rng)
            g = random_polynomial(n, 3, rng)
            F, G = jet_of(f, X, m), jet_of(g, X, m)
            if jet_product(F, G) != jet_of(f * g, X, m):
                bad.append(("homomorphism", n, m))
            if to_divided(jet_product(F, G)) != jet_product(to_divided(F), to_divided(G)):
                bad.append(("divided", n, m))
            k = rng.randint(0, m)
            h = random_polynomial(n, k, rng)
            H = jet_of(h, X, m)
            if any(not remainder(H, x, k).is_zero() for x in X):
                bad.append(("remainder", n, m, k))
    assert bad == []


@pytest.mark.criterion(10, "Hochschild: b^2 = 0, HH of the 3-sphere model, invariance")
def test_criterion_10_hochschild():
    with Budget(120):
        s3 = presentation("s3")
        for P in (0, 1, 2, 3):
            cx = HochschildComplex(s3, P, 9)
            assert cx.square_zero("b") and cx.square_zero("d") and cx.square_zero("total")
        res = hochschild_homology(s3, 8, 4)
        assert all(res.stable.values())
        expected = {0: 1, 1: 0, **{k: 1 for k in range(2, 9)}}
        assert res.stable_dims() == expected
        oracle = hochschild_oracle.homology_dims(WordAlgebra([("x", 3)]), 8, 4)
        assert oracle == expected
        ext = hochschild_homology(presentation("s3_acyclic"), 6, 3)
        for k in range(7):
            assert ext.stable[k], k
            assert ext.dims[k] == res.dims[k], k


@pytest.mark.criterion(11, "determinism: golden reports byte-identical across two runs")
def test_criterion_11_determinism():
    for name, argv in CASES.items():
        first, second = render(argv), render(argv)
        assert first == second, name
        assert first == (GOLDEN / f"{name}.json").read_text(encoding="utf-8"), name
