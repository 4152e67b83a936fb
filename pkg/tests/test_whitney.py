import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bundled
from oracles import sympy_oracles as O
from rhtkit.errors import MembershipError, ParseError, UnsupportedInputError, UsageError
from rhtkit.whitney import (
    CLASSICAL,
    DIVIDED,
    MIRRORED,
    EuclideanPolyForm,
    PointSet,
    Polynomial,
    Quadrant,
    QuadrantSpec,
    homotopy_defect,
    jet_of,
    jet_product,
    multi_indices,
    poincare_homotopy,
    quadrant_membership,
    quadrant_poincare_report,
    random_euclidean_form,
    random_polynomial,
    remainder,
    seminorm_flat,
    seminorm_whitney,
    taylor_poly,
    to_derivative,
    to_divided,
    whitney_rate_check,
    zero_jet,
)
from rhtkit.whitney.io import format_jet_table, parse_jet_table
from rhtkit.whitney.jets import r_entry

X0 = PointSet([(0,)])


def x1():
    return Polynomial.parse(1, "x")


# -- jets ------------------------------------------------------------------

def test_multi_index_order():
    assert multi_indices(2, 2) == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def test_jet_of_examples():
    assert jet_of(x1() * x1(), X0, 2).row((0,)) == [0, 0, 2]
    assert jet_of(x1(), X0, 2).row((0,)) == [0, 1, 0]
    F = jet_of(Polynomial.parse(2, "x1*x2"), PointSet([(1, 1)]), 1)
    assert F.row((1, 1)) == [1, 1, 1]


def test_jet_product_examples():
    F = jet_of(x1(), X0, 2)
    assert jet_product(F, F) == jet_of(x1() * x1(), X0, 2)
    one = jet_of(Polynomial.constant(1, 1), X0, 2)
    assert jet_product(one, F) == F


def test_jet_mismatch_and_membership():
    F = jet_of(x1(), X0, 2)
    G = jet_of(x1(), PointSet([(1,)]), 2)
    with pytest.raises(UsageError):
        jet_product(F, G)
    with pytest.raises(MembershipError):
        F.at((5,), (0,))


def test_taylor_examples():
    c = jet_of(Polynomial.constant(1, 7), X0, 2)
    assert taylor_poly(c, (0,), 2) == Polynomial.constant(1, 7)
    sq = jet_of(x1() * x1(), X0, 2)
    assert taylor_poly(sq, (0,), 2) == Polynomial.parse(1, "x^2")
    F = jet_of(Polynomial.parse(1, "3 + x"), X0, 2)
    assert taylor_poly(F, (0,), 0) == Polynomial.constant(1, 3)
    # the two conventions differ by a sign on odd orders
    assert taylor_poly(F, (0,), 1, MIRRORED) == Polynomial.parse(1, "3 - x")
    assert taylor_poly(F, (0,), 1, CLASSICAL) == Polynomial.parse(1, "3 + x")


def test_remainder_examples():
    X = PointSet([(0,), (1,)])
    cube = jet_of(x1() ** 3, X, 3)
    R = remainder(cube, (0,), 2)
    assert R.at((1,), (0,)) == 1
    assert r_entry(cube, (0,), (0,), (1,)) == 0  # m = 3 captures x^3 exactly
    for x in X:
        assert all(v == 0 for v in remainder(cube, x, 2).row(x))
    quad = jet_of(x1() ** 2 - x1(), X, 3)
    assert remainder(quad, (1,), 2).is_zero()


def test_seminorm_examples():
    X = PointSet([(0,), (1,)])
    Z = zero_jet(X, 1)
    assert (seminorm_flat(Z, X, 1), seminorm_whitney(Z, X, 1)) == (0, 0)
    assert seminorm_flat(jet_of(x1(), X, 1), X, 0) == 1


def _dyadic_grid(count, denom):
    return [(Fraction(i, denom),) for i in range(-count, count + 1)]


def test_rate_check_polynomial_is_consistent():
    X = PointSet(_dyadic_grid(8, 16))
    rep = whitney_rate_check(jet_of(Polynomial.parse(1, "x^2 - 3*x"), X, 2))
    assert rep.verdict == "consistent"
    assert all(b.max_ratio == 0 for b in rep.buckets)


def test_rate_check_abs_is_violation():
    F = parse_jet_table(bundled("abs_x.jet"))
    assert whitney_rate_check(F, m=1).verdict == "violation"


def test_rate_check_single_scale_insufficient():
    X = PointSet([(0,), (1,)])
    assert whitney_rate_check(jet_of(x1(), X, 1)).verdict == "insufficient"


points = st.lists(st.tuples(st.fractions(-3, 3, max_denominator=4)), min_size=1, max_size=4, unique=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 10**6))
def test_jet_of_matches_sympy(n, m, seed):
    rng = random.Random(seed)
    f = random_polynomial(n, 4, rng)
    pts = PointSet(sorted({tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)) for _ in range(3)}))
    F = jet_of(f, pts, m)
    assert dict(F.values) == O.jet_values(f, list(pts), m, multi_indices(m, n))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 4), st.integers(0, 10**6))
def test_product_homomorphism_and_modes(n, m, seed):
    rng = random.Random(seed)
    f, g = random_polynomial(n, 3, rng), random_polynomial(n, 3, rng)
    pts = PointSet(sorted({tuple(Fraction(rng.randint(-4, 4), 2) for _ in range(n)) for _ in range(3)}))
    F, G = jet_of(f, pts, m), jet_of(g, pts, m)
    assert jet_product(F, G) == jet_of(f * g, pts, m)
    assert jet_product(to_divided(F), to_divided(G)) == jet_of(f * g, pts, m, DIVIDED)
    assert to_derivative(to_divided(F)) == F
    assert seminorm_whitney(F, pts, m) >= seminorm_flat(F, pts, m)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 4), st.integers(0, 10**6))
def test_remainder_vanishes_on_low_degree(n, k, seed):
    rng = random.Random(seed)
    f = random_polynomial(n, k, rng)
    pts = PointSet(sorted({tuple(Fraction(rng.randint(-4, 4), 3) for _ in range(n)) for _ in range(3)}))
    for x in pts:
        assert remainder(jet_of(f, pts, k), x, k).is_zero()
    G = jet_of(random_polynomial(n, k + 2, rng), pts, k)
    for x in pts:
        assert all(v == 0 for v in remainder(G, x, k).row(x))


def test_mirrored_convention_flips_odd_orders():
    # (x - y)^alpha reproduces the jet at the base point only up to (-1)^|alpha|
    X = PointSet([(0,), (1,)])
    F = jet_of(Polynomial.parse(1, "2*x + x^2"), X, 2)
    R = remainder(F, (0,), 2, MIRRORED)
    assert R.row((0,)) == [0, 4, 0]
    assert remainder(F, (0,), 2, CLASSICAL).is_zero()


# -- quadrants -------------------------------------------------------------

def test_quadrant_membership_examples():
    assert quadrant_membership((0, 0), Quadrant(2, zero={1, 2}))
    assert quadrant_membership((1, -1), Quadrant(2, pos={1}, neg={2}))
    assert not quadrant_membership((0, 1), Quadrant(2, pos={1, 2}))
    assert Quadrant.parse("0+*") == Quadrant(3, zero={1}, pos={2})
    spec = QuadrantSpec.parse("++|--")
    assert spec.contains((-1, -2)) and not spec.contains((1, -2))
    assert str(spec) == "++|--"


def test_quadrant_errors():
    with pytest.raises(UsageError):
        Quadrant(2, zero={1}, pos={1})
    with pytest.raises(UsageError):
        Quadrant(2, pos={3})
    with pytest.raises(ParseError):
        Quadrant.parse("+x")
    with pytest.raises(UsageError):
        QuadrantSpec.parse("++|+")


@settings(max_examples=100, deadline=None)
@given(st.text("0+-*", min_size=1, max_size=4), st.data())
def test_membership_agrees_with_signs(signs, data):
    q = Quadrant.parse(signs)
    p = data.draw(st.tuples(*[st.integers(-2, 2)] * len(signs)))
    expected = all(
        (ch == "0" and v == 0) or (ch == "+" and v > 0) or (ch == "-" and v < 0) or ch == "*"
        for ch, v in zip(signs, p)
    )
    assert q.contains(p) == expected
    if expected:
        assert q.closure_contains(p)


# -- forms and the radial homotopy ----------------------------------------

def test_k_examples():
    f = EuclideanPolyForm.function(Polynomial.parse(2, "x1^2*x2 + 3"))
    assert not poincare_homotopy(f).terms
    assert not homotopy_defect(f).terms
    w = EuclideanPolyForm(1, {((1,), (0,)): 1})  # x dx
    assert poincare_homotopy(w) == EuclideanPolyForm(1, {((2,), ()): Fraction(1, 2)})
    assert poincare_homotopy(w).d() == w and not w.d().terms


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6), st.data())
def test_k_matches_pullback_oracle(n, seed, data):
    k = data.draw(st.integers(0, n))
    w = random_euclidean_form(n, k, 4, random.Random(seed))
    K, _ = O.radial_homotopy(w)
    assert K == O.form_to_sympy(poincare_homotopy(w))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6), st.data())
def test_homotopy_identity(n, seed, data):
    k = data.draw(st.integers(0, n))
    w = random_euclidean_form(n, k, 5, random.Random(seed))
    assert not homotopy_defect(w).terms
    assert not poincare_homotopy(poincare_homotopy(w)).terms


@pytest.mark.parametrize(
    "spec, up_to, dims",
    [
        ("++", 2, {0: 1, 1: 0, 2: 0}),
        ("00", 1, {0: 1, 1: 0}),
        ("***", 3, {0: 1, 1: 0, 2: 0, 3: 0}),
        ("+0|0+", 2, {0: 1, 1: 0, 2: 0}),
    ],
)
def test_quadrant_report(spec, up_to, dims):
    rep = quadrant_poincare_report(spec, up_to, 3)
    assert rep.dims == dims and rep.contractible
    assert rep.homotopy_identity and rep.ideal_preserved


def test_quadrant_report_rejects_origin_outside_closure():
    off = QuadrantSpec.parse("++", center=(1, 1))
    assert off.contains((2, 2)) and not off.contains((0, 0))
    with pytest.raises(UnsupportedInputError):
        quadrant_poincare_report(QuadrantSpec.parse("0+", center=(1, 0)), 2)


# -- jet tables ------------------------------------------------------------

def test_jet_table_round_trip():
    for name in ("x_squared.jet", "abs_x.jet"):
        F = parse_jet_table(bundled(name))
        assert parse_jet_table(format_jet_table(F)) == F
    G = to_divided(jet_of(Polynomial.parse(2, "x1*x2^2"), PointSet([(0, 1), (1, 2)]), 2))
    assert parse_jet_table(format_jet_table(G)) == G


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, 1),
        ("1 1\n", 1, 1),
        ("x 1\n", 1, 1),
        ("1 1 weird\n0 0 1\n", 1, 5),
        ("1 1\n0 0\n", 2, 4),
        ("1 1\n0 a 1\n", 2, 3),
        ("1 1\n0 0 1\n0 1 1\n", 3, 1),
    ],
)
def test_jet_table_errors(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse_jet_table(text)
    assert (exc.value.line, exc.value.column) == (line, column)
