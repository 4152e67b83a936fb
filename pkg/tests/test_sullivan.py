import pytest

from conftest import presentation
from rhtkit.cdga import CdgaPresentation, cohomology
from rhtkit.errors import DegreeRangeError, UnsupportedInputError
from rhtkit.sullivan import (
    SullivanModel,
    cohomology_algebra,
    formal_up_to,
    homotopy_ranks,
    is_minimal,
    is_sullivan,
    minimal_model,
    model_from_generators,
)


def s2_model():
    return CdgaPresentation([("x", 2), ("y", 3)], {"y": "x^2"}, truncation=12)


def test_is_sullivan_examples():
    p = s2_model()
    assert is_sullivan(SullivanModel(p, ("x", "y")))
    assert not is_sullivan(SullivanModel(p, ("y", "x")))
    assert not is_sullivan(SullivanModel(presentation("h_s2")))


def test_is_minimal_examples():
    assert is_minimal(SullivanModel(s2_model()))
    assert not is_minimal(model_from_generators([("a", 4), ("c", 3)], {"c": "a"}, 10))
    assert is_minimal(SullivanModel(CdgaPresentation([("x", 3), ("y", 4)], truncation=10)))


def test_minimal_model_of_h_s2():
    r = minimal_model(presentation("h_s2"), 8)
    assert r.model.generator_counts() == {2: 1, 3: 1}
    assert is_sullivan(r.model) and is_minimal(r.model)
    dims = cohomology(r.model.underlying.replace(truncation=10), 8).dims
    assert dims == {k: int(k in (0, 2)) for k in range(9)}
    assert r.verified_degree == 8


@pytest.mark.parametrize(
    "name, up_to, ranks",
    [
        ("s2", 8, {2: 1, 3: 1}),
        ("h_s2", 8, {2: 1, 3: 1}),
        ("s3", 10, {3: 1}),
        ("s3_acyclic", 10, {3: 1}),
        ("h_s4", 10, {4: 1, 7: 1}),
        ("cp2", 10, {2: 1, 5: 1}),
        ("s2xs2", 7, {2: 2, 3: 2}),
        ("point", 8, {}),
    ],
)
def test_homotopy_ranks(name, up_to, ranks):
    assert homotopy_ranks(minimal_model(presentation(name), up_to)) == ranks


def test_model_is_quasi_isomorphic():
    r = minimal_model(presentation("cp2"), 8)
    assert r.report is None or r.report
    src = r.model.underlying
    for k in range(1, 9):
        assert cohomology(src.replace(truncation=10), 8).dims[k] == cohomology(presentation("cp2"), 8).dims[k]


def test_minimal_model_errors():
    with pytest.raises(DegreeRangeError):
        minimal_model(presentation("s3").replace(truncation=5), 8)
    circle = CdgaPresentation([("z", 1)], truncation=6)
    with pytest.raises(UnsupportedInputError):
        minimal_model(circle, 4)


def test_cohomology_algebra_of_s2_model():
    h = cohomology_algebra(s2_model(), 9)
    assert cohomology(h, 8).dims == cohomology(s2_model(), 8).dims


@pytest.mark.parametrize("name", ["s3", "s2", "h_s2", "cp2", "h_s4"])
def test_formality_evidence(name):
    ev = formal_up_to(presentation(name), 8)
    assert ev and ev.counts == ev.cohomology_counts and ev.matching is not None
