import importlib.resources
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bundled
from rhtkit.cdga import CdgaPresentation
from rhtkit.errors import ParseError, PresentationError
from rhtkit.expr import format_element, format_presentation, parse_expression, parse_presentation
from rhtkit.sullivan import SullivanModel, is_minimal

CDGA_FILES = sorted(
    p.name for p in importlib.resources.files("rhtkit.data").iterdir() if p.name.endswith(".cdga")
)


def test_grammar_walkthrough():
    p = parse_presentation("generator x deg 2\n generator y deg 3\n d y = x^2\n truncate 10")
    assert [(g.name, g.degree) for g in p.generators] == [("x", 2), ("y", 3)]
    assert p.d_of("y") == p.gen("x") * p.gen("x")
    assert p.truncation == 10


def test_empty_presentation_is_ground_field():
    p = parse_presentation("")
    assert p.generators == () and p.basis_in_degree(0) == [()]


def test_linear_differential_accepted_not_minimal():
    p = parse_presentation("generator x deg 4\ngenerator y deg 3\nd y = x\ntruncate 10")
    assert not is_minimal(SullivanModel(p))


def test_koszul_sign_in_written_order():
    p = CdgaPresentation([("a", 1), ("b", 1)], truncation=4)
    assert parse_expression("b*a", p) == -parse_expression("a*b", p)
    assert parse_expression("(a + b)^2", p).is_zero()
    assert parse_expression("3/4*a - a", p) == p.gen("a").scale(Fraction(-1, 4))


@pytest.mark.parametrize("name", CDGA_FILES)
def test_corpus_round_trip(name):
    p = parse_presentation(bundled(name))
    text = format_presentation(p)
    q = parse_presentation(text)
    assert q.signature == p.signature and q.name == p.name
    assert format_presentation(q) == text


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("generator x deg\n", 1, 1),
        ("generator x deg 2\nd x = y\n", 2, 7),
        ("generator x deg 2\nfoo\n", 2, 1),
        ("generator x deg 2\ngenerator y deg 3\nd y = x^^2\n", 3, 9),
        ("generator x deg 2\ngenerator x deg 4\n", 2, 1),
        ("truncate -1\n", 1, 1),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse_presentation(text)
    assert exc.value.line == line
    assert exc.value.column == column


def test_validation_errors_are_not_parse_errors():
    with pytest.raises(PresentationError):
        parse_presentation("generator x deg 2\ngenerator y deg 4\nd y = x\n")


ALG = CdgaPresentation([("x", 2), ("y", 3), ("z", 1)], truncation=12)
coeff = st.fractions(min_value=-9, max_value=9, max_denominator=5)


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.sampled_from(ALG.basis_in_degree(5) + ALG.basis_in_degree(4)), coeff, max_size=4))
def test_format_parse_round_trip(terms):
    from rhtkit.cdga import Element

    e = Element(ALG, terms)
    assert parse_expression(format_element(e), ALG) == e
