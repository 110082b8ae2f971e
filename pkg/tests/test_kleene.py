from fractions import Fraction

import pytest
from hypothesis import given

from conftest import elements
from fwa.kleene import BOOL, FUZZ, INF, TROP, parse_extended, parse_rational, render_rational, sr_plus, sr_star, sr_times


def test_examples():
    assert sr_plus(TROP, Fraction(3), Fraction(5)) == 3
    assert sr_times(TROP, Fraction(3), Fraction(5)) == 8
    assert sr_times(TROP, Fraction(3), INF) == INF
    assert sr_plus(FUZZ, Fraction(3), Fraction(5)) == 5
    assert sr_times(FUZZ, Fraction(3), Fraction(5)) == 3
    assert sr_plus(BOOL, False, True) is True
    assert sr_times(BOOL, False, True) is False


def test_star_is_one():
    assert sr_star(TROP, Fraction(5)) == 0
    assert sr_star(BOOL, False) is True
    assert sr_star(FUZZ, Fraction(2)) == INF


def test_rational_text():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -4 ") == -4
    assert parse_extended("inf") == INF
    assert render_rational(Fraction(3, 4)) == "3/4"
    assert render_rational(Fraction(4)) == "4"
    assert render_rational(INF) == "inf"
    for bad in ["1.5", "1/0", "x", True, 1.5, "inf/2"]:
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_parse_rejects_negative_and_wrong_types():
    with pytest.raises(ValueError):
        TROP.parse("-1")
    with pytest.raises(ValueError):
        BOOL.parse(1)
    assert FUZZ.parse("inf") == INF


@given(x=elements(BOOL), y=elements(BOOL), z=elements(BOOL))
def test_bool_laws(x, y, z):
    check_laws(BOOL, x, y, z)


@given(x=elements(TROP), y=elements(TROP), z=elements(TROP))
def test_tropical_laws(x, y, z):
    check_laws(TROP, x, y, z)


@given(x=elements(FUZZ), y=elements(FUZZ), z=elements(FUZZ))
def test_fuzzy_laws(x, y, z):
    check_laws(FUZZ, x, y, z)


def check_laws(alg, x, y, z):
    p, t = alg.plus, alg.times
    assert p(x, x) == x
    assert p(x, y) == p(y, x)
    assert p(p(x, y), z) == p(x, p(y, z))
    assert t(t(x, y), z) == t(x, t(y, z))
    assert t(x, p(y, z)) == p(t(x, y), t(x, z))
    assert t(p(x, y), z) == p(t(x, z), t(y, z))
    assert p(x, alg.zero) == x
    assert t(x, alg.one) == x == t(alg.one, x)
    assert t(x, alg.zero) == alg.zero == t(alg.zero, x)
    assert alg.star(x) == p(alg.one, t(x, alg.star(x)))
    assert p(x, alg.one) == alg.one  # bounded
    # sampled *-continuity with B = 3
    lhs = t(t(x, alg.star(y)), z)
    rhs = alg.sum(t(t(x, alg.power(y, n)), z) for n in range(4))
    assert lhs == rhs
