from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from hassett.core import (
    aggregate_classes, d_irr, d_nodal, d_sec, kappa, lam, psi, InvalidGeneratorError,
)
from hassett.expr import ParseError, parse_class, parse_rational, parse_subset, parse_weights
from conftest import classes_on, space, spaces


def test_parse_rational():
    assert parse_rational("-3/4") == F(-3, 4)
    assert parse_rational(" +2 ") == 2
    for bad in ("1.5", "1/0", "", "a"):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_parse_weights_and_subsets():
    assert parse_weights("1/2, 1/3") == (F(1, 2), F(1, 3))
    assert parse_weights("") == ()
    assert parse_subset("{3,1}") == frozenset({1, 3})
    assert parse_subset("{}") == frozenset()
    with pytest.raises(ParseError):
        parse_subset("1,3")


def test_parse_atoms():
    S = space(1, F(1, 2), F(1, 2), 1)
    c = parse_class(S, "2*kappa - 3/2*psi(1) + Dirr + Dsec(1,2) + D(0;{1,2,3}) - lambda")
    assert c == (2 * kappa(S) - F(3, 2) * psi(S, 1) + d_irr(S) + d_sec(S, 1, 2)
                 + d_nodal(S, 0, {1, 2, 3}) - lam(S))


def test_parse_aggregates_and_parentheses():
    S = space(2, 1, 1)
    d_nod, d_sec_sum, psi_sum = aggregate_classes(S)
    assert parse_class(S, "Dnod + psi") == d_nod + psi_sum
    assert parse_class(S, "Dsec").is_zero()
    assert parse_class(S, "2*(kappa - 1/2*lambda)*3") == 6 * kappa(S) - 3 * lam(S)
    assert parse_class(S, "−kappa") == -kappa(S)


def test_parse_nodal_normalizes():
    S = space(2, 1, 1)
    assert parse_class(S, "D(2;{})") == d_nodal(S, 0, {1, 2})
    assert parse_class(S, "D(0;{1})").is_zero()


def test_parse_errors():
    S = space(1, 1, 1)
    for bad in ("kappa *", "kappa * lambda", "psi(3)", "foo", "(kappa", "kappa $"):
        with pytest.raises((ParseError, InvalidGeneratorError)):
            parse_class(S, bad)
    with pytest.raises(InvalidGeneratorError):
        parse_class(S, "Dsec(1,2)")


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_str_round_trip(data):
    S = data.draw(spaces())
    c = data.draw(classes_on(S))
    assert parse_class(S, str(c)) == c
