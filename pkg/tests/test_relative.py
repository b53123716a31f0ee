from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from hassett.core import (
    DivisorClass, InvalidGeneratorError, SpaceMismatchError, d_sec, kappa, psi, sum_classes,
)
from hassett.relative import (
    RelativeExpression, omega, push_against_section, push_quadratic, relative_expression, sigma,
)
from conftest import space, spaces


def monomial(S, a, b):
    """pi_* of a product of two basis elements ('w' or a marking)."""
    if a == "w" and b == "w":
        return kappa(S)
    if a == "w" or b == "w":
        return psi(S, b if a == "w" else a)
    if a == b:
        return -psi(S, a)
    if S.weight((a, b)) <= 1:
        return d_sec(S, min(a, b), max(a, b))
    return DivisorClass.zero(S)


def expand(e1, e2):
    """Term-by-term oracle: distribute over the basis and push each monomial."""
    S = e1.space
    basis1 = [("w", e1.omega)] + list(e1.sections)
    basis2 = [("w", e2.omega)] + list(e2.sections)
    return sum_classes(S, [c1 * c2 * monomial(S, a, b)
                           for a, c1 in basis1 for b, c2 in basis2 if c1 and c2])


@st.composite
def expressions(draw, S):
    coef = st.fractions(min_value=-6, max_value=6, max_denominator=6)
    secs = {i: draw(coef) for i in range(1, S.n + 1)}
    return relative_expression(S, draw(coef), secs)


def test_basic_rules():
    S = space(1, F(1, 2), F(1, 2))
    assert push_quadratic(omega(S), sigma(S, 1)) == psi(S, 1)
    assert push_quadratic(sigma(S, 1), sigma(S, 1)) == -psi(S, 1)
    assert push_quadratic(omega(S), omega(S)) == kappa(S)
    assert push_quadratic(sigma(S, 1), sigma(S, 2)) == d_sec(S, 1, 2)


def test_heavy_pair_sections_do_not_meet():
    S = space(1, 1, F(1, 2))
    assert push_quadratic(sigma(S, 1), sigma(S, 2)).is_zero()


def test_delta_expansion_example():
    S = space(1, F(1, 2), F(1, 2))
    e1 = omega(S) + F(1, 2) * sigma(S, 1) + F(1, 2) * sigma(S, 2)
    e2 = 2 * omega(S) + sigma(S, 1) + sigma(S, 2)
    expected = 2 * kappa(S) + F(3, 2) * psi(S, 1) + F(3, 2) * psi(S, 2) + d_sec(S, 1, 2)
    assert push_quadratic(e1, e2) == expected


def test_push_against_section_examples():
    S = space(1, F(1, 3), F(1, 3), F(1, 3))
    assert push_against_section(omega(S), 2) == psi(S, 2)
    a = F(1, 3)
    assert push_against_section(omega(S) + a * sigma(S, 2), 2) == (1 - a) * psi(S, 2)
    e = omega(S) + sum((a * sigma(S, i) for i in (2, 3)), sigma(S, 1) * a)
    expected = (1 - a) * psi(S, 3) + a * d_sec(S, 1, 3) + a * d_sec(S, 2, 3)
    assert push_against_section(e, 3) == expected


def test_errors():
    S = space(1, 1, 1)
    with pytest.raises(InvalidGeneratorError):
        sigma(S, 3)
    with pytest.raises(InvalidGeneratorError):
        push_against_section(omega(S), 0)
    with pytest.raises(SpaceMismatchError):
        push_quadratic(omega(S), omega(space(2)))
    with pytest.raises(TypeError):
        RelativeExpression(S, 0.5)


def test_expression_arithmetic():
    S = space(2, 1, 1)
    e = omega(S) + 3 * sigma(S, 2) + F(-1, 2) * sigma(S, 2)
    assert e.omega == 1 and e.section(2) == F(5, 2) and e.section(1) == 0
    assert str(e) == "1*omega + 5/2*sigma(2)"
    assert (0 * e).sections == ()


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_matches_monomial_expansion(data):
    S = data.draw(spaces(max_n=4))
    e1, e2 = data.draw(expressions(S)), data.draw(expressions(S))
    assert push_quadratic(e1, e2) == expand(e1, e2)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_symmetric_and_bilinear(data):
    S = data.draw(spaces(max_n=4))
    e1, e2, e3 = (data.draw(expressions(S)) for _ in range(3))
    s = data.draw(st.fractions(min_value=-5, max_value=5, max_denominator=7))
    assert push_quadratic(e1, e2) == push_quadratic(e2, e1)
    assert push_quadratic(e1 + s * e3, e2) == push_quadratic(e1, e2) + s * push_quadratic(e3, e2)


@settings(max_examples=40, deadline=None)
@given(spaces(max_n=5))
def test_section_closed_form(S):
    # pi_*((omega + sum a_i sigma_i) sigma_p) = (1-a_p) psi_p + sum_{w_ip <= 1} a_i D_{i=p}
    e = omega(S)
    for i, a in enumerate(S.weights, 1):
        e = e + a * sigma(S, i)
    for p in S.markings:
        ap = S.weights[p - 1]
        expected = (1 - ap) * psi(S, p) + sum_classes(S, [
            S.weights[i - 1] * d_sec(S, min(i, p), max(i, p))
            for i in S.markings if i != p and S.weight((i, p)) <= 1])
        assert push_against_section(e, p) == expected
