from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hassett.core import ModuliSpace, enumerate_generators, DivisorClass
from hassett.grid import DENOMINATORS, stable

F = Fraction


def space(g, *weights):
    return ModuliSpace(g, tuple(Fraction(w) for w in weights))


@st.composite
def weights_st(draw, n):
    return tuple(F(draw(st.integers(1, d)), d)
                 for d in draw(st.lists(st.sampled_from(DENOMINATORS), min_size=n, max_size=n)))


@st.composite
def spaces(draw, genera=(0, 1, 2, 3), max_n=5):
    g = draw(st.sampled_from(genera))
    n = draw(st.integers(0, max_n))
    ws = draw(weights_st(n))
    if not stable(g, ws):
        ws = (F(1),) * n
    if not stable(g, ws):
        n = 3
        ws = (F(1),) * 3
    return ModuliSpace(g, ws)


@st.composite
def classes_on(draw, S):
    gens = enumerate_generators(S)
    coeffs = draw(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12),
                           min_size=len(gens), max_size=len(gens)))
    return DivisorClass(S, dict(zip(gens, coeffs)))


@pytest.fixture
def small_spaces():
    return [space(1, 1), space(1, 1, 1), space(1, F(1, 2), F(1, 2)), space(2),
            space(2, 1, 1), space(1, F(1, 3), F(1, 3), F(1, 3)),
            space(3, F(1, 4), F(1, 2), 1, F(1, 4)), space(0, 1, 1, 1, 1),
            space(0, F(1, 2), F(1, 2), 1, 1, F(1, 3))]
