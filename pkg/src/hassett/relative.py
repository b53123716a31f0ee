"""
Degree-two push-forwards along the universal curve.

Expressions are linear combinations of omega (the relative dualizing
sheaf) and the sections sigma_i; ``push_quadratic`` expands a product of
two of them and applies

    pi_*(omega^2)         = kappa
    pi_*(omega . sigma_i) = psi_i
    pi_*(sigma_i^2)       = -psi_i
    pi_*(sigma_i.sigma_j) = D_{i=j} if w_{ij} <= 1, else 0
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    KAPPA, DSec, DivisorClass, ModuliSpace, Psi, SpaceMismatchError, as_fraction,
)


@dataclass(frozen=True)
class RelativeExpression:
    space: ModuliSpace
    omega: Fraction = Fraction(0)
    sections: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "omega", as_fraction(self.omega))
        secs = dict(self.sections)
        for i in secs:
            self.space.check_marking(i)
        object.__setattr__(self, "sections", tuple(sorted(
            (i, as_fraction(c)) for i, c in secs.items() if c)))

    def section(self, i) -> Fraction:
        return dict(self.sections).get(i, Fraction(0))

    def _same(self, other):
        if other.space != self.space:
            raise SpaceMismatchError("expressions on %s and %s" % (self.space, other.space))

    def __add__(self, other):
        self._same(other)
        secs = dict(self.sections)
        for i, c in other.sections:
            secs[i] = secs.get(i, 0) + c
        return RelativeExpression(self.space, self.omega + other.omega, tuple(secs.items()))

    def __mul__(self, s):
        s = as_fraction(s)
        return RelativeExpression(self.space, s * self.omega,
                                  tuple((i, s * c) for i, c in self.sections))

    __rmul__ = __mul__

    def __str__(self):
        parts = []
        if self.omega:
            parts.append("%s*omega" % self.omega)
        parts += ["%s*sigma(%d)" % (c, i) for i, c in self.sections]
        return " + ".join(parts) or "0"


def omega(space) -> RelativeExpression:
    return RelativeExpression(space, 1)


def sigma(space, i) -> RelativeExpression:
    return RelativeExpression(space, 0, ((i, 1),))


def relative_expression(space, omega_coeff=0, sections=None) -> RelativeExpression:
    return RelativeExpression(space, omega_coeff, tuple((sections or {}).items()))


def push_quadratic(e1: RelativeExpression, e2: RelativeExpression) -> DivisorClass:
    """pi_*(e1 . e2) as a divisor class on the base."""
    e1._same(e2)
    space = e1.space
    terms = {KAPPA: e1.omega * e2.omega}
    s1, s2 = dict(e1.sections), dict(e2.sections)
    for i in range(1, space.n + 1):
        a, b = s1.get(i, 0), s2.get(i, 0)
        terms[Psi(i)] = e1.omega * b + a * e2.omega - a * b
    for i, a in s1.items():
        for j, b in s2.items():
            if i == j or not a * b:
                continue
            if space.weight((i, j)) <= 1:
                gen = DSec(min(i, j), max(i, j))
                terms[gen] = terms.get(gen, 0) + a * b
    return DivisorClass(space, terms)


def push_against_section(e: RelativeExpression, p: int) -> DivisorClass:
    """pi_*(e . sigma_p)."""
    e.space.check_marking(p)
    return push_quadratic(e, sigma(e.space, p))
