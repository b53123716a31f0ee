"""Exact calculus of tautological divisor classes on Hassett spaces M_{g,A}."""

from .core import (
    DIRR, KAPPA, LAMBDA, DNodal, DSec, Dirr, DivisorClass, Generator, InvalidGeneratorError,
    InvalidSpaceError, Kappa, Lambda, ModuliSpace, Psi, SpaceMismatchError,
    VerificationReport, aggregate_classes, classes_equal, d_irr, d_nodal, d_sec, enumerate_generators,
    kappa, lam, make_space, normal_form, normalize_nodal_index, psi,
)
from .expr import ParseError, parse_class
from .morphisms import (
    CoincidentMap, DomainError, NodalBoundaryMap, PairClass, ReductionMap,
    coincident_restriction, forgetful_pullback, full_reduction_pullback,
    full_reduction_pushforward, irr_restriction, nodal_restriction, reduction_pullback,
    reduction_pushforward,
)
from .relative import RelativeExpression, push_against_section, push_quadratic

__version__ = "0.1.0"
