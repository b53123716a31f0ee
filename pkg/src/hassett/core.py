"""
Spaces, tautological generators and divisor classes on M_{g,A}.

A divisor class is a finitely supported formal combination of generators
with exact rational coefficients.  Equality of classes is tested after
eliminating kappa through Mumford's relation ``kappa = 12 lambda - D_nod``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping


class InvalidSpaceError(ValueError):
    pass


class InvalidGeneratorError(ValueError):
    pass


class SpaceMismatchError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted: %r" % (x,))
    return Fraction(x)


def subset_key(s) -> tuple:
    return tuple(sorted(s))


def format_subset(s) -> str:
    return "{" + ",".join(str(i) for i in subset_key(s)) + "}"


# ---------------------------------------------------------------------------
# spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModuliSpace:
    """The Hassett space of genus ``genus`` curves with weights ``weights``."""

    genus: int
    weights: tuple

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise InvalidSpaceError("genus must be a nonnegative integer, got %r" % (self.genus,))
        ws = tuple(as_fraction(a) for a in self.weights)
        object.__setattr__(self, "weights", ws)
        for i, a in enumerate(ws, 1):
            if not 0 < a <= 1:
                raise InvalidSpaceError("weight a_%d = %s is not in (0,1]" % (i, a))
        total = 2 * self.genus - 2 + sum(ws, Fraction(0))
        if total <= 0:
            raise InvalidSpaceError(
                "stability violated: 2g-2+sum(a_i) = %s <= 0" % (total,))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def markings(self) -> frozenset:
        return frozenset(range(1, self.n + 1))

    def weight(self, subset: Iterable[int]) -> Fraction:
        return sum((self.weights[i - 1] for i in subset), Fraction(0))

    def complement(self, subset) -> frozenset:
        return self.markings - frozenset(subset)

    def check_marking(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise InvalidGeneratorError("marking index %r out of range 1..%d" % (i, self.n))

    def __str__(self):
        return "M(g=%d; %s)" % (self.genus, ",".join(str(a) for a in self.weights))


def make_space(g: int, weights: Iterable = ()) -> ModuliSpace:
    return ModuliSpace(g, tuple(weights))


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

class Generator:
    """Base class of the tautological basis symbols."""

    __slots__ = ()
    order = 0

    @property
    def key(self) -> tuple:
        return (self.order,)

    def __lt__(self, other):
        return self.key < other.key


@dataclass(frozen=True, eq=True)
class Kappa(Generator):
    order = 0

    def __str__(self):
        return "kappa"


@dataclass(frozen=True, eq=True)
class Lambda(Generator):
    order = 1

    def __str__(self):
        return "lambda"


@dataclass(frozen=True, eq=True)
class Psi(Generator):
    i: int
    order = 2

    @property
    def key(self):
        return (self.order, self.i)

    def __str__(self):
        return "psi(%d)" % self.i


@dataclass(frozen=True, eq=True)
class Dirr(Generator):
    order = 3

    def __str__(self):
        return "Dirr"


@dataclass(frozen=True, eq=True)
class DNodal(Generator):
    """Separating boundary D_{j,I}; always stored in canonical form."""

    j: int
    subset: frozenset
    order = 4

    @property
    def key(self):
        return (self.order, self.j, len(self.subset), subset_key(self.subset))

    def __str__(self):
        return "D(%d;%s)" % (self.j, format_subset(self.subset))


@dataclass(frozen=True, eq=True)
class DSec(Generator):
    """Coincident-section boundary D_{i=j} with i < j."""

    i: int
    j: int
    order = 5

    @property
    def key(self):
        return (self.order, self.i, self.j)

    def __str__(self):
        return "Dsec(%d,%d)" % (self.i, self.j)


KAPPA = Kappa()
LAMBDA = Lambda()
DIRR = Dirr()


def dsec_generator(space: ModuliSpace, i: int, j: int) -> DSec:
    space.check_marking(i)
    space.check_marking(j)
    if i == j:
        raise InvalidGeneratorError("D_{i=j} needs two distinct markings, got %d twice" % i)
    i, j = min(i, j), max(i, j)
    w = space.weight((i, j))
    if w > 1:
        raise InvalidGeneratorError(
            "D_{%d=%d} does not exist: w = %s > 1" % (i, j, w))
    return DSec(i, j)


def normalize_nodal_index(space: ModuliSpace, j: int, subset) -> DNodal | None:
    """
    Canonical representative of ``D_{j,I} = D_{g-j,I^c}``.

    Returns ``None`` when the class vanishes by convention (a genus zero
    side carrying at most one marking).  Raises when the stratum does not
    exist because a genus zero side has weight at most one.
    """
    g = space.genus
    if not 0 <= j <= g:
        raise InvalidGeneratorError("genus part %r out of range 0..%d" % (j, g))
    I = frozenset(subset)
    for i in I:
        space.check_marking(i)
    Ic = space.complement(I)
    sides = [(j, I), (g - j, Ic)]
    for genus, s in sides:
        if genus == 0 and len(s) <= 1:
            return None
    for genus, s in sides:
        if genus == 0 and space.weight(s) <= 1:
            raise InvalidGeneratorError(
                "stratum D_{0,%s} does not exist: weight %s <= 1"
                % (format_subset(s), space.weight(s)))
    if j < g - j:
        return DNodal(j, I)
    if j > g - j:
        return DNodal(g - j, Ic)
    # tie: the side holding marking 1 wins; n = 0 leaves a single choice
    if 1 in Ic:
        return DNodal(j, Ic)
    return DNodal(j, I)


def nodal_exists(space: ModuliSpace, j: int, subset) -> bool:
    try:
        return normalize_nodal_index(space, j, subset) is not None
    except InvalidGeneratorError:
        return False


def generator_is_valid(space: ModuliSpace, gen: Generator) -> bool:
    if isinstance(gen, (Kappa, Lambda)):
        return True
    if isinstance(gen, Psi):
        return 1 <= gen.i <= space.n
    if isinstance(gen, Dirr):
        return space.genus >= 1
    if isinstance(gen, DNodal):
        try:
            return normalize_nodal_index(space, gen.j, gen.subset) == gen
        except InvalidGeneratorError:
            return False
    if isinstance(gen, DSec):
        return (1 <= gen.i < gen.j <= space.n
                and space.weight((gen.i, gen.j)) <= 1)
    return False


@lru_cache(maxsize=None)
def nodal_generators(space: ModuliSpace) -> tuple:
    found = set()
    marks = sorted(space.markings)
    for j in range(space.genus + 1):
        for r in range(len(marks) + 1):
            for I in combinations(marks, r):
                try:
                    gen = normalize_nodal_index(space, j, I)
                except InvalidGeneratorError:
                    continue
                if gen is not None:
                    found.add(gen)
    return tuple(sorted(found, key=lambda x: x.key))


@lru_cache(maxsize=None)
def dsec_generators(space: ModuliSpace) -> tuple:
    return tuple(DSec(i, j) for i, j in combinations(range(1, space.n + 1), 2)
                 if space.weight((i, j)) <= 1)


@lru_cache(maxsize=None)
def enumerate_generators(space: ModuliSpace) -> tuple:
    gens = [KAPPA, LAMBDA]
    gens += [Psi(i) for i in range(1, space.n + 1)]
    if space.genus >= 1:
        gens.append(DIRR)
    gens += nodal_generators(space)
    gens += dsec_generators(space)
    return tuple(gens)


# ---------------------------------------------------------------------------
# classes
# ---------------------------------------------------------------------------

class DivisorClass:
    """
    A formal Q-combination of generators on a fixed space.

    Instances are immutable; zero coefficients are dropped on construction
    and every generator is checked against the space.
    """

    __slots__ = ("space", "_terms", "_hash")

    def __init__(self, space: ModuliSpace, terms: Mapping | Iterable = (), check=True):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc = {}
        for gen, c in items:
            c = as_fraction(c)
            if c:
                acc[gen] = acc.get(gen, 0) + c
        acc = {gen: c for gen, c in acc.items() if c}
        if check:
            for gen in acc:
                if not generator_is_valid(space, gen):
                    raise InvalidGeneratorError("%s is not a valid generator on %s" % (gen, space))
        self.space = space
        self._terms = acc
        self._hash = None

    @classmethod
    def zero(cls, space):
        return cls(space, {}, check=False)

    @classmethod
    def of(cls, space, gen, coeff=1):
        return cls(space, {gen: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Support in canonical generator order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].key)

    def coefficient(self, gen) -> Fraction:
        return self._terms.get(gen, Fraction(0))

    def support(self) -> list:
        return [g for g, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._terms

    def _same_space(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.space != self.space:
            raise SpaceMismatchError("classes live on %s and %s" % (self.space, other.space))
        return other

    def __add__(self, other):
        other = self._same_space(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for gen, c in other._terms.items():
            acc[gen] = acc.get(gen, 0) + c
        return DivisorClass(self.space, acc, check=False)

    def __sub__(self, other):
        other = self._same_space(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __neg__(self):
        return DivisorClass(self.space, {g: -c for g, c in self._terms.items()}, check=False)

    def __mul__(self, scalar):
        if isinstance(scalar, DivisorClass):
            return NotImplemented
        s = as_fraction(scalar)
        return DivisorClass(self.space, {g: s * c for g, c in self._terms.items()}, check=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        # structural equality; see classes_equal for equality modulo Mumford
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_class(self)

    def __repr__(self):
        return "DivisorClass(%s, %s)" % (self.space, format_class(self))


def format_coefficient_term(gen, c: Fraction) -> str:
    mag = abs(c)
    if mag == 1:
        return str(gen)
    return "%s*%s" % (mag, gen)


def format_class(c: DivisorClass) -> str:
    out = []
    for gen, coeff in c.items():
        piece = format_coefficient_term(gen, coeff)
        if not out:
            out.append(("-" if coeff < 0 else "") + piece)
        else:
            out.append((" - " if coeff < 0 else " + ") + piece)
    return "".join(out) or "0"


def sum_classes(space, classes) -> DivisorClass:
    acc = {}
    for c in classes:
        if c.space != space:
            raise SpaceMismatchError("class on %s summed into %s" % (c.space, space))
        for gen, v in c._terms.items():
            acc[gen] = acc.get(gen, 0) + v
    return DivisorClass(space, acc, check=False)


# convenience constructors

def kappa(space):
    return DivisorClass.of(space, KAPPA)


def lam(space):
    return DivisorClass.of(space, LAMBDA)


def psi(space, i):
    space.check_marking(i)
    return DivisorClass.of(space, Psi(i))


def d_irr(space):
    if space.genus < 1:
        raise InvalidGeneratorError("D_irr does not exist in genus 0")
    return DivisorClass.of(space, DIRR)


def d_nodal(space, j, subset):
    """D_{j,I} as a class; the zero class under the |I| <= 1 convention."""
    gen = normalize_nodal_index(space, j, subset)
    if gen is None:
        return DivisorClass.zero(space)
    return DivisorClass.of(space, gen)


def d_sec(space, i, j):
    return DivisorClass.of(space, dsec_generator(space, i, j))


def aggregate_classes(space: ModuliSpace):
    """Return ``(D_nod, D_sec, psi)``, the three aggregate boundary/psi classes."""
    d_nod = {gen: 1 for gen in nodal_generators(space)}
    if space.genus >= 1:
        d_nod[DIRR] = 1
    return (DivisorClass(space, d_nod, check=False),
            DivisorClass(space, {gen: 1 for gen in dsec_generators(space)}, check=False),
            DivisorClass(space, {Psi(i): 1 for i in range(1, space.n + 1)}, check=False))


def d_nod(space):
    return aggregate_classes(space)[0]


def d_sec_total(space):
    return aggregate_classes(space)[1]


def psi_total(space):
    return aggregate_classes(space)[2]


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------

def mumford_kappa(space) -> DivisorClass:
    """kappa expressed as 12 lambda - D_nod."""
    return 12 * lam(space) - d_nod(space)


def _check_relations(space, relations):
    for gen, rhs in relations.items():
        if rhs.space != space:
            raise SpaceMismatchError("relation for %s lives on %s" % (gen, rhs.space))
        if isinstance(gen, Kappa):
            raise ValueError("kappa is already eliminated by Mumford's relation")
        bad = [g for g in rhs.support() if g in relations or isinstance(g, Kappa)]
        if bad:
            raise ValueError("relation for %s is not reduced: mentions %s"
                             % (gen, ", ".join(map(str, bad))))


def normal_form(c: DivisorClass, relations: Mapping | None = None) -> DivisorClass:
    """
    Eliminate kappa via Mumford's relation.

    ``relations`` optionally maps generators to replacement classes (for
    instance ``{LAMBDA: 0}`` in genus zero).  Right-hand sides must already
    be free of kappa and of every rewritten generator.
    """
    k = c.coefficient(KAPPA)
    terms = {g: v for g, v in c._terms.items() if not isinstance(g, Kappa)}
    out = DivisorClass(c.space, terms, check=False)
    if k:
        out = out + k * mumford_kappa(c.space)
    if relations:
        _check_relations(c.space, relations)
        kept = {g: v for g, v in out._terms.items() if g not in relations}
        out = DivisorClass(c.space, kept, check=False) + sum_classes(
            c.space, [out.coefficient(g) * rhs for g, rhs in relations.items()
                      if out.coefficient(g)])
    return out


def classes_equal(c1: DivisorClass, c2: DivisorClass, relations=None) -> bool:
    if c1.space != c2.space:
        raise SpaceMismatchError("cannot compare classes on %s and %s" % (c1.space, c2.space))
    return normal_form(c1 - c2, relations).is_zero()


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    """
    Outcome of checking one identity on one space.

    ``difference`` is LHS - RHS in normal form.  ``checks`` holds named
    side conditions (sign conditions on coefficients and the like); the
    report passes only if the difference vanishes and every check holds.
    """

    identity: str
    space: ModuliSpace
    difference: DivisorClass
    checks: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.difference.is_zero() and all(self.checks.values())
