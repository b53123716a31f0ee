"""
Push-forward and pull-back of divisor classes along the standard maps
between Hassett spaces: reduction, forgetful, and the three boundary
embeddings (separating node, irreducible node, coincident sections).

Every operator is the linear extension of a generator table.  Images of
single generators are cached per map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .core import (
    DIRR, KAPPA, LAMBDA, DNodal, DSec, Dirr, DivisorClass, InvalidGeneratorError,
    InvalidSpaceError, Kappa, Lambda, ModuliSpace, Psi, SpaceMismatchError,
    as_fraction, dsec_generators, format_subset, nodal_generators,
    normalize_nodal_index, sum_classes,
)


class DomainError(ValueError):
    """The operator is not defined on the given class."""


def _check_on(c: DivisorClass, space: ModuliSpace, what: str):
    if c.space != space:
        raise SpaceMismatchError("%s expects a class on %s, got one on %s" % (what, space, c.space))


def _validated(c: DivisorClass) -> DivisorClass:
    return DivisorClass(c.space, c.terms)


def _apply(space_out, c, image):
    return _validated(sum_classes(space_out, [coeff * image(gen) for gen, coeff in c.items()]))


def _one(space, gen, coeff=1):
    return DivisorClass(space, {gen: coeff}, check=False)


def _nodal(space, j, subset):
    """D_{j,I} as a class; zero under the |I| <= 1 convention, error if absent."""
    gen = normalize_nodal_index(space, j, subset)
    if gen is None:
        return DivisorClass.zero(space)
    return _one(space, gen)


def _distinct_nodal(space, labels):
    """Sum of the distinct strata named by ``labels`` (pairs (j, I))."""
    gens = {normalize_nodal_index(space, j, I) for j, I in labels} - {None}
    return sum_classes(space, [_one(space, gen) for gen in gens])


def _subsets(markings, min_size=0):
    marks = sorted(markings)
    for r in range(min_size, len(marks) + 1):
        for s in combinations(marks, r):
            yield frozenset(s)


def _reps(space, gen: DNodal):
    """Both labelings (j, I) and (g-j, I^c) of a separating boundary."""
    a = (gen.j, gen.subset)
    b = (space.genus - gen.j, space.complement(gen.subset))
    return [a] if a == b else [a, b]


# ---------------------------------------------------------------------------
# reduction morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionMap:
    """phi_{A,B}: M_{g,A} -> M_{g,B} for B <= A componentwise."""

    source: ModuliSpace
    target: ModuliSpace

    def __post_init__(self):
        if self.source.genus != self.target.genus:
            raise InvalidSpaceError("reduction maps preserve the genus")
        if self.source.n != self.target.n:
            raise InvalidSpaceError("reduction maps preserve the number of markings")
        for i, (a, b) in enumerate(zip(self.source.weights, self.target.weights), 1):
            if b > a:
                raise InvalidSpaceError("reduction needs b_%d = %s <= a_%d = %s" % (i, b, i, a))

    def contracted(self, i, j) -> bool:
        """Sections i, j may not meet on the source but may on the target."""
        return self.source.weight((i, j)) > 1 >= self.target.weight((i, j))

    @property
    def exceptional(self) -> tuple:
        """Subsets I (|I| >= 2) with w^B_I <= 1 < w^A_I."""
        return _exceptional(self.source, self.target)


def reduction_map(source: ModuliSpace, target_weights) -> ReductionMap:
    return ReductionMap(source, ModuliSpace(source.genus, tuple(target_weights)))


@lru_cache(maxsize=None)
def _exceptional(source, target):
    return tuple(I for I in _subsets(source.markings, 2)
                 if target.weight(I) <= 1 < source.weight(I))


@lru_cache(maxsize=None)
def _push_image(m: ReductionMap, gen):
    S, T = m.source, m.target
    if isinstance(gen, Kappa):
        return _one(T, KAPPA) - sum_classes(
            T, [_one(T, DSec(j, k)) for j, k in combinations(range(1, T.n + 1), 2)
                if m.contracted(j, k)])
    if isinstance(gen, Psi):
        i = gen.i
        return _one(T, gen) + sum_classes(
            T, [_one(T, DSec(min(i, j), max(i, j))) for j in range(1, T.n + 1)
                if j != i and m.contracted(i, j)])
    if isinstance(gen, DNodal):
        for genus, side in _reps(S, gen):
            if genus == 0 and T.weight(side) <= 1:
                if len(side) >= 3:
                    return DivisorClass.zero(T)
                j, k = sorted(side)
                return _one(T, DSec(j, k))
        return _nodal(T, gen.j, gen.subset)
    # lambda, D_irr, D_{j=k} are unchanged
    return _one(T, gen)


def reduction_pushforward(m: ReductionMap, c: DivisorClass) -> DivisorClass:
    _check_on(c, m.source, "reduction push-forward")
    return _apply(m.target, c, lambda g: _push_image(m, g))


@lru_cache(maxsize=None)
def _pull_image(m: ReductionMap, gen):
    S = m.source
    exc = m.exceptional
    if isinstance(gen, Kappa):
        return _one(S, KAPPA) + sum_classes(S, [_nodal(S, 0, I) for I in exc])
    if isinstance(gen, Psi):
        return _one(S, gen) - sum_classes(S, [_nodal(S, 0, I) for I in exc if gen.i in I])
    if isinstance(gen, DSec):
        pair = {gen.i, gen.j}
        # only strata present on the source: w^A_I > 1
        out = sum_classes(S, [_nodal(S, 0, I) for I in exc if pair <= I])
        if S.weight(pair) <= 1:
            out = out + _one(S, gen)
        return out
    if isinstance(gen, DNodal):
        return _nodal(S, gen.j, gen.subset)
    return _one(S, gen)


def reduction_pullback(m: ReductionMap, c: DivisorClass) -> DivisorClass:
    _check_on(c, m.target, "reduction pull-back")
    return _apply(m.source, c, lambda g: _pull_image(m, g))


def unweighted(space: ModuliSpace) -> ModuliSpace:
    """M_{g,n} = M_{g,(1,...,1)} with the same genus and number of markings."""
    return ModuliSpace(space.genus, (Fraction(1),) * space.n)


# The two functions below follow the specialised tables for
# phi_A: M_{g,n} -> M_{g,A} directly.  They are kept separate from the
# general operators above so that each can be checked against the other.

@lru_cache(maxsize=None)
def _full_push_image(space, gen):
    A = space
    if isinstance(gen, Kappa):
        return _one(A, KAPPA) - sum_classes(A, [_one(A, d) for d in dsec_generators(A)])
    if isinstance(gen, Psi):
        i = gen.i
        terms = [_one(A, d) for d in dsec_generators(A) if i in (d.i, d.j)]
        return _one(A, gen) + sum_classes(A, terms)
    if isinstance(gen, DNodal):
        if gen.j == 0 and A.weight(gen.subset) <= 1:
            I = gen.subset
        elif gen.j == A.genus and A.weight(A.complement(gen.subset)) <= 1:
            I = A.complement(gen.subset)
        else:
            return _nodal(A, gen.j, gen.subset)
        if len(I) >= 3:
            return DivisorClass.zero(A)
        return _one(A, DSec(*sorted(I)))
    if isinstance(gen, (Lambda, Dirr)):
        return _one(A, gen)
    raise InvalidGeneratorError("%s does not live on M_{g,n}" % gen)


def full_reduction_pushforward(space: ModuliSpace, c: DivisorClass) -> DivisorClass:
    """phi_{A*} from M_{g,n} to ``space`` = M_{g,A}."""
    _check_on(c, unweighted(space), "full reduction push-forward")
    return _apply(space, c, lambda g: _full_push_image(space, g))


@lru_cache(maxsize=None)
def _light_subsets(space):
    return tuple(I for I in _subsets(space.markings, 2) if space.weight(I) <= 1)


@lru_cache(maxsize=None)
def _full_pull_image(space, gen):
    N = unweighted(space)
    light = _light_subsets(space)
    if isinstance(gen, Kappa):
        return _one(N, KAPPA) + sum_classes(N, [_nodal(N, 0, I) for I in light])
    if isinstance(gen, Psi):
        return _one(N, gen) - sum_classes(N, [_nodal(N, 0, I) for I in light if gen.i in I])
    if isinstance(gen, DSec):
        return sum_classes(N, [_nodal(N, 0, I) for I in light if {gen.i, gen.j} <= I])
    if isinstance(gen, DNodal):
        return _nodal(N, gen.j, gen.subset)
    return _one(N, gen)


def full_reduction_pullback(space: ModuliSpace, c: DivisorClass) -> DivisorClass:
    """phi_A^* from ``space`` = M_{g,A} to M_{g,n}."""
    _check_on(c, space, "full reduction pull-back")
    return _apply(unweighted(space), c, lambda g: _full_pull_image(space, g))


# ---------------------------------------------------------------------------
# forgetful morphism
# ---------------------------------------------------------------------------

def forget_target(source: ModuliSpace) -> ModuliSpace:
    if source.n == 0:
        raise InvalidSpaceError("nothing to forget on %s" % source)
    return ModuliSpace(source.genus, source.weights[:-1])


@lru_cache(maxsize=None)
def _forget_image(source, gen):
    p = source.n
    w = source.weight
    if isinstance(gen, Kappa):
        return _one(source, KAPPA) + sum_classes(
            source, [_nodal(source, 0, {i, p}) for i in range(1, p) if w((i, p)) > 1])
    if isinstance(gen, Psi):
        if w((gen.i, p)) <= 1:
            return _one(source, gen)
        return _one(source, gen) - _nodal(source, 0, {gen.i, p})
    if isinstance(gen, DNodal):
        # the two strata coincide for D_{g/2,{}} on M_g; count it once
        return _distinct_nodal(source, [(gen.j, gen.subset), (gen.j, gen.subset | {p})])
    if isinstance(gen, DSec):
        if w((gen.i, gen.j, p)) <= 1:
            return _one(source, gen)
        return _one(source, gen) + _nodal(source, 0, {gen.i, gen.j, p})
    return _one(source, gen)


def forgetful_pullback(source: ModuliSpace, c: DivisorClass) -> DivisorClass:
    """rho^* along the map forgetting the last marking p of ``source``."""
    _check_on(c, forget_target(source), "forgetful pull-back")
    return _apply(source, c, lambda g: _forget_image(source, g))


# ---------------------------------------------------------------------------
# separating nodal boundary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairClass:
    """pi_1^*(left) + pi_2^*(right) on a product of two spaces."""

    left: DivisorClass
    right: DivisorClass

    def __add__(self, other):
        return PairClass(self.left + other.left, self.right + other.right)

    def __sub__(self, other):
        return PairClass(self.left - other.left, self.right - other.right)

    def __neg__(self):
        return PairClass(-self.left, -self.right)

    def __mul__(self, s):
        return PairClass(s * self.left, s * self.right)

    __rmul__ = __mul__

    def is_zero(self):
        return self.left.is_zero() and self.right.is_zero()

    def __str__(self):
        return "pi1*(%s) + pi2*(%s)" % (self.left, self.right)


@dataclass(frozen=True)
class NodalBoundaryMap:
    """
    eta_{i,I}: M_{i,A_I} x M_{g-i,A_{I^c}} -> M_{g,A}.

    Markings on each factor keep their relative order and are renumbered
    from 1; the node branch (weight one) comes last, as p on the left and
    q on the right.
    """

    ambient: ModuliSpace
    genus: int
    subset: frozenset

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))
        gen = normalize_nodal_index(self.ambient, self.genus, self.subset)
        if gen is None:
            raise InvalidGeneratorError(
                "D_{%d,%s} vanishes by convention; no boundary to restrict to"
                % (self.genus, format_subset(self.subset)))

    @property
    def divisor(self) -> DNodal:
        return normalize_nodal_index(self.ambient, self.genus, self.subset)

    @property
    def left_markings(self):
        return sorted(self.subset)

    @property
    def right_markings(self):
        return sorted(self.ambient.complement(self.subset))

    @property
    def left_index(self) -> dict:
        return {old: new for new, old in enumerate(self.left_markings, 1)}

    @property
    def right_index(self) -> dict:
        return {old: new for new, old in enumerate(self.right_markings, 1)}

    @property
    def left(self) -> ModuliSpace:
        A = self.ambient
        return ModuliSpace(self.genus, tuple(A.weights[i - 1] for i in self.left_markings) + (1,))

    @property
    def right(self) -> ModuliSpace:
        A = self.ambient
        return ModuliSpace(A.genus - self.genus,
                           tuple(A.weights[i - 1] for i in self.right_markings) + (1,))

    @property
    def p(self) -> int:
        return len(self.subset) + 1

    @property
    def q(self) -> int:
        return self.ambient.n - len(self.subset) + 1


def _factor_term(space, index, gen_kind, *args):
    if gen_kind == "nodal":
        j, J = args
        return _nodal(space, j, {index[x] for x in J})
    if gen_kind == "dsec":
        j, k = (index[x] for x in args)
        return _one(space, DSec(min(j, k), max(j, k)))
    raise ValueError(gen_kind)


@lru_cache(maxsize=None)
def _eta_image(b: NodalBoundaryMap, gen) -> PairClass:
    L, R = b.left, b.right
    zl, zr = DivisorClass.zero(L), DivisorClass.zero(R)
    I = b.subset
    if isinstance(gen, Kappa):
        return PairClass(_one(L, KAPPA) + _one(L, Psi(b.p)), _one(R, KAPPA) + _one(R, Psi(b.q)))
    if isinstance(gen, Lambda):
        return PairClass(_one(L, LAMBDA), _one(R, LAMBDA))
    if isinstance(gen, Psi):
        if gen.i in I:
            return PairClass(_one(L, Psi(b.left_index[gen.i])), zr)
        return PairClass(zl, _one(R, Psi(b.right_index[gen.i])))
    if isinstance(gen, Dirr):
        return PairClass(_one(L, DIRR) if L.genus >= 1 else zl,
                         _one(R, DIRR) if R.genus >= 1 else zr)
    if isinstance(gen, DSec):
        if gen.i in I and gen.j in I:
            return PairClass(_factor_term(L, b.left_index, "dsec", gen.i, gen.j), zr)
        if gen.i not in I and gen.j not in I:
            return PairClass(zl, _factor_term(R, b.right_index, "dsec", gen.i, gen.j))
        return PairClass(zl, zr)
    if isinstance(gen, DNodal):
        out = PairClass(zl, zr)
        if gen == b.divisor:
            # normal bundle; for I = {} or [n] the stratum also meets itself
            # along a second node, which the nesting rule below picks up
            out = PairClass(-_one(L, Psi(b.p)), -_one(R, Psi(b.q)))
        Ic = b.ambient.complement(I)
        # every labeling of the divisor nested inside one side contributes
        for j, J in _reps(b.ambient, gen):
            if j <= b.genus and J <= I:
                out = out + PairClass(_factor_term(L, b.left_index, "nodal", j, J), zr)
            if j <= b.ambient.genus - b.genus and J <= Ic:
                out = out + PairClass(zl, _factor_term(R, b.right_index, "nodal", j, J))
        return out
    raise TypeError(gen)


def nodal_restriction(b: NodalBoundaryMap, c: DivisorClass) -> PairClass:
    _check_on(c, b.ambient, "eta pull-back")
    out = PairClass(DivisorClass.zero(b.left), DivisorClass.zero(b.right))
    for gen, coeff in c.items():
        out = out + coeff * _eta_image(b, gen)
    return PairClass(_validated(out.left), _validated(out.right))


# ---------------------------------------------------------------------------
# irreducible nodal boundary
# ---------------------------------------------------------------------------

def irr_target(space: ModuliSpace) -> ModuliSpace:
    """Source of the gluing map xi: M_{g-1, A u {1,1}} -> M_{g,A}."""
    if space.genus < 1:
        raise InvalidSpaceError("no irreducible nodal boundary in genus 0")
    return ModuliSpace(space.genus - 1, space.weights + (Fraction(1), Fraction(1)))


@lru_cache(maxsize=None)
def _xi_image(space, gen):
    T = irr_target(space)
    p, q = space.n + 1, space.n + 2
    if isinstance(gen, Kappa):
        return _one(T, KAPPA) + _one(T, Psi(p)) + _one(T, Psi(q))
    if isinstance(gen, DNodal):
        labels = []
        if gen.j <= T.genus:
            labels.append((gen.j, gen.subset))
        if gen.j >= 1:
            labels.append((gen.j - 1, gen.subset | {p, q}))
        return _distinct_nodal(T, labels)
    if isinstance(gen, Dirr):
        out = -_one(T, Psi(p)) - _one(T, Psi(q))
        if T.genus >= 1:
            out = out + _one(T, DIRR)
        separating = [_one(T, d) for d in nodal_generators(T)
                      if (p in d.subset) != (q in d.subset)]
        return out + sum_classes(T, separating)
    # lambda, psi_i, D_{j=k}
    return _one(T, gen)


def irr_restriction(space: ModuliSpace, c: DivisorClass) -> DivisorClass:
    """xi^*; the result lives on ``irr_target(space)``."""
    target = irr_target(space)
    _check_on(c, space, "xi pull-back")
    return _apply(target, c, lambda g: _xi_image(space, g))


# ---------------------------------------------------------------------------
# coincident sections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoincidentMap:
    """
    chi_I: M_{g,A'} -> M_{g,A}, where A' merges the markings in I into
    one marking p of weight w_I.  Remaining markings keep their order and
    are renumbered from 1; p is last.
    """

    ambient: ModuliSpace
    subset: frozenset

    def __post_init__(self):
        I = frozenset(self.subset)
        object.__setattr__(self, "subset", I)
        for i in I:
            self.ambient.check_marking(i)
        if len(I) < 2:
            raise InvalidGeneratorError("chi_I needs |I| >= 2, got %s" % format_subset(I))
        w = self.ambient.weight(I)
        if w > 1:
            raise InvalidGeneratorError(
                "chi_I undefined: w_I = %s > 1 for I = %s" % (w, format_subset(I)))

    @property
    def kept(self):
        return sorted(self.ambient.complement(self.subset))

    @property
    def index(self) -> dict:
        """Renumbering of the markings outside I."""
        return {old: new for new, old in enumerate(self.kept, 1)}

    @property
    def p(self) -> int:
        return len(self.kept) + 1

    @property
    def target(self) -> ModuliSpace:
        A = self.ambient
        return ModuliSpace(A.genus, tuple(A.weights[i - 1] for i in self.kept)
                           + (A.weight(self.subset),))


def _chi_image(m: CoincidentMap, gen):
    T = m.target
    I = m.subset
    if isinstance(gen, (Kappa, Lambda, Dirr)):
        return _one(T, gen)
    if isinstance(gen, Psi):
        return _one(T, Psi(m.p if gen.i in I else m.index[gen.i]))
    if isinstance(gen, DSec):
        inside = [x in I for x in (gen.i, gen.j)]
        if all(inside):
            return -_one(T, Psi(m.p))
        if not any(inside):
            a, b = m.index[gen.i], m.index[gen.j]
            return _one(T, DSec(min(a, b), max(a, b)))
        j = gen.i if not inside[0] else gen.j
        a = m.index[j]
        if T.weight((a, m.p)) > 1:
            # the merged point is too heavy to meet x_j on the image
            return DivisorClass.zero(T)
        return _one(T, DSec(a, m.p))
    raise TypeError(gen)


def coincident_restriction(m: CoincidentMap, c: DivisorClass) -> DivisorClass:
    """
    chi_I^*.  Defined on kappa, lambda, psi_i, D_irr, D_{j=k} and on the
    sum of all separating nodal boundaries; a class whose separating
    nodal part is not a multiple of that sum is rejected.
    """
    _check_on(c, m.ambient, "chi pull-back")
    T = m.target
    nodal = nodal_generators(m.ambient)
    coeffs = {c.coefficient(d) for d in nodal}
    if len(coeffs) > 1:
        raise DomainError(
            "chi-pullback undefined on individual nodal generators: the separating "
            "nodal part of %s is not a multiple of the total separating boundary" % c)
    t = coeffs.pop() if coeffs else Fraction(0)
    out = [coeff * _chi_image(m, gen) for gen, coeff in c.items()
           if not isinstance(gen, DNodal)]
    if t:
        out.append(t * sum_classes(T, [_one(T, d) for d in nodal_generators(T)]))
    return _validated(sum_classes(T, out))


def coincident_map(space: ModuliSpace, subset) -> CoincidentMap:
    return CoincidentMap(space, frozenset(subset))
