"""
The classes behind the log canonical models of M_{g,n}, and checks of the
divisor identities used to show that the push-forward of Delta_A is ample
and that Delta_A differs from its pull-back by an exceptional divisor.

Each ``verify_*`` function returns a VerificationReport whose difference
is LHS - RHS in Mumford normal form.
"""

from __future__ import annotations

from fractions import Fraction

from .core import (
    DivisorClass, InvalidSpaceError, ModuliSpace,
    VerificationReport, aggregate_classes, as_fraction, kappa, lam,
    nodal_generators, normal_form, psi, sum_classes,
)
from .morphisms import (
    CoincidentMap, NodalBoundaryMap, PairClass, ReductionMap, _nodal, _subsets,
    coincident_restriction, full_reduction_pullback, full_reduction_pushforward,
    irr_restriction, irr_target, nodal_restriction, reduction_pullback, unweighted,
)
from .relative import omega, push_against_section, push_quadratic, sigma


def canonical_class(space: ModuliSpace) -> DivisorClass:
    """K = 13 lambda - 2 D_nod + psi."""
    d_nod, _, psi_sum = aggregate_classes(space)
    return 13 * lam(space) - 2 * d_nod + psi_sum


def canonical_class_kappa(space: ModuliSpace) -> DivisorClass:
    """K = 13/12 kappa - 11/12 D_nod + psi."""
    d_nod, _, psi_sum = aggregate_classes(space)
    return Fraction(13, 12) * kappa(space) - Fraction(11, 12) * d_nod + psi_sum


def _coefficient_weights(space, weights):
    ws = space.weights if weights is None else tuple(as_fraction(a) for a in weights)
    if len(ws) != space.n:
        raise InvalidSpaceError("expected %d weights, got %d" % (space.n, len(ws)))
    return ws


def delta_class(space: ModuliSpace, weights=None) -> DivisorClass:
    """
    Delta = 2 kappa + sum (1 + a_i) psi_i.

    The a_i default to the weights of ``space``; pass ``weights`` to build
    Delta_A on M_{g,n} itself.
    """
    ws = _coefficient_weights(space, weights)
    return sum_classes(space, [2 * kappa(space)] + [(1 + a) * psi(space, i)
                                                    for i, a in enumerate(ws, 1)])


def delta_class_k(space: ModuliSpace, weights=None) -> DivisorClass:
    """Delta = K + 11 lambda + sum a_i psi_i."""
    ws = _coefficient_weights(space, weights)
    return sum_classes(space, [canonical_class(space), 11 * lam(space)]
                       + [a * psi(space, i) for i, a in enumerate(ws, 1)])


def delta_pushforward(space: ModuliSpace) -> DivisorClass:
    """phi_{A*}(Delta_A) = 2 kappa + sum (1+a_i) psi_i + sum_{w_ij <= 1} w_ij D_{i=j}."""
    _, d_sec, _ = aggregate_classes(space)
    dsec_part = sum_classes(space, [space.weight((d.i, d.j)) * DivisorClass.of(space, d)
                                    for d in d_sec.support()])
    return delta_class(space) + dsec_part


def delta_pushforward_via_reduction(space: ModuliSpace) -> DivisorClass:
    return full_reduction_pushforward(space, delta_class(unweighted(space), space.weights))


def delta_pushforward_via_universal_curve(space: ModuliSpace) -> DivisorClass:
    """pi_*((omega + sum a_i sigma_i)(2 omega + sum sigma_i))."""
    e1 = omega(space)
    e2 = 2 * omega(space)
    for i, a in enumerate(space.weights, 1):
        e1 = e1 + a * sigma(space, i)
        e2 = e2 + sigma(space, i)
    return push_quadratic(e1, e2)


def _report(name, space, lhs, rhs, raw=False, checks=None, detail=""):
    diff = normal_form(lhs - rhs)
    checks = dict(checks or {})
    if raw:
        checks["raw agreement"] = lhs == rhs
    return VerificationReport(name, space, diff, checks, detail)


def _pair_report(name, space, lhs: PairClass, rhs: PairClass, detail=""):
    diff = PairClass(normal_form(lhs.left - rhs.left), normal_form(lhs.right - rhs.right))
    checks = {"raw agreement": lhs == rhs}
    return VerificationReport(name, space, diff, checks, detail)


def verify_canonical(space: ModuliSpace) -> VerificationReport:
    return _report("canonical", space, canonical_class_kappa(space), canonical_class(space))


def verify_delta_presentations(space: ModuliSpace) -> VerificationReport:
    return _report("delta-presentations", space, delta_class_k(space), delta_class(space))


def verify_delta_routes(space: ModuliSpace) -> VerificationReport:
    closed = delta_pushforward(space)
    via_red = delta_pushforward_via_reduction(space)
    via_pi = delta_pushforward_via_universal_curve(space)
    diff = normal_form(closed - via_red) + normal_form(closed - via_pi)
    # two independent differences could cancel in the sum; check each too
    checks = {
        "closed = reduction route": normal_form(closed - via_red).is_zero(),
        "closed = pi_* route": normal_form(closed - via_pi).is_zero(),
        "raw agreement": closed == via_red == via_pi,
    }
    return VerificationReport("delta-routes", space, diff, checks)


def verify_nodal_restriction(space: ModuliSpace, genus: int, subset) -> VerificationReport:
    """eta_{i,I}^* phi_*(Delta_A) = pi_1^* phi_*(Delta_{A_I}) + pi_2^* phi_*(Delta_{A_I^c})."""
    b = NodalBoundaryMap(space, genus, frozenset(subset))
    lhs = nodal_restriction(b, delta_pushforward(space))
    rhs = PairClass(delta_pushforward(b.left), delta_pushforward(b.right))
    return _pair_report("nodal-restriction", space, lhs, rhs,
                        detail="D(%d;%s)" % (genus, "{" + ",".join(map(str, sorted(subset))) + "}"))


def verify_irr_restriction(space: ModuliSpace) -> VerificationReport:
    """xi^* phi_*(Delta_A) = phi_*(Delta_{A u {1,1}})."""
    target = irr_target(space)
    lhs = irr_restriction(space, delta_pushforward(space))
    return _report("irr-restriction", space, lhs, delta_pushforward(target), raw=True)


def verify_coincident_restriction(space: ModuliSpace, subset) -> VerificationReport:
    """chi_I^* phi_*(Delta_A) = phi_*(Delta_A') + (|I|-1) pi_*((omega + sum_J a_i sigma_i) sigma_p)."""
    m = CoincidentMap(space, frozenset(subset))
    T = m.target
    lhs = coincident_restriction(m, delta_pushforward(space))
    e = omega(T)
    for i, a in enumerate(T.weights, 1):
        e = e + a * sigma(T, i)
    rhs = delta_pushforward(T) + (len(m.subset) - 1) * push_against_section(e, m.p)
    return _report("coincident-restriction", space, lhs, rhs, raw=True,
                   detail="I=" + "{" + ",".join(map(str, sorted(m.subset))) + "}")


def exceptional_terms(space: ModuliSpace):
    """[(I, (|I|-2)(1-w_I))] over the subsets with |I| >= 2 and w_I <= 1."""
    return [(I, (len(I) - 2) * (1 - space.weight(I)))
            for I in _subsets(space.markings, 2) if space.weight(I) <= 1]


def verify_theorem_decomposition(space: ModuliSpace) -> VerificationReport:
    """Delta_A = phi^* phi_*(Delta_A) + sum_{w_I <= 1} (|I|-2)(1-w_I) D_{0,I} on M_{g,n}."""
    N = unweighted(space)
    lhs = delta_class(N, space.weights)
    terms = exceptional_terms(space)
    rhs = full_reduction_pullback(space, delta_pushforward(space)) + sum_classes(
        N, [c * _nodal(N, 0, I) for I, c in terms])
    checks = {
        "exceptional coefficients >= 0": all(c >= 0 for _, c in terms),
        "coefficient = 0 iff |I| = 2 or w_I = 1": all(
            (c == 0) == (len(I) == 2 or space.weight(I) == 1) for I, c in terms),
    }
    return _report("theorem-decomposition", space, lhs, rhs, raw=True, checks=checks)


def verify_step1_identity(space: ModuliSpace, tau) -> VerificationReport:
    """
    phi^*(2 kappa + psi) = 2 kappa + psi - sum (|I|-2) D_{0,I} for the
    reduction to the symmetric weights (tau, ..., tau).
    """
    tau = as_fraction(tau)
    n = space.n
    if tau <= 0:
        raise InvalidSpaceError("tau must be positive, got %s" % tau)
    if n * tau > 1:
        raise InvalidSpaceError("n*tau = %s > 1" % (n * tau))
    m = ReductionMap(space, ModuliSpace(space.genus, (tau,) * n))
    T = m.target
    lhs = reduction_pullback(m, 2 * kappa(T) + aggregate_classes(T)[2])
    dropped = [(I, len(I) - 2) for I in m.exceptional]
    rhs = 2 * kappa(space) + aggregate_classes(space)[2] - sum_classes(
        space, [c * _nodal(space, 0, I) for I, c in dropped])
    checks = {"dropped coefficients |I|-2 >= 0": all(c >= 0 for _, c in dropped)}
    return _report("step1", space, lhs, rhs, raw=True, checks=checks, detail="tau=%s" % tau)


def nodal_strata(space: ModuliSpace):
    """Every separating boundary as a canonical (j, I) pair."""
    return [(d.j, d.subset) for d in nodal_generators(space)]


def light_subsets(space: ModuliSpace):
    """Subsets I with |I| >= 2 and w_I <= 1 (the domains of chi_I)."""
    return [I for I in _subsets(space.markings, 2) if space.weight(I) <= 1]


def verify_all(space: ModuliSpace, taus=None) -> list:
    """Run every identity that applies to ``space``."""
    reports = [verify_canonical(space), verify_delta_presentations(space),
               verify_delta_routes(space)]
    reports += [verify_nodal_restriction(space, j, I) for j, I in nodal_strata(space)]
    if space.genus >= 1:
        reports.append(verify_irr_restriction(space))
    reports += [verify_coincident_restriction(space, I) for I in light_subsets(space)]
    reports.append(verify_theorem_decomposition(space))
    if space.n >= 1:
        if taus is None:
            taus = default_taus(space)
        reports += [verify_step1_identity(space, t) for t in taus]
    return reports


def default_taus(space: ModuliSpace):
    """tau = 1/(2n) and 1/n, keeping those the weights can be reduced to."""
    n = space.n
    low = min(space.weights)
    return [t for t in (Fraction(1, 2 * n), Fraction(1, n)) if t <= low]
