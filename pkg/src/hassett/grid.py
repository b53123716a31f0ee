"""
Deterministic sampling of test spaces and weight chains.

Every sampler draws from ``random.Random`` seeded by a string built from
the user seed and the (g, n) cell, so cells are independent of each other
and of iteration order.

Weights are fractions k/d with d in DENOMINATORS.  Grid weights are kept
at least 1/n so that the symmetric data (tau, ..., tau) with
tau in {1/(2n), 1/n} is a reduction of every sampled datum.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from math import ceil

from .core import InvalidSpaceError, ModuliSpace

DEFAULT_SEED = 20111
SEED_ENV = "HASSETT_GRID_SEED"
DENOMINATORS = (2, 3, 4, 5, 6, 8, 10, 12)
GENERA = (1, 2, 3)
SIZES = (0, 1, 2, 3, 4, 5)
SAMPLES = 20


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else DEFAULT_SEED


def _rng(seed, *cell):
    return random.Random(":".join(str(x) for x in (seed,) + cell))


def random_weight(rng, low=Fraction(0), high=Fraction(1)) -> Fraction:
    """A fraction k/d in (0, 1] with low <= k/d <= high."""
    while True:
        d = rng.choice(DENOMINATORS)
        k_min = max(1, ceil(low * d))
        k_max = int(high * d)
        if k_min <= k_max:
            return Fraction(rng.randint(k_min, k_max), d)


def stable(g, weights) -> bool:
    try:
        ModuliSpace(g, tuple(weights))
    except InvalidSpaceError:
        return False
    return True


def _wall_sample(rng, n):
    """Weights where some I with |I| >= 2 has w_I = 1 exactly."""
    k = rng.randint(2, n)
    chosen = rng.sample(range(n), k)
    ws = [random_weight(rng, Fraction(1, n)) for _ in range(n)]
    if k == 2 and rng.random() < 0.5:
        a = random_weight(rng, Fraction(1, n), 1 - Fraction(1, n))
        ws[chosen[0]], ws[chosen[1]] = a, 1 - a
    else:
        for i in chosen:
            ws[i] = Fraction(1, k)
    return tuple(ws)


def sample_spaces(g, n, samples=SAMPLES, seed=None) -> list:
    """Up to ``samples`` distinct stable spaces of genus g with n markings."""
    seed = default_seed() if seed is None else seed
    if not stable(g, (1,) * n):
        return []
    rng = _rng(seed, "grid", g, n)
    out = [(Fraction(1),) * n]
    attempts = 0
    while len(out) < samples and attempts < 50 * samples:
        attempts += 1
        if n >= 2 and attempts % 3 == 1:
            ws = _wall_sample(rng, n)
        else:
            ws = tuple(random_weight(rng, Fraction(1, max(n, 1))) for _ in range(n))
        if ws not in out and stable(g, ws):
            out.append(ws)
    return [ModuliSpace(g, ws) for ws in out]


def grid(genera=GENERA, sizes=SIZES, samples=SAMPLES, seed=None) -> list:
    return [S for g in genera for n in sizes for S in sample_spaces(g, n, samples, seed)]


def _lower(rng, ws, g):
    """A stable weight datum below ``ws`` componentwise."""
    while True:
        out = tuple(a if rng.random() < 0.2 else random_weight(rng, high=a) for a in ws)
        if stable(g, out):
            return out


def sample_reductions(g, n, count=50, seed=None) -> list:
    """``count`` pairs (A, B) of stable data with B <= A."""
    seed = default_seed() if seed is None else seed
    if not stable(g, (1,) * n):
        return []
    rng = _rng(seed, "reduction", g, n)
    pairs = []
    while len(pairs) < count:
        A = tuple(random_weight(rng) if rng.random() < 0.7 else Fraction(1) for _ in range(n))
        if not stable(g, A):
            continue
        pairs.append((ModuliSpace(g, A), ModuliSpace(g, _lower(rng, A, g))))
    return pairs


def sample_chains(g, n, count=30, seed=None) -> list:
    """``count`` chains (A, B, C) with A >= B >= C componentwise."""
    seed = default_seed() if seed is None else seed
    if not stable(g, (1,) * n):
        return []
    rng = _rng(seed, "chain", g, n)
    chains = []
    while len(chains) < count:
        A = tuple(random_weight(rng) if rng.random() < 0.7 else Fraction(1) for _ in range(n))
        if not stable(g, A):
            continue
        B = _lower(rng, A, g)
        C = _lower(rng, B, g)
        chains.append(tuple(ModuliSpace(g, w) for w in (A, B, C)))
    return chains
