"""Shared generators and independent checks used by several test files."""
import random
from fractions import Fraction

from parhiggs.errors import CriticalValueError, GenericityError
from parhiggs.triples import (
    TripleSpec, critical_values, sigma_range, triples_poincare, triples_poincare_wallsum,
)
from parhiggs.weights import WeightSystem

PRIMES = (97, 101, 103, 107, 109, 113, 127)


def random_triple_spec(rng, max_g=2, max_n=3, max_d=4):
    """Random (g, weights, d1, d2) with pairwise generic walls, or None."""
    g, n = rng.randint(0, max_g), rng.randint(1, max_n)
    pts = []
    for _ in range(n):
        den = rng.choice(PRIMES)
        a, b1, b2 = rng.sample(range(1, den), 3)
        b1, b2 = sorted((b1, b2))
        pts.append((Fraction(a, den), Fraction(b1, den), Fraction(b2, den)))
    spec = TripleSpec(g, WeightSystem(tuple(pts)),
                      rng.randint(-max_d, max_d), rng.randint(-max_d, max_d))
    try:
        critical_values(spec)
    except GenericityError:
        return None
    return spec


def random_sigmas(rng, spec, count=3):
    """Non-critical sigma values above sigma_m, spread over all chambers."""
    lo, _ = sigma_range(spec)
    walls = critical_values(spec)
    top = walls[-1].sigma_c + 2 if walls else lo + 3
    out = []
    while len(out) < count:
        s = lo + Fraction(rng.randint(1, 10 ** 6), 10 ** 6) * (top - lo)
        try:
            triples_poincare(spec.with_sigma(s))
        except CriticalValueError:
            continue
        out.append(s)
    return out


def two_path_run(n_specs=60, seed=2024):
    """Compare closed form and wall sum; returns (specs checked, comparisons,
    mismatches)."""
    rng = random.Random(seed)
    specs = checks = 0
    bad = []
    while specs < n_specs:
        spec = random_triple_spec(rng)
        if spec is None:
            continue
        specs += 1
        for s in random_sigmas(rng, spec):
            for fixed in (False, True):
                sp = spec.with_sigma(s)
                checks += 1
                if triples_poincare(sp, fixed) != triples_poincare_wallsum(sp, fixed):
                    bad.append((sp, fixed))
    return specs, checks, bad
