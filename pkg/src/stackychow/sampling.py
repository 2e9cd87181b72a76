"""Seeded random inputs for property tests and ``--seed`` runs."""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .arith import LaurentPoly2, UniPoly
from .cycles import ZeroCycleOnR


def random_rat(rng: random.Random, num_max: int = 9, dens=(1, 2, 3)) -> Fraction:
    return Fraction(rng.choice((-1, 1)) * rng.randint(1, num_max), rng.choice(dens))


def random_laurent(rng: random.Random, box: int = 4, max_terms: int = 6) -> LaurentPoly2:
    """Non-monomial Laurent polynomial, support in ``[-box, box]^2``."""
    while True:
        n = rng.randint(2, max_terms)
        terms = {
            (rng.randint(-box, box), rng.randint(-box, box)): random_rat(rng) for _ in range(n)
        }
        f = LaurentPoly2(terms)
        if not f.is_monomial():
            return f


def random_point(rng: random.Random) -> Fraction:
    while True:
        r = random_rat(rng)
        if r != -1:
            return r


def random_monic(rng: random.Random, max_degree: int = 3) -> UniPoly:
    """Monic polynomial with no zeros at 0 or -1."""
    while True:
        d = rng.randint(1, max_degree)
        g = UniPoly([random_rat(rng, 5) for _ in range(d)] + [1])
        if g(0) != 0 and g(-1) != 0:
            return g


def random_cycle(rng: random.Random, max_components: int = 3) -> ZeroCycleOnR:
    comps = []
    for _ in range(rng.randint(1, max_components)):
        if rng.random() < 0.5:
            g = UniPoly.linear_root(random_point(rng))
        else:
            g = random_monic(rng)
        comps.append((g, rng.choice((-3, -2, -1, 1, 2, 3))))
    return ZeroCycleOnR(comps)


def random_rays(rng: random.Random, bound: int = 5, max_count: int = 6) -> list[tuple[int, int]]:
    """Distinct primitive vectors with entries in ``[-bound, bound]``."""
    out: list[tuple[int, int]] = []
    for _ in range(rng.randint(1, max_count)):
        while True:
            v = (rng.randint(-bound, bound), rng.randint(-bound, bound))
            if v != (0, 0) and gcd(*v) == 1:
                break
        if v not in out:
            out.append(v)
    return out
