"""Seeded random inputs shared by unit and acceptance tests."""

import random

from geodeg.exactalg import SparsePolynomial

from .macaulay import monomials_upto


def random_poly(rng: random.Random, nvars, degree, nterms):
    mons = monomials_upto(nvars, degree)
    top = [m for m in mons if sum(m) == degree]
    terms = {rng.choice(top): rng.choice([-3, -2, -1, 1, 2, 3])}
    for _ in range(nterms - 1):
        terms[rng.choice(mons)] = rng.randint(-3, 3)
    return SparsePolynomial(nvars, terms)


def membership_cases(seed, count):
    """``(gens, f, nvars)`` with about half the probes built inside the ideal."""
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        n = rng.randint(1, 3)
        gens = [random_poly(rng, n, rng.randint(1, 3), rng.randint(1, 3))
                for _ in range(rng.randint(1, 3))]
        if rng.random() < 0.5:
            f = SparsePolynomial.zero(n)
            for g in gens:
                d = 4 - g.total_degree()
                if d >= 0:
                    f = f + g * random_poly(rng, n, rng.randint(0, d), 2)
        else:
            f = random_poly(rng, n, rng.randint(0, 4), rng.randint(1, 4))
        cases.append((gens, f, n))
    return cases
