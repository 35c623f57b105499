from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from detrep.poly import COMPLEX, MultiPoly


def random_rational_poly(n: int, d: int, seed: int, coeff_range: int = 9, full: bool = True) -> MultiPoly:
    """Random polynomial with small integer coefficients, all terms filled."""
    rng = random.Random(seed)
    terms = {}
    from detrep.poly import enumerate_monomials

    for exp in enumerate_monomials(n, d):
        c = rng.randint(-coeff_range, coeff_range)
        if full and c == 0:
            c = 1
        terms[exp] = Fraction(c)
    return MultiPoly.make(n, terms)


def random_full_system(d: int, seed: int, real: bool = False):
    """A pair of dense random bivariate polynomials of exact degree d."""
    rng = np.random.default_rng(seed)

    def one(shift):
        terms = {}
        for a in range(d + 1):
            for b in range(d + 1 - a):
                if real:
                    c = complex(rng.standard_normal())
                else:
                    c = complex(rng.standard_normal(), rng.standard_normal())
                terms[(a, b)] = c
        return MultiPoly.make(2, terms, COMPLEX)

    return one(0), one(1)


def pairing_distance(roots_a, roots_b) -> float:
    """Max matched distance under the optimal bipartite pairing."""
    from scipy.optimize import linear_sum_assignment

    if len(roots_a) != len(roots_b):
        return float("inf")
    if not roots_a:
        return 0.0
    cost = np.array([[abs(x1 - x2) + abs(y1 - y2) for (x2, y2) in roots_b] for (x1, y1) in roots_a])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@pytest.fixture
def binary_quadric_rep():
    from detrep.construct import cons1
    from detrep.monoset import check_connected

    return cons1(check_connected(2, [(0, 0), (1, 0), (0, 1)]), 2)
