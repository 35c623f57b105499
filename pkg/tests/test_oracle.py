from __future__ import annotations

import math

import numpy as np
import pytest

from detrep.oracle import PositiveDimensionalError, oracle_roots, sylvester_matrix, _y_coefficients
from detrep.poly import COMPLEX, MultiPoly

from conftest import pairing_distance, random_full_system


def _poly(terms):
    return MultiPoly.make(2, {k: complex(v) for k, v in terms.items()}, COMPLEX)


CIRCLE = _poly({(2, 0): 1, (0, 2): 1, (0, 0): -1})
LINE = _poly({(1, 0): 1, (0, 1): -1})


def test_sylvester_shape_and_det():
    pc, qc = _y_coefficients(CIRCLE), _y_coefficients(LINE)
    s = sylvester_matrix(pc, qc, 0.5)
    assert s.shape == (3, 3)
    # Res_y(circle, line)(x) = 2x^2 - 1 up to sign
    vals = [np.linalg.det(sylvester_matrix(pc, qc, x)) for x in (0.0, 1.0, 2.0)]
    expected = [2 * x * x - 1 for x in (0.0, 1.0, 2.0)]
    ratios = [v / e for v, e in zip(vals, expected)]
    assert np.allclose(ratios, ratios[0])


def test_circle_line_roots():
    rs = oracle_roots(CIRCLE, LINE)
    got = sorted((round(x.real, 9), round(y.real, 9)) for x, y in rs.roots)
    r = round(math.sqrt(0.5), 9)
    assert got == [(-r, -r), (r, r)]
    assert rs.max_residual() < 1e-12


def test_hyperbola_line_roots():
    p = _poly({(1, 1): 1, (0, 0): -1})
    q = _poly({(1, 0): 1, (0, 1): 1, (0, 0): -3})
    rs = oracle_roots(p, q)
    xs = sorted(x.real for x, _ in rs.roots)
    assert np.allclose(xs, [(3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2])
    for x, y in rs.roots:
        assert abs(x + y - 3) < 1e-9


@pytest.mark.parametrize("d", [3, 5, 8])
def test_random_full_counts(d):
    for seed in (0, 1):
        p, q = random_full_system(d, seed=1000 * d + seed, real=(seed == 0))
        rs = oracle_roots(p, q)
        assert len(rs) == d * d
        assert rs.max_residual() < 1e-8


def test_degree_five_self_check():
    p, q = random_full_system(5, seed=42)
    rs = oracle_roots(p, q)
    assert len(rs) == 25
    assert rs.max_residual() < 1e-8


def test_positive_dimensional_detected():
    f = _poly({(1, 0): 1, (0, 1): 1})
    g1 = _poly({(1, 0): 1, (0, 1): -1})
    g2 = _poly({(1, 0): 1, (0, 1): 2})
    with pytest.raises(PositiveDimensionalError):
        oracle_roots(f * g1, f * g2)


def test_zero_input_rejected():
    with pytest.raises(ValueError):
        oracle_roots(MultiPoly.zero(2, COMPLEX), LINE)


def test_constant_polynomial_no_roots():
    rs = oracle_roots(_poly({(0, 0): 2}), LINE)
    assert len(rs) == 0 and rs.status == "ok"


def test_degenerate_leading_coefficient_rotation():
    # q has no pure-y term: deg_y(q) < deg(q) forces the rotation path
    p = _poly({(2, 0): 1, (0, 2): 1, (0, 0): -4})
    q = _poly({(1, 0): 1, (0, 0): -1})  # the line x = 1
    rs = oracle_roots(p, q)
    got = sorted(round(y.real, 6) for _, y in rs.roots)
    assert got == [-round(math.sqrt(3), 6), round(math.sqrt(3), 6)]


def test_rational_input_accepted():
    from fractions import Fraction

    p = MultiPoly.make(2, {(2, 0): Fraction(1), (0, 2): Fraction(1), (0, 0): Fraction(-1)})
    q = MultiPoly.make(2, {(1, 0): Fraction(1), (0, 1): Fraction(-1)})
    rs = oracle_roots(p, q)
    assert len(rs) == 2


def test_oracle_matches_eigensolver_small():
    from detrep.twopareig import solve

    p, q = random_full_system(4, seed=77)
    rs = solve(p, q)
    osr = oracle_roots(p, q)
    assert pairing_distance(rs.roots, osr.roots) < 1e-6
