from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from detrep._linalg import exact_det
from detrep.biaffine import specialize, symbolic_det, verify
from detrep.construct import cons1, minunif, repjan
from detrep.matpoly import (
    FamilyNotSupported,
    MatrixPoly,
    evaluate_form_matrix,
    evaluate_form_matrix_exact,
    lift,
    matrixpoly_from_json,
    matrixpoly_to_json,
    skew_pad,
    witness_check,
)
from detrep.monoset import check_connected, tree_set
from detrep.poly import MultiPoly, enumerate_monomials

from conftest import random_rational_poly


def random_matrix_poly(n, d, k, seed, rng_range=4) -> MatrixPoly:
    rng = random.Random(seed)
    terms = {
        exp: [[Fraction(rng.randint(-rng_range, rng_range)) for _ in range(k)] for _ in range(k)]
        for exp in enumerate_monomials(n, d)
    }
    return MatrixPoly.make(n, d, k, terms)


def lift_det_equals_exactly(rep, P) -> bool:
    """Exact polynomial identity det(lift) == det(P), proved on an integer grid.

    Both determinants have degree at most d*k in each variable (the x and
    y entries of the lifted matrix live in d*k rows each), so agreement on
    a (d*k+1)^2 integer grid is a complete identity test.
    """
    res = lift(rep, P)
    bound = rep.d * P.k + 1
    for xv in range(bound):
        for yv in range(bound):
            lifted = evaluate_form_matrix_exact(res.matrix, (Fraction(xv), Fraction(yv)))
            target = exact_det(P.evaluate_exact((Fraction(xv), Fraction(yv))))
            if exact_det(lifted) != target:
                return False
    return True


def test_lift_k1_reduces_to_specialize():
    rep = minunif(3)
    p = random_rational_poly(2, 3, seed=2)
    P1 = MatrixPoly.make(2, 3, 1, {e: [[p.terms.get(e, 0)]] for e in enumerate_monomials(2, 3)})
    res = lift(rep, P1)
    direct = specialize(rep, p)
    assert all(res.matrix[i][j] == direct[i][j] for i in range(rep.size) for j in range(rep.size))
    assert res.warranted


def test_lift_dimension_mismatch():
    with pytest.raises(ValueError):
        lift(minunif(3), random_matrix_poly(2, 2, 2, seed=0))


@pytest.mark.parametrize("d,k", [(2, 2), (3, 2), (4, 2), (2, 3)])
def test_lift_determinant_identity_repjan(d, k):
    P = random_matrix_poly(2, d, k, seed=10 * d + k)
    assert lift_det_equals_exactly(repjan(d), P)


def test_lift_determinant_identity_minunif():
    P = random_matrix_poly(2, 3, 2, seed=77)
    assert lift_det_equals_exactly(minunif(3), P)


def test_lift_block_additivity():
    rep = repjan(2)
    Pa = random_matrix_poly(2, 2, 2, seed=31)
    Pb = random_matrix_poly(2, 2, 2, seed=32)
    terms_sum = {
        e: [[Pa.coefficient(e)[i][j] + Pb.coefficient(e)[i][j] for j in range(2)] for i in range(2)]
    for e in enumerate_monomials(2, 2)}
    Ps = MatrixPoly.make(2, 2, 2, terms_sum)
    la, lb, ls = lift(rep, Pa), lift(rep, Pb), lift(rep, Ps)
    base = lift(rep, MatrixPoly.make(2, 2, 2, {}))
    for i in range(ls.size):
        for j in range(ls.size):
            got = ls.matrix[i][j]
            expect = la.matrix[i][j] + lb.matrix[i][j] + base.matrix[i][j].scale(-1)
            assert got == expect


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_witness_families(d):
    assert witness_check(repjan(d))
    assert witness_check(minunif(d))


def test_witness_rejects_other_families(binary_quadric_rep):
    with pytest.raises(FamilyNotSupported):
        witness_check(binary_quadric_rep)


def test_skew_pad_scalar_rep_is_valid(binary_quadric_rep):
    padded = skew_pad(binary_quadric_rep, (1, 0), (0, 1))
    assert padded.size == binary_quadric_rep.size + 4
    assert verify(padded, "symbolic").ok
    assert not lift(padded, random_matrix_poly(2, 2, 2, seed=5)).warranted


def test_skew_pad_noncommuting_counterexample(binary_quadric_rep):
    padded = skew_pad(binary_quadric_rep, (1, 0), (0, 1))
    # generic coefficient matrices do not commute: determinants must differ
    P = random_matrix_poly(2, 2, 2, seed=9)
    ca, cb = np.array(P.coefficient((1, 0)), dtype=float), np.array(P.coefficient((0, 1)), dtype=float)
    assert np.abs(ca @ cb - cb @ ca).max() > 0
    res = lift(padded, P)
    point = (0.37, -0.61)
    d1 = np.linalg.det(evaluate_form_matrix(res.matrix, point))
    d2 = np.linalg.det(P.evaluate(point))
    assert abs(d1 - d2) > 1e-4


def test_skew_pad_commuting_still_agrees(binary_quadric_rep):
    padded = skew_pad(binary_quadric_rep, (1, 0), (0, 1))
    # scalar (=commuting) blocks keep the identity even for the padded rep
    p = random_rational_poly(2, 2, seed=14)
    P1 = MatrixPoly.make(2, 2, 1, {e: [[p.terms.get(e, 0)]] for e in enumerate_monomials(2, 2)})
    res = lift(padded, P1)
    point = (0.2, 0.8)
    d1 = np.linalg.det(evaluate_form_matrix(res.matrix, point))
    assert abs(d1 - complex(p.evaluate(point))) < 1e-9


def test_matrixpoly_json_roundtrip():
    P = random_matrix_poly(2, 3, 2, seed=3)
    back = matrixpoly_from_json(matrixpoly_to_json(P))
    assert back.terms == P.terms and (back.n, back.d, back.k) == (2, 3, 2)


def test_matrixpoly_det_poly():
    P = random_matrix_poly(2, 2, 2, seed=8)
    det = P.det_poly()
    # cross-check at a point against numpy
    point = (0.3, 0.7)
    assert abs(complex(det.to_complex().evaluate(point)) - np.linalg.det(P.evaluate(point))) < 1e-9
