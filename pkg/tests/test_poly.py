from __future__ import annotations

import math
import random
from fractions import Fraction
from math import comb

import pytest

from detrep.poly import (
    COMPLEX,
    NEG_INF,
    RATIONAL,
    AffineForm,
    MultiPoly,
    affine_from_json,
    affine_to_json,
    enumerate_monomials,
    gradedlex_key,
    poly_from_json,
    poly_to_json,
)

from conftest import random_rational_poly


def test_enumerate_univariate():
    assert enumerate_monomials(1, 2) == [(0,), (1,), (2,)]


def test_enumerate_counts():
    assert len(enumerate_monomials(2, 4)) == 15
    seq = enumerate_monomials(3, 2)
    assert len(seq) == 10
    assert seq[0] == (0, 0, 0)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("d", range(0, 10))
def test_enumerate_binomial_law(n, d):
    assert len(enumerate_monomials(n, d)) == comb(n + d, n)


def test_gradedlex_order():
    seq = enumerate_monomials(2, 2)
    # ascending degree, x before y inside each degree
    assert seq == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert seq == sorted(seq, key=gradedlex_key)
    degrees = [sum(e) for e in seq]
    assert degrees == sorted(degrees)


def test_eval_circle():
    p = MultiPoly.make(2, {(2, 0): 1, (0, 2): 1, (0, 0): -1})
    assert p.evaluate((1, 0)) == 0
    assert p.evaluate((Fraction(1, 2), 0)) == Fraction(-3, 4)


def test_eval_xy_and_zero():
    p = MultiPoly.make(2, {(1, 1): 1})
    assert p.evaluate((2, 3)) == 6
    assert MultiPoly.zero(2).evaluate((17, -4)) == 0


def test_eval_length_mismatch():
    with pytest.raises(ValueError):
        MultiPoly.make(2, {(1, 0): 1}).evaluate((1,))


def test_ring_identities():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    one = MultiPoly.constant(2, 1)
    assert (x + y) * (x - y) == x * x - y * y
    p = x * y + x - one
    assert (p + p.scale(-1)).is_zero()
    assert (one + x) ** 2 == one + x.scale(2) + x * x


def test_degree_sentinel():
    assert MultiPoly.zero(3).degree() == NEG_INF
    assert MultiPoly.constant(3, 5).degree() == 0
    p = MultiPoly.make(2, {(2, 1): 1})
    # degree stays monotone under addition thanks to the sentinel
    assert max(MultiPoly.zero(2).degree(), p.degree()) == 3


def test_mixed_kind_rejected():
    p = MultiPoly.make(1, {(1,): Fraction(1)})
    q = MultiPoly.make(1, {(1,): 1.0})
    assert q.kind == COMPLEX
    with pytest.raises(ValueError):
        _ = p + q


def test_product_evaluation_homomorphism():
    rng = random.Random(5)
    for trial in range(25):
        n = rng.choice([1, 2, 3])
        p = random_rational_poly(n, rng.randint(0, 4), seed=trial, full=False)
        q = random_rational_poly(n, rng.randint(0, 4), seed=trial + 1000, full=False)
        point = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)


def test_complex_equality_tolerance():
    p = MultiPoly.make(1, {(1,): 1.0})
    q = MultiPoly.make(1, {(1,): 1.0 + 1e-14})
    assert p.equals(q)
    assert not p.equals(MultiPoly.make(1, {(1,): 1.0 + 1e-6}))
    assert p.equals(MultiPoly.make(1, {(1,): 1.0 + 1e-6}), rel_tol=1e-3)


def test_derivative():
    p = MultiPoly.make(2, {(2, 1): Fraction(3), (0, 1): Fraction(1)})
    assert p.derivative(0) == MultiPoly.make(2, {(1, 1): Fraction(6)})
    assert p.derivative(1) == MultiPoly.make(2, {(2, 0): Fraction(3), (0, 0): Fraction(1)})


def test_compose():
    p = MultiPoly.make(1, {(2,): Fraction(1)})
    shift = MultiPoly.make(1, {(1,): Fraction(1), (0,): Fraction(-1)})
    assert p.compose([shift]) == MultiPoly.make(1, {(2,): 1, (1,): -2, (0,): 1})


def test_rational_to_complex_is_explicit():
    p = MultiPoly.make(1, {(1,): Fraction(1, 3)})
    pc = p.to_complex()
    assert pc.kind == COMPLEX
    assert math.isclose(pc.terms[(1,)].real, 1 / 3)


def test_affine_form_eval():
    f = AffineForm(Fraction(2), (Fraction(1), Fraction(-1)))
    assert f.evaluate((3, 4)) == 1
    assert AffineForm.zero(2).is_zero()
    assert f.to_poly() == MultiPoly.make(2, {(0, 0): 2, (1, 0): 1, (0, 1): -1})


def test_poly_json_roundtrip_rational():
    p = random_rational_poly(2, 3, seed=7, full=False)
    obj = poly_to_json(p)
    assert all(isinstance(t["re"], str) for t in obj["terms"])
    assert poly_from_json(obj) == p


def test_poly_json_roundtrip_complex_and_missing_im():
    p = MultiPoly.make(2, {(1, 0): 2.5 + 1.0j, (0, 1): -0.5})
    q = poly_from_json(poly_to_json(p))
    assert q.equals(p)
    # a missing "im" parses as zero imaginary part
    r = poly_from_json({"n": 1, "terms": [{"exp": [2], "re": 4.0}]})
    assert r.terms[(2,)] == 4.0 + 0j


def test_poly_json_rational_strings():
    obj = {"n": 1, "terms": [{"exp": [0], "re": "3/4"}, {"exp": [1], "re": "-2"}]}
    p = poly_from_json(obj)
    assert p.kind == RATIONAL
    assert p.terms[(0,)] == Fraction(3, 4)
    assert p.terms[(1,)] == Fraction(-2)


def test_affine_json_roundtrip():
    f = AffineForm(Fraction(1, 2), (Fraction(-3), Fraction(0)))
    assert affine_from_json(affine_to_json(f)) == f
