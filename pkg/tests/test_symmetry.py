from __future__ import annotations

import random
from fractions import Fraction

import pytest

from detrep._linalg import matmul
from detrep.biaffine import verify
from detrep.construct import cons1, minunif, repjan
from detrep.monoset import check_connected, tree_set
from detrep.symmetry import AffineMap, act, coeff_action

# the worked 6x6 coefficient action of g(x,y) = (y, x+1) on quadrics
RHO_PRINTED = [
    [1, -1, 0, 1, 0, 0],
    [0, 0, 1, 0, -1, 0],
    [0, 1, 0, -2, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0],
]
RHO_INV_PRINTED = [
    [1, 0, 1, 0, 0, 1],
    [0, 0, 1, 0, 0, 2],
    [0, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0],
]


def swap_shift_map() -> AffineMap:
    return AffineMap.make([[0, 1], [1, 0]], [0, 1])


def test_affine_map_group_axioms():
    g = swap_shift_map()
    gi = g.inverse()
    e = g.compose(gi)
    ident = AffineMap.identity(2)
    assert e.a == ident.a and e.b == ident.b
    h = AffineMap.random(2, seed=12)
    lhs = g.compose(h).apply((Fraction(1), Fraction(2)))
    rhs = g.apply(h.apply((Fraction(1), Fraction(2))))
    assert lhs == rhs


def test_affine_map_singular_rejected():
    with pytest.raises(ValueError):
        AffineMap.make([[1, 2], [2, 4]], [0, 0])


def test_coeff_action_matches_printed_matrix():
    ca = coeff_action(swap_shift_map(), 2, 2)
    assert [[int(v) for v in row] for row in ca.rho] == RHO_PRINTED
    assert [[int(v) for v in row] for row in ca.inverse_matrix()] == RHO_INV_PRINTED


def test_coeff_action_identity():
    ca = coeff_action(AffineMap.identity(2), 2, 2)
    assert all(ca.rho[i][j] == (i == j) for i in range(6) for j in range(6))


def test_coeff_action_scaling():
    ca = coeff_action(AffineMap.make([[2]], [0]), 1, 2)
    assert [list(r) for r in ca.rho] == [
        [1, 0, 0],
        [0, Fraction(1, 2), 0],
        [0, 0, Fraction(1, 4)],
    ]


def test_rho_inverse_exact():
    for seed in range(6):
        g = AffineMap.random(2, seed=seed)
        rho = coeff_action(g, 2, 3).rho
        rho_inv = coeff_action(g.inverse(), 2, 3).rho
        prod = matmul([list(r) for r in rho], [list(r) for r in rho_inv])
        assert all(prod[i][j] == (i == j) for i in range(len(prod)) for j in range(len(prod)))


def test_act_identity_is_noop(binary_quadric_rep):
    moved = act(AffineMap.identity(2), binary_quadric_rep)
    assert moved.m0 == binary_quadric_rep.m0
    assert moved.malpha == binary_quadric_rep.malpha


def test_act_printed_substitution(binary_quadric_rep):
    # x <- y - 1 turns the row (-x, 1, 0) into (1 - y, 1, 0)
    moved = act(swap_shift_map(), binary_quadric_rep)
    row = moved.m0[1]
    assert row[0].constant == 1 and row[0].linear == (Fraction(0), Fraction(-1))
    assert row[1].constant == 1 and row[2].is_zero()
    row2 = moved.m0[2]
    assert row2[0].linear == (Fraction(-1), Fraction(0))
    assert verify(moved, "symbolic").ok


def test_act_preserves_identity_on_families():
    g = AffineMap.random(2, seed=3)
    for rep in (minunif(3), repjan(2), cons1(tree_set(3), 3)):
        moved = act(g, rep)
        assert moved.size == rep.size
        assert verify(moved, "random", trials=20, seed=11).ok


def test_act_group_law_by_determinant():
    g = AffineMap.random(2, seed=21)
    h = AffineMap.random(2, seed=22)
    rep = minunif(2)
    both = act(g, act(h, rep))
    composed = act(g.compose(h), rep)
    assert verify(both, "random", trials=20, seed=1).ok
    assert verify(composed, "random", trials=20, seed=2).ok


def test_act_on_higher_variable_count():
    from detrep.construct import construct

    rep = construct(3, 2, "cons2-table")
    g = AffineMap.random(3, seed=5)
    assert verify(act(g, rep), "random", trials=20, seed=4).ok
