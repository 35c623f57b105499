from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from detrep._linalg import exact_det
from detrep.monoset import (
    MonomialSet,
    binary_axis_set,
    binary_sets,
    build_mv,
    cartan_matrix,
    catalog_rows,
    check_connected,
    cover_failure,
    find_decomposition,
    lattice_set,
    monoset_from_json,
    monoset_to_json,
    split_sets,
    table_sets,
    tree_set,
    turan_pair_count,
    turan_sets,
)
from detrep.biaffine import symbolic_det
from detrep.poly import MultiPoly, enumerate_monomials

TABLE_SIZES = {
    (2, 2): 3, (2, 3): 5, (2, 4): 7, (2, 5): 9, (2, 6): 11, (2, 7): 13, (2, 8): 15, (2, 9): 17,
    (3, 2): 4, (3, 3): 7, (3, 4): 10, (3, 5): 14, (3, 6): 18, (3, 7): 22, (3, 8): 27, (3, 9): 34,
    (4, 2): 5, (4, 3): 9, (4, 4): 14, (4, 5): 19, (4, 6): 26, (4, 7): 34, (4, 8): 44,
    (5, 2): 6, (5, 3): 11, (5, 4): 18, (5, 5): 26,
    (6, 2): 7, (6, 3): 13, (6, 4): 22, (6, 5): 33,
    (7, 2): 8, (7, 3): 15, (7, 4): 27, (7, 5): 39,
    (8, 2): 9, (8, 3): 17, (8, 4): 32,
}


def test_check_connected_simple():
    ms = check_connected(2, [(0, 0), (1, 0), (1, 1)])
    assert ms.members == ((0, 0), (1, 0), (1, 1))
    assert ms.parents[1] == (0, 0)  # (1,0) from constant via x
    assert ms.parents[2] == (1, 1)  # (1,1) from (1,0) via y


def test_check_connected_failures():
    with pytest.raises(ValueError, match="not connected"):
        check_connected(2, [(0, 0), (1, 1)])
    with pytest.raises(ValueError, match="missing"):
        check_connected(2, [(1, 0)])


def test_check_connected_univariate_chain():
    ms = check_connected(1, [(0,), (1,), (2,), (3,)])
    assert [p for p in ms.parents[1:]] == [(0, 0), (1, 0), (2, 0)]


def test_build_mv_binary_quadric_block():
    ms = check_connected(2, [(0, 0), (1, 0), (0, 1)])
    mv = build_mv(ms)
    rows = [[(f.constant, f.linear) for f in row] for row in mv]
    zero = (Fraction(0), (Fraction(0), Fraction(0)))
    x_neg = (Fraction(0), (Fraction(-1), Fraction(0)))
    y_neg = (Fraction(0), (Fraction(0), Fraction(-1)))
    one = (Fraction(1), (Fraction(0), Fraction(0)))
    assert rows == [[x_neg, one, zero], [y_neg, zero, one]]


def test_build_mv_power_chain_block():
    ms = check_connected(2, [(a, 0) for a in range(5)])
    mv = build_mv(ms)
    for i, row in enumerate(mv):
        assert row[i].linear[0] == -1
        assert row[i + 1].constant == 1
        assert sum(1 for f in row if not f.is_zero()) == 2


def _minor_polys(V: MonomialSet):
    mv = build_mv(V)
    m = len(V)
    out = []
    for j in range(m):
        cols = [c for c in range(m) if c != j]
        sub = [[mv[i][c].to_poly() for c in cols] for i in range(m - 1)]
        out.append(symbolic_det(sub, cap=None) if sub else MultiPoly.constant(V.n, 1))
    return out


@pytest.mark.parametrize("members", [
    [(0, 0), (1, 0), (0, 1)],
    [(a, 0) for a in range(5)],
    [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (2, 1)],
])
def test_mv_minor_identity(members):
    # the maximal minors alternate in sign through the member monomials
    V = check_connected(2, members)
    for j, (minor, exp) in enumerate(zip(_minor_polys(V), V.members)):
        expected = MultiPoly.make(2, {exp: (-1) ** j})
        assert minor == expected


def test_mv_kernel_identity():
    V = tree_set(4)
    mv = build_mv(V)
    monos = [MultiPoly.make(2, {e: 1}) for e in V.members]
    for row in mv:
        acc = MultiPoly.zero(2)
        for f, mono in zip(row, monos):
            acc = acc + f.to_poly() * mono
        assert acc.is_zero()


def test_tree_sizes_match_published_row():
    assert [len(tree_set(d)) for d in range(3, 13)] == [5, 8, 11, 15, 19, 24, 29, 35, 41, 48]


@pytest.mark.parametrize("d", range(1, 13))
def test_tree_cover(d):
    assert cover_failure(d, tree_set(d)) is None


def test_lattice_cartan_index():
    for n in range(2, 9):
        assert abs(exact_det(cartan_matrix(n))) == n


def test_lattice_n2_even_second_coordinate():
    S = lattice_set(2, 5)
    for a, b in S.members:
        assert a == 0 or b == 0 or b % 2 == 0


def test_lattice_cover_shifted_basis_only():
    # every simplex point is a member or one e_2..e_n step above a member
    for n, d in [(2, 4), (3, 4), (3, 6), (4, 3)]:
        S = lattice_set(n, d)
        members = S.member_set()
        for alpha in enumerate_monomials(n, d):
            hits = [alpha in members]
            for k in range(1, n):
                below = tuple(a - (i == k) for i, a in enumerate(alpha))
                hits.append(all(e >= 0 for e in below) and below in members)
            assert any(hits), alpha


def test_lattice_3_6_size_frozen():
    # independent count: the index-3 sublattice of Z^2 is {v1 == v2 mod 3}
    S = lattice_set(3, 6)
    direct = 0
    for alpha in enumerate_monomials(3, 6):
        if 0 in alpha or (alpha[1] - alpha[2]) % 3 == 0:
            direct += 1
    assert len(S) == direct == 72


def test_binary_axis_sets():
    assert binary_axis_set(0, 21) == [0, 1, 4, 5, 16, 17, 20, 21]
    assert binary_axis_set(1, 10) == [0, 2, 8, 10]


def test_binary_sets_box_decomposition():
    A0, A1 = binary_sets(3, 8)
    s0, s1 = A0.member_set(), A1.member_set()
    for alpha in itertools.product(range(9), repeat=3):
        ok = any(
            tuple(a - b for a, b in zip(alpha, beta)) in s1
            for beta in s0
            if all(a >= b for a, b in zip(alpha, beta))
        )
        assert ok, alpha


def test_binary_sets_require_three_variables():
    with pytest.raises(ValueError):
        binary_sets(2, 4)


def test_split_sets():
    V, W = split_sets(2, 4)
    assert V.members == tuple((a, 0) for a in range(5))
    assert W.members == tuple((0, b) for b in range(5))
    V, W = split_sets(4, 2)
    assert len(V) == len(W) == 6
    assert cover_failure(2, V, W) is None
    with pytest.raises(ValueError):
        split_sets(3, 2)


def test_turan_counts():
    assert turan_pair_count(6) == 3
    assert turan_pair_count(8) == 7
    assert turan_pair_count(9) == 9
    for n in range(4, 13):
        V, W = turan_sets(n)
        pairs = [m for m in W.members if sum(m) == 2 and max(m) == 1]
        assert len(pairs) == turan_pair_count(n) == (n // 3) * n - 3 * (n // 3) * (n // 3 + 1) // 2


def test_turan_nine_squarefree_coverage():
    # every choice of four indices contains a same-group pair
    _, W = turan_sets(9)
    blocks = [tuple(i for i, e in enumerate(m) if e) for m in W.members if sum(m) == 2 and max(m) == 1]
    for four in itertools.combinations(range(9), 4):
        assert any(set(b) <= set(four) for b in blocks)


def test_turan_six_groups():
    _, W = turan_sets(6)
    pairs = {tuple(i for i, e in enumerate(m) if e) for m in W.members if sum(m) == 2 and max(m) == 1}
    assert pairs == {(0, 1), (2, 3), (4, 5)}


def test_turan_requires_four_variables():
    with pytest.raises(ValueError):
        turan_sets(3)


def test_catalog_sizes_and_covers():
    for n, d in catalog_rows():
        V, W = table_sets(n, d)
        assert len(V) + len(W) - 1 == TABLE_SIZES[(n, d)], (n, d)
        assert cover_failure(d, V, W) is None, (n, d)


def test_catalog_specific_rows():
    V, W = table_sets(3, 5)
    assert len(V) + len(W) - 1 == 14
    mixed = [m for m in W.members if max(m) == 1 and sum(m) == 2]
    assert mixed == [(1, 1, 0)]
    V, W = table_sets(4, 6)
    assert len(V) + len(W) - 1 == 26
    V, W = table_sets(8, 4)
    pairs = {tuple(i for i, e in enumerate(m) if e) for m in W.members if sum(m) == 2 and max(m) == 1}
    assert pairs == {(0, 1), (1, 2), (0, 2), (3, 4), (3, 5), (4, 5), (6, 7)}
    assert len(V) + len(W) - 1 == 32


def test_catalog_rejects_unknown():
    with pytest.raises(KeyError):
        table_sets(9, 4)


def test_all_generators_are_connected():
    # check_connected re-validates every generator output
    sets = [tree_set(6), lattice_set(3, 4), *split_sets(4, 3), *turan_sets(7), *binary_sets(3, 6)]
    for ms in sets:
        again = check_connected(ms.n, ms.members)
        assert again.members == ms.members


def test_find_decomposition_tiebreak():
    V = check_connected(2, [(0, 0), (1, 0), (0, 1)])
    # xy admits (delta=x, j=y-member) and (delta=y, j=x-member); the
    # smallest delta index wins
    delta, j, i = find_decomposition((1, 1), V)
    assert delta == (1, 0)
    assert V.members[j] == (0, 1)
    assert i == 0


def test_monoset_json_roundtrip():
    ms = tree_set(5)
    obj = monoset_to_json(ms)
    assert monoset_from_json(obj).members == ms.members
    assert obj["parents"][0]["child"] == 1
