"""Monomial sets connected to 1 and the companion block M_V.

These sets are the combinatorial seed of every representation built in
:mod:`detrep.construct`: a set of exponent vectors containing 0 in which
every member can be walked down to 0 by repeatedly subtracting a single
standard basis vector.  ``build_mv`` turns such a set into the
(m-1) x m block whose maximal minors span exactly the monomials of the
set (with alternating signs).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .poly import AffineForm, Exponent, enumerate_monomials, gradedlex_key


@dataclass(frozen=True, eq=False)
class MonomialSet:
    """Exponent vectors in graded-lex order with connection witnesses.

    ``parents[i]`` is ``(j, k)`` with ``members[i] = members[j] + e_k``
    (``None`` for the constant member at index 0).
    """

    n: int
    members: tuple[Exponent, ...]
    parents: tuple

    def __len__(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def index(self, exp: Exponent) -> int:
        return self.members.index(tuple(exp))


def check_connected(n: int, members) -> MonomialSet:
    """Validate connectivity to 0 and return the set with parent edges.

    Raises ``ValueError`` naming the first member (in graded-lex order)
    that has no neighbour one step below it in the set.
    """
    mems = sorted({tuple(int(e) for e in m) for m in members}, key=gradedlex_key)
    if not mems:
        raise ValueError("empty monomial set")
    for m in mems:
        if len(m) != n:
            raise ValueError(f"member {m} has wrong length (n={n})")
        if any(e < 0 for e in m):
            raise ValueError(f"negative exponent in {m}")
    if mems[0] != (0,) * n:
        raise ValueError("the constant monomial 0 is missing")
    position = {m: i for i, m in enumerate(mems)}
    parents: list = [None]
    for i, m in enumerate(mems[1:], start=1):
        found = None
        for k in range(n):
            if m[k] > 0:
                below = tuple(m[j] - (j == k) for j in range(n))
                j = position.get(below)
                if j is not None:
                    found = (j, k)
                    break
        if found is None:
            raise ValueError(f"member {m} is not connected to 0 within the set")
        parents.append(found)
    return MonomialSet(n, tuple(mems), tuple(parents))


def build_mv(V: MonomialSet) -> list[list[AffineForm]]:
    """The (m-1) x m block for a connected set V.

    Row i (for member i = 1..m-1, zero-based) carries -x_k at the parent
    column and 1 at column i.  Its maximal minors D_j (delete column j)
    satisfy D_j = (-1)^j * x^members[j] (zero-based j).
    """
    n, m = V.n, len(V)
    rows = []
    for i in range(1, m):
        j, k = V.parents[i]
        row = [AffineForm.zero(n) for _ in range(m)]
        row[j] = AffineForm.var(n, k, -1)
        row[i] = AffineForm.const(n, 1)
        rows.append(row)
    return rows


# -- covering checks ---------------------------------------------------------


def _shifts(n: int) -> list[Exponent]:
    out = [(0,) * n]
    for k in range(n):
        out.append(tuple(1 if j == k else 0 for j in range(n)))
    return out


def _sub(a: Exponent, b: Exponent):
    out = tuple(x - y for x, y in zip(a, b))
    return out if all(e >= 0 for e in out) else None


def cover_failure(d: int, V: MonomialSet, W: MonomialSet | None = None):
    """First monomial of degree <= d (graded-lex) missing from F1*V*W, or None.

    With ``W=None`` the check is F1*V >= F_d.  A monomial x^alpha is
    covered when alpha = delta + beta + gamma with delta in {0, e_1..e_n},
    beta in V and gamma in W.
    """
    n = V.n
    wset = W.member_set() if W is not None else frozenset({(0,) * n})
    vmembers = V.members
    for alpha in enumerate_monomials(n, d):
        if _find_decomposition(alpha, vmembers, wset, n) is None:
            return alpha
    return None


def _find_decomposition(alpha: Exponent, vmembers, wset, n: int):
    """Lexicographically smallest (delta-index, j, i) decomposition or None."""
    for delta_idx, delta in enumerate(_shifts(n)):
        rem = _sub(alpha, delta)
        if rem is None:
            continue
        for j, beta in enumerate(vmembers):
            gamma = _sub(rem, beta)
            if gamma is not None and gamma in wset:
                return delta_idx, j, gamma
    return None


def find_decomposition(alpha: Exponent, V: MonomialSet, W: MonomialSet | None = None):
    """Decompose x^alpha = x^delta * x^V[j] * x^W[i]; returns (delta, j, i).

    Ties are broken by the smallest (delta-index, j, i), with delta = 0
    preferred (index 0), so assignments are deterministic.
    """
    n = V.n
    wset = {(0,) * n: 0} if W is None else {m: i for i, m in enumerate(W.members)}
    hit = _find_decomposition(alpha, V.members, set(wset), n)
    if hit is None:
        return None
    delta_idx, j, gamma = hit
    return _shifts(n)[delta_idx], j, wset[gamma]


# -- generators --------------------------------------------------------------


def tree_set(d: int) -> MonomialSet:
    """Bivariate set of size floor(d^2/4) + d with F1*V >= F_d.

    A spine 1, y, ..., y^(d-1) plus horizontal runs on the even rows:
    row b holds x^a y^b for a = 1..d-b-1.  Every monomial of degree <= d
    is then reachable from the set by at most one multiplication by
    1, x or y.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    members = [(0, b) for b in range(d)]
    for b in range(0, d - 1, 2):
        members.extend((a, b) for a in range(1, d - b))
    return check_connected(2, members)


def _cartan(k: int) -> list[list[Fraction]]:
    c = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        c[i][i] = Fraction(2)
        if i > 0:
            c[i][i - 1] = Fraction(-1)
            c[i - 1][i] = Fraction(-1)
    return c


def cartan_matrix(n: int) -> list[list[Fraction]]:
    """The (n-1) x (n-1) Cartan matrix whose rows generate the sublattice."""
    return _cartan(n - 1)


def lattice_set(n: int, d: int) -> MonomialSet:
    """Axis hyperplane points of the simplex plus an index-n sublattice slab.

    The sublattice L of Z^(n-1) is generated by the Cartan-matrix rows;
    membership is decided by an exact rational solve (C^-1 v integral).
    Every lattice point alpha of the degree-d simplex has some beta in
    the set with alpha - beta in {0, e_2, ..., e_n}.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if d == 0:
        return check_connected(n, [(0,) * n])
    cart_inv = _linalg.invert(cartan_matrix(n))

    def in_lattice(tail) -> bool:
        sol = _linalg.matvec(cart_inv, [Fraction(t) for t in tail])
        return all(s.denominator == 1 for s in sol)

    members = []
    for alpha in enumerate_monomials(n, d):
        if any(e == 0 for e in alpha) or in_lattice(alpha[1:]):
            members.append(alpha)
    return check_connected(n, members)


def _bits_set(value: int, parity: int) -> bool:
    pos = 0
    while value:
        if value & 1 and pos % 2 != parity:
            return False
        value >>= 1
        pos += 1
    return True


def binary_axis_set(parity: int, bound: int) -> list[int]:
    """Non-negative integers <= bound whose binary ones sit only at even (0)
    or odd (1) bit positions."""
    return [v for v in range(bound + 1) if _bits_set(v, parity)]


def _two_adic_valuation(value: int) -> int:
    v = 0
    while value % 2 == 0:
        value //= 2
        v += 1
    return v


def binary_sets(n: int, d: int) -> tuple[MonomialSet, MonomialSet]:
    """Box-clipped digit-split sets A_0, A_1 with A_0 + A_1 >= [0,d]^n.

    Each coordinate of an A_i member uses binary digits of one parity
    only, so the coordinate-wise sum of the two sets covers the whole
    box.  Connectivity is repaired by inserting, for each orphan alpha,
    the run alpha - e_j, ..., alpha - (2^l - 1) e_j, where l is the
    minimal 2-adic valuation among the nonzero coordinates and j the
    first coordinate attaining it.
    """
    if n < 3:
        raise ValueError("need n >= 3 (use split_sets for n = 2)")
    if d == 0:
        trivial = check_connected(n, [(0,) * n])
        return trivial, trivial
    out = []
    for parity in (0, 1):
        axis = binary_axis_set(parity, d)
        members = set()

        def grow(prefix: tuple[int, ...]) -> None:
            if len(prefix) == n:
                members.add(prefix)
                return
            for v in axis:
                grow(prefix + (v,))

        grow(())
        for alpha in sorted(members, key=gradedlex_key):
            if alpha == (0,) * n:
                continue
            vals = [(_two_adic_valuation(a), j) for j, a in enumerate(alpha) if a > 0]
            level, j = min(vals)
            for t in range(1, 2**level):
                run = list(alpha)
                run[j] -= t
                members.add(tuple(run))
        out.append(check_connected(n, members))
    return out[0], out[1]


def split_sets(n: int, d: int) -> tuple[MonomialSet, MonomialSet]:
    """All monomials of degree <= d in the first n/2 resp. last n/2 variables."""
    if n % 2 != 0:
        raise ValueError("variable count must be even")
    half = n // 2
    v_members = [exp + (0,) * half for exp in enumerate_monomials(half, d)]
    w_members = [(0,) * half + exp for exp in enumerate_monomials(half, d)]
    return check_connected(n, v_members), check_connected(n, w_members)


def _nearly_equal_groups(n: int) -> list[list[int]]:
    m, r = divmod(n, 3)
    sizes = [m + (i < r) for i in range(3)]
    groups, start = [], 0
    for s in sizes:
        groups.append(list(range(start, start + s)))
        start += s
    return groups


def turan_pair_count(n: int) -> int:
    """Minimum number of pairs so every 4-subset of {1..n} contains one."""
    m = n // 3
    return m * n - 3 * m * (m + 1) // 2


def turan_sets(n: int) -> tuple[MonomialSet, MonomialSet]:
    """The degree-4 family:  V = {1, x_i, x_i^2},  W = {1, x_i} + group pairs.

    {1..n} is split into three nearly equal groups and W gets all
    products x_a x_b with a, b in the same group; any four indices then
    contain two from a common group, which is exactly the covering
    needed for F1*V*W >= F_4.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    v_members = [(0,) * n]
    w_members = [(0,) * n]
    for i in range(n):
        e1 = tuple(1 if j == i else 0 for j in range(n))
        e2 = tuple(2 if j == i else 0 for j in range(n))
        v_members += [e1, e2]
        w_members.append(e1)
    for group in _nearly_equal_groups(n):
        for a_pos, a in enumerate(group):
            for b in group[a_pos + 1 :]:
                w_members.append(tuple((j == a) + (j == b) for j in range(n)))
    return check_connected(n, v_members), check_connected(n, w_members)


# -- the catalog of hand-tuned (n, d) sets -----------------------------------

# Extra monomials V1 / W1 beyond the pure-power base sets, encoded as
# ((var, power), ...) pairs.  Variables 0..7 print as x,y,z,w,u,v,q,s.
_CATALOG_EXTRAS = {
    (3, 4): ((), ()),
    (3, 5): ((), ("xy",)),
    (3, 6): ((), ("xy", "x2y")),
    (3, 7): ((), ("x2y", "y2z", "z2x")),
    (3, 8): ((), ("x2y", "y2z", "z2x", "x2y2", "x2z2")),
    (3, 9): (("x3y", "y3z", "z3x"), ("x2y", "x2z", "y2z", "x2y2", "x2z2", "y2z2")),
    (4, 4): ((), ("xy",)),
    (4, 5): ((), ("xy", "zw")),
    (4, 6): (("x2y", "y2z", "z2w"), ("xy", "zw")),
    (4, 7): (("x2y", "y2z", "z2w", "w2x", "xy"), ("x2z", "xz2", "y2w", "yw2")),
    (4, 8): (
        ("x2y", "x2y2", "z2x", "x3y", "y3z", "z3w", "w3x"),
        ("xy", "xyz", "xyw", "y2z", "z2w", "w2x", "w2y", "x2z"),
    ),
    (5, 4): ((), ("xy", "zw")),
    (5, 5): (("xy", "yz", "zw"), ("wu", "xu")),
    (6, 4): ((), ("xy", "zw", "uv")),
    (6, 5): (("xy", "zw", "uv", "wy"), ("yz", "wu", "xv", "xz")),
    (7, 4): ((), ("xy", "zw", "uv", "xq", "yq")),
    (7, 5): (("xy", "zw", "uv", "wy", "qu"), ("yz", "wu", "vq", "xz", "wx")),
    (8, 4): ((), ("xy", "yz", "xz", "wu", "wv", "uv", "qs")),
}

_VAR_LETTERS = "xyzwuvqs"


def _parse_mono(n: int, text: str) -> Exponent:
    exp = [0] * n
    i = 0
    while i < len(text):
        var = _VAR_LETTERS.index(text[i])
        i += 1
        power = 0
        while i < len(text) and text[i].isdigit():
            power = power * 10 + int(text[i])
            i += 1
        exp[var] += power if power else 1
    return tuple(exp)


def _pure_powers(n: int, top: int) -> list[Exponent]:
    members = [(0,) * n]
    for i in range(n):
        for e in range(1, top + 1):
            members.append(tuple(e if j == i else 0 for j in range(n)))
    return members


def catalog_rows() -> list[tuple[int, int]]:
    """All (n, d) pairs for which table_sets is defined."""
    rows = [(2, dd) for dd in range(2, 10)]
    rows += [(nn, 2) for nn in range(3, 9)]
    rows += [(nn, 3) for nn in range(3, 9)]
    rows += sorted(_CATALOG_EXTRAS)
    return rows


def table_sets(n: int, d: int) -> tuple[MonomialSet, MonomialSet]:
    """The catalogued (V, W) pair for a tabulated (n, d), smallest known.

    The base sets are pure powers up to e = ceil((d-1)/2) in V and
    f = floor((d-1)/2) in W; the catalog adds the few mixed monomials
    needed to complete the cover F1*V*W >= F_d.
    """
    if n == 2:
        if d == 2:
            return check_connected(2, [(0, 0), (1, 0), (0, 1)]), check_connected(2, [(0, 0)])
        if 3 <= d <= 9:
            v = [(a, 0) for a in range(d)]
            w = [(0, b) for b in range(d)]
            return check_connected(2, v), check_connected(2, w)
    if 3 <= n <= 8 and d == 2:
        return check_connected(n, _pure_powers(n, 1)), check_connected(n, [(0,) * n])
    if 3 <= n <= 8 and d == 3:
        base = _pure_powers(n, 1)
        return check_connected(n, base), check_connected(n, base)
    if (n, d) in _CATALOG_EXTRAS:
        e = (d - 1 + 1) // 2
        f = (d - 1) // 2
        v1, w1 = _CATALOG_EXTRAS[(n, d)]
        v = _pure_powers(n, e) + [_parse_mono(n, t) for t in v1]
        w = _pure_powers(n, f) + [_parse_mono(n, t) for t in w1]
        return check_connected(n, v), check_connected(n, w)
    raise KeyError(f"no catalogued sets for (n, d) = ({n}, {d})")


# -- JSON --------------------------------------------------------------------


def monoset_to_json(ms: MonomialSet) -> dict:
    parents = []
    for i, p in enumerate(ms.parents):
        if p is not None:
            parents.append({"child": i, "parent": p[0], "var": p[1]})
    return {"n": ms.n, "members": [list(m) for m in ms.members], "parents": parents}


def monoset_from_json(obj: dict) -> MonomialSet:
    return check_connected(int(obj["n"]), [tuple(m) for m in obj["members"]])
