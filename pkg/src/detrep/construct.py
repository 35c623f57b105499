"""Assembling representations from monomial sets.

Two general recipes plus the two explicit bivariate families:

* ``cons1(V, d)`` -- single extra row on top of the block M_V; size |V|.
* ``cons2(V, W, d)`` -- block matrix [[M_V, 0], [L, M_W^T]]; size |V|+|W|-1.
* ``repjan(d)`` -- explicit bivariate family of size 2d+1.
* ``minunif(d)`` -- bivariate family of size 2d-1 (powers of x against
  powers of y), the default for the root-finding pipeline.

Every constructor checks the covering property it needs and the emitted
representation satisfies det(M) = sum c_alpha x^alpha exactly.
"""

from __future__ import annotations

from math import comb

from .biaffine import UniformRep, make_rep
from .monoset import (
    MonomialSet,
    build_mv,
    check_connected,
    cover_failure,
    find_decomposition,
    lattice_set,
    split_sets,
    table_sets,
    tree_set,
    turan_sets,
    binary_sets,
    catalog_rows,
)
from .poly import AffineForm, Exponent, enumerate_monomials


class CoveringError(ValueError):
    """The supplied monomial sets cannot produce some monomial of F_d."""


class InapplicableMethod(ValueError):
    """The requested construction method does not apply to (n, d)."""


def _shift_form(n: int, delta: Exponent) -> AffineForm:
    if all(e == 0 for e in delta):
        return AffineForm.const(n, 1)
    k = next(i for i, e in enumerate(delta) if e)
    return AffineForm.var(n, k)


def _trivial_rep(n: int, meta: dict) -> UniformRep:
    zero = (0,) * n
    return make_rep(n, 0, [[AffineForm.zero(n)]], {zero: [[AffineForm.const(n, 1)]]}, meta)


def cons1(V: MonomialSet, d: int) -> UniformRep:
    """Single-row construction: M = [s; M_V] of size m = |V|.

    Requires F1 * V >= F_d.  Each monomial x^alpha is assigned one cell
    of the top row: placing c_alpha x^delta at column j contributes
    +x^alpha to the determinant because the signed minor below equals
    x^(V[j]).
    """
    n, m = V.n, len(V)
    missing = cover_failure(d, V)
    if missing is not None:
        raise CoveringError(f"F1*V does not cover x^{missing}")
    m0 = [[AffineForm.zero(n) for _ in range(m)]] + build_mv(V)
    malpha: dict[Exponent, list] = {}
    for alpha in enumerate_monomials(n, d):
        delta, j, _ = find_decomposition(alpha, V)
        mat = [[AffineForm.zero(n) for _ in range(m)] for _ in range(m)]
        mat[0][j] = _shift_form(n, delta)
        malpha[alpha] = mat
    meta = {"family": "cons1", "v_size": m}
    return make_rep(n, d, m0, malpha, meta)


def cons2(V: MonomialSet, W: MonomialSet, d: int, assignment=None, meta=None) -> UniformRep:
    """Two-block construction M = [[M_V, 0], [L, M_W^T]] of size |V|+|W|-1.

    Requires F1 * V * W >= F_d.  The coefficient of an L entry in det(M)
    is (-1)^(|V|-1) x^(V[j]) x^(W[i]), so every assigned term carries
    that global sign.  ``assignment`` may override the default
    decomposition choice; it maps alpha -> (delta, j, i).
    """
    if V.n != W.n:
        raise ValueError("V and W must share the variable count")
    n = V.n
    m1, m2 = len(V), len(W)
    size = m1 + m2 - 1
    if assignment is None:
        missing = cover_failure(d, V, W)
        if missing is not None:
            raise CoveringError(f"F1*V*W does not cover x^{missing}")

        def assignment(alpha):
            return find_decomposition(alpha, V, W)

    sign = 1 if (m1 - 1) % 2 == 0 else -1
    zero = AffineForm.zero(n)
    m0 = [[zero] * size for _ in range(size)]
    mv = build_mv(V)
    for i, row in enumerate(mv):
        for j, f in enumerate(row):
            m0[i][j] = f
    mw = build_mv(W)  # (m2-1) x m2; transpose goes in the lower-right block
    for i in range(m2):
        for k in range(m2 - 1):
            m0[(m1 - 1) + i][m1 + k] = mw[k][i]
    malpha: dict[Exponent, list] = {}
    for alpha in enumerate_monomials(n, d):
        dec = assignment(alpha)
        if dec is None:
            raise CoveringError(f"F1*V*W does not cover x^{alpha}")
        delta, j, i = dec
        mat = [[zero] * size for _ in range(size)]
        mat[(m1 - 1) + i][j] = _shift_form(n, delta).scale(sign)
        malpha[alpha] = mat
    base_meta = {"family": "cons2", "v_size": m1, "w_size": m2}
    base_meta.update(meta or {})
    return make_rep(n, d, m0, malpha, base_meta)


def repjan(d: int) -> UniformRep:
    """Explicit bivariate representation of size 2d+1.

    Bidiagonal blocks in x and y flank a triangular coefficient block L
    with L[i][j] = c_(j,i) for i+j <= d (zero-based).  For odd d the
    first row is negated, which fixes the overall determinant sign while
    keeping all entries bi-affine.
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    meta = {"family": "repjan", "witness": True, "v_size": d + 1, "w_size": d + 1}
    if d == 0:
        return _trivial_rep(2, meta)
    n = 2
    size = 2 * d + 1
    zero = AffineForm.zero(n)
    m0 = [[zero] * size for _ in range(size)]
    for i in range(d):  # x block, d x (d+1)
        m0[i][i] = AffineForm.var(n, 0, -1)
        m0[i][i + 1] = AffineForm.const(n, 1)
    for i in range(d + 1):  # transposed y block, (d+1) x d
        if i < d:
            m0[d + i][d + 1 + i] = AffineForm.var(n, 1, -1)
        if i >= 1:
            m0[d + i][d + 1 + (i - 1)] = AffineForm.const(n, 1)
    malpha: dict[Exponent, list] = {}
    for a in range(d + 1):
        for b in range(d + 1 - a):
            mat = [[zero] * size for _ in range(size)]
            mat[d + b][a] = AffineForm.const(n, 1)
            malpha[(a, b)] = mat
    if d % 2 == 1:
        m0[0] = [-f for f in m0[0]]
    return make_rep(n, d, m0, malpha, meta)


def minunif(d: int) -> UniformRep:
    """Bivariate representation of size 2d-1 from V = x-powers, W = y-powers.

    The canonical cell assignment sends x^a y^b to column a, row b when
    a+b <= d-1 (no shift); otherwise the x exponent is reduced first
    (shift by x), falling back to a y shift for pure y-powers.
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    meta = {"family": "minunif", "witness": True, "v_size": max(d, 1), "w_size": max(d, 1)}
    if d == 0:
        return _trivial_rep(2, meta)
    V = check_connected(2, [(a, 0) for a in range(d)])
    W = check_connected(2, [(0, b) for b in range(d)])

    def assign(alpha):
        a, b = alpha
        if a <= d - 1 and b <= d - 1 and a + b <= d - 1:
            return ((0, 0), a, b)
        if a >= 1:
            return ((1, 0), a - 1, b)
        return ((0, 1), a, b - 1)

    return cons2(V, W, d, assignment=assign, meta=meta)


# -- dispatcher and the catalogue of best known sizes ------------------------

METHODS = (
    "cons1-tree",
    "cons1-lattice",
    "cons2-split",
    "cons2-table",
    "cons2-turan",
    "cons2-binary",
    "repjan",
    "minunif",
)


def construct(n: int, d: int, method: str) -> UniformRep:
    """Build a representation of the generic (n, d) polynomial by name.

    Raises :class:`InapplicableMethod` when the method does not apply to
    the given (n, d); the emitted rep carries provenance metadata.
    """
    if method not in METHODS:
        raise InapplicableMethod(f"unknown method {method!r}; choose from {METHODS}")
    if n < 1 or d < 0:
        raise InapplicableMethod(f"invalid (n, d) = ({n}, {d})")
    if d == 0:
        rep = _trivial_rep(n, {"family": "trivial"})
    elif method == "repjan":
        _need(n == 2, "repjan is bivariate only")
        rep = repjan(d)
    elif method == "minunif":
        _need(n == 2, "minunif is bivariate only")
        rep = minunif(d)
    elif method == "cons1-tree":
        _need(n == 2, "the tree set is bivariate only")
        rep = cons1(tree_set(d), d)
    elif method == "cons1-lattice":
        _need(n >= 2, "the lattice set needs n >= 2")
        rep = cons1(lattice_set(n, d), d)
    elif method == "cons2-split":
        _need(n % 2 == 0, "the split construction needs an even variable count")
        V, W = split_sets(n, d)
        rep = cons2(V, W, d)
    elif method == "cons2-table":
        try:
            V, W = table_sets(n, d)
        except KeyError as exc:
            raise InapplicableMethod(str(exc)) from None
        rep = cons2(V, W, d)
    elif method == "cons2-turan":
        _need(d == 4, "the covering-design construction is for degree 4")
        _need(n >= 4, "the covering-design construction needs n >= 4")
        V, W = turan_sets(n)
        rep = cons2(V, W, d)
    else:  # cons2-binary
        _need(n >= 3, "the digit-split construction needs n >= 3 (use cons2-split for n = 2)")
        A0, A1 = binary_sets(n, d)
        V = check_connected(n, [m for m in A0.members if sum(m) <= d])
        W = check_connected(n, [m for m in A1.members if sum(m) <= d])
        rep = cons2(V, W, d)
    meta = dict(rep.meta)
    meta["method"] = method
    return UniformRep(rep.n, rep.d, rep.m0, rep.malpha, meta)


def _need(condition: bool, message: str) -> None:
    if not condition:
        raise InapplicableMethod(message)


def size_inequality_ok(n: int, d: int, size: int) -> bool:
    """The covering inequality N*(n+1) - (N-1) >= dim F_d for single-row reps."""
    return size * (n + 1) - (size - 1) >= comb(n + d, n)


#: minimal known sizes per (n, d), reproduced by ``best_method``
KNOWN_SIZES = {
    (2, 2): 3, (2, 3): 5, (2, 4): 7, (2, 5): 9, (2, 6): 11, (2, 7): 13, (2, 8): 15, (2, 9): 17,
    (3, 2): 4, (3, 3): 7, (3, 4): 10, (3, 5): 14, (3, 6): 18, (3, 7): 22, (3, 8): 27, (3, 9): 34,
    (4, 2): 5, (4, 3): 9, (4, 4): 14, (4, 5): 19, (4, 6): 26, (4, 7): 34, (4, 8): 44,
    (5, 2): 6, (5, 3): 11, (5, 4): 18, (5, 5): 26,
    (6, 2): 7, (6, 3): 13, (6, 4): 22, (6, 5): 33,
    (7, 2): 8, (7, 3): 15, (7, 4): 27, (7, 5): 39,
    (8, 2): 9, (8, 3): 17, (8, 4): 32,
}


def best_method(n: int, d: int) -> str:
    """The documented method achieving the minimal known size for (n, d)."""
    if (n, d) not in KNOWN_SIZES:
        raise KeyError(f"no tabulated size for (n, d) = ({n}, {d})")
    if n == 2 and d >= 3:
        return "minunif"
    return "cons2-table"


def tabulated_cells() -> list[tuple[int, int]]:
    return sorted(KNOWN_SIZES)
