"""Bi-affine representation matrices and their verification.

A :class:`UniformRep` stores an N x N matrix decomposed as
``M = M0 + sum_alpha c_alpha * M_alpha`` where every entry of ``M0`` and
of each ``M_alpha`` is an affine-linear form in x.  The determinant of a
valid representation equals the generic polynomial
``sum_{|alpha|<=d} c_alpha x^alpha`` as an exact identity in both the x
variables and the coefficient symbols c.

Verification is exact throughout: the symbolic path computes the full
determinant over the rationals in the combined (x, c) ring; the
randomized path samples integer points and evaluates both sides in
exact rational arithmetic, so the verdict never depends on a float
tolerance (only the reported failure-probability bound does).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _linalg
from .poly import (
    COMPLEX,
    RATIONAL,
    AffineForm,
    Exponent,
    MultiPoly,
    affine_from_json,
    affine_to_json,
    enumerate_monomials,
    gradedlex_key,
)

#: largest size for which a full symbolic determinant is attempted by default
SYMBOLIC_CAP = 13


class SymbolicCapExceeded(Exception):
    """Raised when a symbolic check is requested above the size cap."""


@dataclass(frozen=True, eq=False)
class UniformRep:
    """M = M0 + sum_alpha c_alpha * M_alpha with bi-affine entries.

    Only the nonzero M_alpha matrices are stored.  ``meta`` carries
    provenance (construction method, set sizes) and is not part of the
    mathematical identity.
    """

    n: int
    d: int
    m0: tuple
    malpha: dict
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.m0)

    def coefficient_exponents(self) -> list[Exponent]:
        return enumerate_monomials(self.n, self.d)

    def entry(self, i: int, j: int, coeffs: dict) -> AffineForm:
        """The (i, j) entry with the c symbols specialised to ``coeffs``."""
        form = self.m0[i][j]
        for alpha, mat in self.malpha.items():
            c = coeffs.get(alpha, 0)
            if c and not mat[i][j].is_zero():
                form = form + mat[i][j].scale(c)
        return form


def make_rep(n: int, d: int, m0, malpha, meta=None) -> UniformRep:
    """Normalise nested lists into an immutable UniformRep, dropping zero blocks."""
    m0t = tuple(tuple(row) for row in m0)
    size = len(m0t)
    if any(len(row) != size for row in m0t):
        raise ValueError("M0 must be square")
    clean = {}
    for alpha, mat in malpha.items():
        matt = tuple(tuple(row) for row in mat)
        if len(matt) != size or any(len(row) != size for row in matt):
            raise ValueError("M_alpha blocks must match the size of M0")
        if any(not f.is_zero() for row in matt for f in row):
            clean[tuple(alpha)] = matt
    return UniformRep(n, d, m0t, clean, dict(meta or {}))


@dataclass(frozen=True)
class VerificationReport:
    mode: str
    ok: bool
    trials: int = 0
    failure_bound: float = 0.0
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


# -- symbolic determinants ---------------------------------------------------


def _exact_div(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Exact quotient num / den; the caller guarantees divisibility."""
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if len(den.terms) == 1:
        ((dexp, dc),) = den.terms.items()
        terms = {}
        for e, c in num.terms.items():
            q = tuple(a - b for a, b in zip(e, dexp))
            if any(x < 0 for x in q):
                raise ArithmeticError("inexact polynomial division")
            terms[q] = c / dc
        return MultiPoly(num.n, terms, num.kind)
    lead = max(den.terms, key=gradedlex_key)
    lead_c = den.terms[lead]
    rem = dict(num.terms)
    quot: dict[Exponent, object] = {}
    while rem:
        e = max(rem, key=gradedlex_key)
        q = tuple(a - b for a, b in zip(e, lead))
        if any(x < 0 for x in q):
            raise ArithmeticError("inexact polynomial division")
        qc = rem[e] / lead_c
        quot[q] = qc
        for de, dc in den.terms.items():
            te = tuple(a + b for a, b in zip(q, de))
            s = rem.get(te, 0) - qc * dc
            if s == 0:
                rem.pop(te, None)
            else:
                rem[te] = s
    return MultiPoly(num.n, quot, num.kind)


def _det_bareiss(mat: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free elimination with sparsest-entry full pivoting."""
    size = len(mat)
    ring_n = mat[0][0].n
    zero = MultiPoly.zero(ring_n)
    one = MultiPoly.constant(ring_n, 1)
    m = [row[:] for row in mat]
    sign = 1
    prev = one
    for k in range(size - 1):
        best = None
        for i in range(k, size):
            for j in range(k, size):
                t = len(m[i][j].terms)
                if t and (best is None or t < best[0]):
                    best = (t, i, j)
        if best is None:
            return zero
        _, pi, pj = best
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
            sign = -sign
        if pj != k:
            for row in m:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        pivot = m[k][k]
        trivial_prev = len(prev.terms) == 1 and prev.terms.get((0,) * ring_n) == 1
        for i in range(k + 1, size):
            if m[i][k].is_zero():
                row_i_k = None
            else:
                row_i_k = m[i][k]
            for j in range(k + 1, size):
                num = pivot * m[i][j]
                if row_i_k is not None and not m[k][j].is_zero():
                    num = num - row_i_k * m[k][j]
                m[i][j] = num if trivial_prev else _exact_div(num, prev)
            m[i][k] = zero
        prev = pivot
    result = m[size - 1][size - 1]
    return result if sign == 1 else -result


def _det_cofactor(mat: list[list[MultiPoly]]) -> MultiPoly:
    """Cofactor expansion along the sparsest line, memoised on (rows, cols)."""
    size = len(mat)
    ring_n = mat[0][0].n
    zero = MultiPoly.zero(ring_n)
    one = MultiPoly.constant(ring_n, 1)
    memo: dict = {}

    def rec(rows: tuple, cols: tuple) -> MultiPoly:
        if not rows:
            return one
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        # sparsest column vs sparsest row
        col_counts = [(sum(1 for r in rows if not mat[r][c].is_zero()), c) for c in cols]
        row_counts = [(sum(1 for c in cols if not mat[r][c].is_zero()), r) for r in rows]
        best_col = min(col_counts)
        best_row = min(row_counts)
        total = zero
        if best_col <= best_row:
            c = best_col[1]
            jc = cols.index(c)
            sub_cols = cols[:jc] + cols[jc + 1 :]
            for ir, r in enumerate(rows):
                e = mat[r][c]
                if e.is_zero():
                    continue
                minor = rec(rows[:ir] + rows[ir + 1 :], sub_cols)
                term = e * minor
                total = total + (term if (ir + jc) % 2 == 0 else -term)
        else:
            r = best_row[1]
            ir = rows.index(r)
            sub_rows = rows[:ir] + rows[ir + 1 :]
            for jc, c in enumerate(cols):
                e = mat[r][c]
                if e.is_zero():
                    continue
                minor = rec(sub_rows, cols[:jc] + cols[jc + 1 :])
                term = e * minor
                total = total + (term if (ir + jc) % 2 == 0 else -term)
        memo[key] = total
        return total

    idx = tuple(range(size))
    return rec(idx, idx)


def symbolic_det(mat, cap: int = SYMBOLIC_CAP, method: str = "auto") -> MultiPoly:
    """Exact determinant of a square matrix of rational MultiPoly entries.

    Fraction-free elimination is the default; very sparse matrices go
    through memoised cofactor expansion instead (also the fallback when
    pivoting degenerates, which elimination handles by full pivoting and
    an early zero return).  The result is independent of pivot choices.
    """
    size = len(mat)
    if size == 0:
        raise ValueError("empty matrix")
    if any(len(row) != size for row in mat):
        raise ValueError("matrix must be square")
    if cap is not None and size > cap:
        raise SymbolicCapExceeded(f"size {size} exceeds the symbolic cap {cap}; use randomized verification")
    if any(p.kind != RATIONAL for row in mat for p in row):
        raise ValueError("symbolic determinants require the rational scalar kind")
    if size == 1:
        return mat[0][0]
    if method == "auto":
        zeros = sum(1 for row in mat for p in row if p.is_zero())
        method = "cofactor" if zeros >= 0.5 * size * size else "bareiss"
    if method == "cofactor":
        return _det_cofactor([list(row) for row in mat])
    return _det_bareiss([list(row) for row in mat])


# -- the combined (x, c) ring ------------------------------------------------


def _bigring_entry(rep: UniformRep, i: int, j: int, c_index: dict) -> MultiPoly:
    n = rep.n
    nvars = n + len(c_index)
    terms: dict[Exponent, object] = {}

    def put(exp, coeff):
        if coeff == 0:
            return
        s = terms.get(exp, 0) + coeff
        if s == 0:
            terms.pop(exp, None)
        else:
            terms[exp] = s

    def add_form(form: AffineForm, c_pos: int | None):
        base = [0] * nvars
        if c_pos is not None:
            base[n + c_pos] = 1
        put(tuple(base), Fraction(form.constant))
        for k, lin in enumerate(form.linear):
            if lin:
                e = list(base)
                e[k] += 1
                put(tuple(e), Fraction(lin))

    add_form(rep.m0[i][j], None)
    for alpha, mat in rep.malpha.items():
        if not mat[i][j].is_zero():
            add_form(mat[i][j], c_index[alpha])
    return MultiPoly(nvars, terms, RATIONAL)


def generic_poly_bigring(n: int, d: int) -> MultiPoly:
    """sum_alpha c_alpha x^alpha in the combined ring (x vars then c vars)."""
    exps = enumerate_monomials(n, d)
    nvars = n + len(exps)
    terms = {}
    for pos, alpha in enumerate(exps):
        e = list(alpha) + [0] * len(exps)
        e[n + pos] = 1
        terms[tuple(e)] = Fraction(1)
    return MultiPoly(nvars, terms, RATIONAL)


def rep_det_bigring(rep: UniformRep, cap: int = SYMBOLIC_CAP) -> MultiPoly:
    """det(M) as an exact polynomial in the x variables and the c symbols."""
    c_index = {alpha: pos for pos, alpha in enumerate(rep.coefficient_exponents())}
    mat = [[_bigring_entry(rep, i, j, c_index) for j in range(rep.size)] for i in range(rep.size)]
    return symbolic_det(mat, cap=cap)


def det_m0(rep: UniformRep, cap: int | None = None) -> MultiPoly:
    """Symbolic determinant of the c-free part M0 (a polynomial in x)."""
    mat = [[f.to_poly() for f in row] for row in rep.m0]
    return symbolic_det(mat, cap=cap if cap is not None else rep.size)


# -- verification ------------------------------------------------------------


def sparse_cells(rep: UniformRep) -> list:
    """[(alpha, [(i, j, form), ...])] listing only the nonzero M_alpha cells."""
    out = []
    for alpha, mat in rep.malpha.items():
        cells = [
            (i, j, f)
            for i, row in enumerate(mat)
            for j, f in enumerate(row)
            if not f.is_zero()
        ]
        out.append((alpha, cells))
    return out


def _form_value_exact(form: AffineForm, x_point):
    total = Fraction(form.constant)
    for k, lin in enumerate(form.linear):
        if lin:
            total += Fraction(lin) * x_point[k]
    return total


def _eval_rep_exact(rep: UniformRep, x_point, c_values: dict, cells=None) -> Fraction:
    mat = [[_form_value_exact(f, x_point) for f in row] for row in rep.m0]
    for alpha, entries in cells if cells is not None else sparse_cells(rep):
        c = c_values.get(alpha, 0)
        if not c:
            continue
        for i, j, g in entries:
            mat[i][j] += c * _form_value_exact(g, x_point)
    return _linalg.exact_det(mat)


def verify(
    rep: UniformRep,
    mode: str = "symbolic",
    trials: int = 20,
    seed: int = 0,
    box: int = 10,
    cap: int = SYMBOLIC_CAP,
) -> VerificationReport:
    """Check det(M) = sum_alpha c_alpha x^alpha.

    ``symbolic`` builds the full determinant in the combined (x, c) ring
    and compares coefficient-wise (sizes above ``cap`` raise
    :class:`SymbolicCapExceeded`).  ``random`` samples integer points
    with entries in [-box, box] for both x and c, evaluates both sides in
    exact rational arithmetic, and reports the Schwartz-Zippel bound
    (total degree / box size)^trials on the probability that a wrong
    representation passes.
    """
    exps = rep.coefficient_exponents()
    if mode == "symbolic":
        det = rep_det_bigring(rep, cap=cap)
        expected = generic_poly_bigring(rep.n, rep.d)
        if det.equals(expected):
            return VerificationReport("symbolic", True)
        witness = _find_witness(rep, seed=seed, box=box)
        return VerificationReport("symbolic", False, witness=witness)
    if mode not in ("random", "randomized"):
        raise ValueError(f"unknown verification mode {mode!r}")

    rng = random.Random(seed)
    degree_bound = 2 * rep.size
    points = 2 * box + 1
    bound = min(1.0, (degree_bound / points) ** trials) if points > 0 else 1.0
    cells = sparse_cells(rep)
    for _ in range(trials):
        x_point = [rng.randint(-box, box) for _ in range(rep.n)]
        c_values = {alpha: rng.randint(-box, box) for alpha in exps}
        det = _eval_rep_exact(rep, x_point, c_values, cells)
        expected = sum(
            Fraction(c) * _monomial_value(x_point, alpha) for alpha, c in c_values.items()
        )
        if det != expected:
            return VerificationReport("random", False, trials=trials, failure_bound=bound, witness=(tuple(x_point), c_values))
    return VerificationReport("random", True, trials=trials, failure_bound=bound)


def _monomial_value(point, exp) -> Fraction:
    v = Fraction(1)
    for x, e in zip(point, exp):
        if e:
            v *= Fraction(x) ** e
    return v


def _find_witness(rep: UniformRep, seed: int = 0, box: int = 10, attempts: int = 64):
    rng = random.Random(seed)
    exps = rep.coefficient_exponents()
    for _ in range(attempts):
        x_point = [rng.randint(-box, box) for _ in range(rep.n)]
        c_values = {alpha: rng.randint(-box, box) for alpha in exps}
        det = _eval_rep_exact(rep, x_point, c_values)
        expected = sum(Fraction(c) * _monomial_value(x_point, alpha) for alpha, c in c_values.items())
        if det != expected:
            return (tuple(x_point), c_values)
    return None


def rank_profile_m0(rep: UniformRep, points: int = 20, seed: int = 0, tol: float | None = None):
    """(min, max) numeric rank of M0 over random real sample points.

    Rank uses the SVD with threshold eps * N * sigma_max unless ``tol``
    overrides it.  For a valid representation both values equal N - 1.
    """
    rng = np.random.default_rng(seed)
    size = rep.size
    lo, hi = size, 0
    for _ in range(points):
        x_point = rng.uniform(-1.0, 1.0, rep.n)
        m = np.empty((size, size))
        for i in range(size):
            for j in range(size):
                m[i, j] = float(rep.m0[i][j].evaluate(x_point))
        s = np.linalg.svd(m, compute_uv=False)
        smax = s[0] if len(s) else 0.0
        threshold = tol if tol is not None else np.finfo(float).eps * size * max(smax, 1e-300)
        r = int(np.sum(s > threshold))
        lo, hi = min(lo, r), max(hi, r)
    return lo, hi


def minor_span_check(rep: UniformRep, cap: int = SYMBOLIC_CAP) -> bool:
    """Exact check that the span V of the (N-1)x(N-1) minors of M0 satisfies
    F1 * V >= F_d."""
    size = rep.size
    if size > cap:
        raise SymbolicCapExceeded(f"size {size} exceeds the symbolic cap {cap}")
    n = rep.n
    mat = [[f.to_poly() for f in row] for row in rep.m0]
    zero = MultiPoly.zero(n)
    one = MultiPoly.constant(n, 1)
    memo: dict = {}

    def minor_det(rows: tuple, cols: tuple) -> MultiPoly:
        if not rows:
            return one
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        counts = [(sum(1 for r in rows if not mat[r][c].is_zero()), c) for c in cols]
        _, c = min(counts)
        jc = cols.index(c)
        sub_cols = cols[:jc] + cols[jc + 1 :]
        total = zero
        for ir, r in enumerate(rows):
            e = mat[r][c]
            if e.is_zero():
                continue
            term = e * minor_det(rows[:ir] + rows[ir + 1 :], sub_cols)
            total = total + (term if (ir + jc) % 2 == 0 else -term)
        memo[key] = total
        return total

    idx = tuple(range(size))
    minors = []
    for i in range(size):
        rows = idx[:i] + idx[i + 1 :]
        for j in range(size):
            cols = idx[:j] + idx[j + 1 :]
            p = minor_det(rows, cols)
            if not p.is_zero():
                minors.append(p)
    if not minors:
        return False

    # products {1, x_k} * minor, as exact coefficient rows over the monomial basis
    basis = enumerate_monomials(n, size)
    pos = {e: i for i, e in enumerate(basis)}
    rows = []
    gens = [None] + list(range(n))
    for p in minors:
        for g in gens:
            q = p if g is None else p * MultiPoly.variable(n, g)
            vec = [Fraction(0)] * len(basis)
            usable = True
            for e, c in q.terms.items():
                if e not in pos:
                    usable = False
                    break
                vec[pos[e]] = Fraction(c)
            if usable:
                rows.append(vec)
    reduced, pivots = _linalg.rref(rows)
    pivot_set = dict(zip(pivots, range(len(pivots))))
    for alpha in enumerate_monomials(n, rep.d):
        vec = [Fraction(0)] * len(basis)
        vec[pos[alpha]] = Fraction(1)
        # reduce against the row space
        for c, r in pivot_set.items():
            if vec[c] != 0:
                f = vec[c]
                vec = [a - f * b for a, b in zip(vec, reduced[r])]
        if any(v != 0 for v in vec):
            return False
    return True


# -- specialisation ----------------------------------------------------------


def specialize(rep: UniformRep, coeffs: MultiPoly) -> list[list[AffineForm]]:
    """Instantiate the c symbols with the coefficients of a concrete polynomial.

    Returns the N x N matrix of affine forms A0 + sum_i x_i A_i whose
    determinant equals ``coeffs``.
    """
    if coeffs.n != rep.n:
        raise ValueError(f"variable count mismatch: rep has n={rep.n}, polynomial has n={coeffs.n}")
    if coeffs.degree() > rep.d:
        raise ValueError(f"degree overflow: polynomial degree {coeffs.degree()} exceeds d={rep.d}")
    if coeffs.kind == RATIONAL:
        cast = Fraction
        zero_form = AffineForm.zero(rep.n, RATIONAL)
    else:
        cast = complex
        zero_form = AffineForm.zero(rep.n, COMPLEX)
    out = []
    for i in range(rep.size):
        row = []
        for j in range(rep.size):
            base = rep.m0[i][j]
            form = AffineForm(cast(base.constant), tuple(cast(v) for v in base.linear)) + zero_form
            for alpha, mat in rep.malpha.items():
                c = coeffs.terms.get(alpha)
                if c is None or mat[i][j].is_zero():
                    continue
                g = mat[i][j]
                form = form + AffineForm(cast(g.constant), tuple(cast(v) for v in g.linear)).scale(c)
            row.append(form)
        out.append(row)
    return out


# -- JSON --------------------------------------------------------------------


def rep_to_json(rep: UniformRep) -> dict:
    malpha = []
    for alpha in sorted(rep.malpha, key=gradedlex_key):
        mat = rep.malpha[alpha]
        malpha.append({"exp": list(alpha), "mat": [[affine_to_json(f) for f in row] for row in mat]})
    return {
        "n": rep.n,
        "d": rep.d,
        "N": rep.size,
        "M0": [[affine_to_json(f) for f in row] for row in rep.m0],
        "Malpha": malpha,
    }


def rep_from_json(obj: dict) -> UniformRep:
    m0 = [[affine_from_json(f) for f in row] for row in obj["M0"]]
    if len(m0) != int(obj["N"]):
        raise ValueError("N does not match the M0 block")
    malpha = {}
    for entry in obj.get("Malpha", []):
        malpha[tuple(entry["exp"])] = [[affine_from_json(f) for f in row] for row in entry["mat"]]
    return make_rep(int(obj["n"]), int(obj["d"]), m0, malpha)
