"""Bivariate system solving via a two-parameter eigenvalue problem.

Pipeline: specialise determinantal representations of p and q at their
coefficients, form the Kronecker operator-determinant matrices

    Delta0 = A1 (x) B2 - A2 (x) B1
    Delta1 = A2 (x) B0 - A0 (x) B2
    Delta2 = A0 (x) B1 - A1 (x) B0,

extract the common regular part of the singular pencils
(Delta1 - x Delta0, Delta2 - y Delta0) by a rank-revealing staircase
reduction, and read the roots off simultaneously triangularized
quotients.  A random plane rotation of the pair (p, q) leaves the roots
unchanged and is used as a retry heuristic when a rank decision is too
close to call.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .biaffine import UniformRep, specialize
from .construct import construct
from .poly import COMPLEX, MultiPoly
from .roots import RootSet, normalized_residual

#: solver refuses beyond this degree by default (Delta size (2d-1)^2)
DEGREE_CAP = 20


class RankDecisionAmbiguous(RuntimeError):
    """A singular-value gap fell below the safety factor."""


class NoRegularPart(RuntimeError):
    """The staircase reduction deleted everything."""


class CommutationFailure(RuntimeError):
    """The reduced quotients do not commute to tolerance."""


@dataclass(frozen=True)
class TwoParamProblem:
    a0: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    b0: np.ndarray
    b1: np.ndarray
    b2: np.ndarray

    @property
    def sizes(self) -> tuple[int, int]:
        return self.a0.shape[0], self.b0.shape[0]


@dataclass(frozen=True)
class DeltaTriple:
    d0: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    log: tuple = ()

    @property
    def shape(self):
        return self.d0.shape


@lru_cache(maxsize=64)
def _cached_rep(d: int, method: str) -> UniformRep:
    return construct(2, d, method)


def _coefficient_matrices(rep: UniformRep, p: MultiPoly):
    mat = specialize(rep, p)
    size = len(mat)
    a0 = np.empty((size, size), dtype=complex)
    a1 = np.empty((size, size), dtype=complex)
    a2 = np.empty((size, size), dtype=complex)
    for i in range(size):
        for j in range(size):
            f = mat[i][j]
            a0[i, j] = complex(f.constant)
            a1[i, j] = complex(f.linear[0])
            a2[i, j] = complex(f.linear[1])
    if max(np.abs(a.imag).max() for a in (a0, a1, a2)) == 0.0:
        return a0.real.copy(), a1.real.copy(), a2.real.copy()
    return a0, a1, a2


def to_two_param(p: MultiPoly, q: MultiPoly, method: str = "minunif", degrees=None) -> TwoParamProblem:
    """Specialise representations of p and q; real inputs give real matrices.

    ``degrees`` overrides the degree bounds (to embed a polynomial in a
    larger representation than its actual degree requires).
    """
    if p.n != 2 or q.n != 2:
        raise ValueError("bivariate systems only")
    if p.is_zero() or q.is_zero():
        raise ValueError("zero polynomial input")
    pw = p if p.kind == COMPLEX else p.to_complex()
    qw = q if q.kind == COMPLEX else q.to_complex()
    if degrees is None:
        degrees = (max(int(pw.degree()), 0), max(int(qw.degree()), 0))
    a0, a1, a2 = _coefficient_matrices(_cached_rep(degrees[0], method), pw)
    b0, b1, b2 = _coefficient_matrices(_cached_rep(degrees[1], method), qw)
    return TwoParamProblem(a0, a1, a2, b0, b1, b2)


def build_deltas(tp: TwoParamProblem) -> DeltaTriple:
    """The three Kronecker operator determinants."""
    d0 = np.kron(tp.a1, tp.b2) - np.kron(tp.a2, tp.b1)
    d1 = np.kron(tp.a2, tp.b0) - np.kron(tp.a0, tp.b2)
    d2 = np.kron(tp.a0, tp.b1) - np.kron(tp.a1, tp.b0)
    return DeltaTriple(d0, d1, d2)


def coefficient_matrices(rep: UniformRep, p: MultiPoly):
    """A0, A1, ..., An with A0 + sum x_i A_i the pencil of p under ``rep``."""
    mat = specialize(rep, p)
    size = len(mat)
    out = [np.empty((size, size), dtype=complex) for _ in range(rep.n + 1)]
    for i in range(size):
        for j in range(size):
            f = mat[i][j]
            out[0][i, j] = complex(f.constant)
            for k, lin in enumerate(f.linear):
                out[k + 1][i, j] = complex(lin)
    if all(np.abs(m.imag).max() == 0.0 for m in out):
        out = [m.real.copy() for m in out]
    return out


def three_param_deltas(triples):
    """Experimental: operator determinants for three equations in (x, y, z).

    ``triples`` holds, per equation, the matrices (X0, X1, X2, X3) of
    X0 + x X1 + y X2 + z X3.  Returns (Delta0, Delta1, Delta2, Delta3)
    with the eigenvalue relations (Delta_i - t_i Delta0) w = 0 for
    t = (x, y, z) and w the triple Kronecker eigenvector.  No root-count
    or reduction guarantees are made at this size (the pencils grow as
    the product of the three representation sizes).
    """
    if len(triples) != 3 or any(len(t) != 4 for t in triples):
        raise ValueError("need three equations with four coefficient matrices each")
    # constant matrices enter negated: they sit on the right-hand side of
    # the Cramer-style relations
    negated = [(-t[0], t[1], t[2], t[3]) for t in triples]

    def opdet(equations, columns):
        total = None
        for sigma, sign in (
            ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
            ((2, 1, 0), -1), ((1, 0, 2), -1), ((0, 2, 1), -1),
        ):
            term = np.kron(
                np.kron(equations[0][columns[sigma[0]]], equations[1][columns[sigma[1]]]),
                equations[2][columns[sigma[2]]],
            )
            total = sign * term if total is None else total + sign * term
        return total

    deltas = [opdet(triples, (1, 2, 3))]
    for i in range(3):
        cols = [1, 2, 3]
        cols[i] = 0
        deltas.append(opdet(negated, tuple(cols)))
    return tuple(deltas)


# -- staircase reduction ------------------------------------------------------


def _numeric_rank(svals: np.ndarray, size: int, scale: float, tol: float | None, gap_ratio: float, log: list, label: str) -> int:
    if len(svals) == 0:
        return 0
    # threshold anchored to the norm of the original pencil: all the
    # transforms are unitary, so true zeros stay at eps * scale even in
    # submatrices whose own largest singular value has shrunk
    threshold = tol * scale if tol is not None else np.finfo(float).eps * size * scale
    r = int(np.sum(svals > threshold))
    if 0 < r < len(svals):
        edge = float(svals[r])
        gap = float(svals[r - 1]) / edge if edge > 0.0 else np.inf
        if gap < gap_ratio:
            log.append(f"{label}: ambiguous rank {r} of {len(svals)} (gap {gap:.2e} < {gap_ratio:.0e})")
            raise RankDecisionAmbiguous(log[-1])
    else:
        edge = 0.0
    log.append(f"{label}: rank {r}/{len(svals)}, sigma_r={float(svals[r - 1]) if r else 0.0:.3e}, next={edge:.3e}")
    return r


def staircase(dt: DeltaTriple, tol: float | None = None, gap_ratio: float = 1e3, max_steps: int = 400) -> DeltaTriple:
    """Extract the common regular part of the two singular pencils.

    Alternates column and row compressions: kernel directions of Delta0
    are dropped together with the rows spanned by the action of Delta1
    and Delta2 on them (dually for the left kernel), until Delta0 is
    square and numerically nonsingular.  Every rank decision is logged;
    a singular-value gap below ``gap_ratio`` raises
    :class:`RankDecisionAmbiguous` so the caller can retry on a rotated
    system.
    """
    d0, d1, d2 = dt.d0, dt.d1, dt.d2
    size0 = max(d0.shape)
    scale = max(
        float(np.linalg.norm(d0, 2)),
        float(np.linalg.norm(d1, 2)),
        float(np.linalg.norm(d2, 2)),
        1e-300,
    )
    log: list[str] = list(dt.log)
    for step in range(max_steps):
        m, n = d0.shape
        if m == 0 or n == 0:
            raise NoRegularPart("staircase emptied the pencil")
        u, svals, vh = np.linalg.svd(d0)
        r = _numeric_rank(svals, size0, scale, tol, gap_ratio, log, f"step {step} delta0[{m}x{n}]")
        if r == m == n:
            return DeltaTriple(d0, d1, d2, tuple(log))
        if r < n:
            # column compression: kernel of Delta0, then drop the rows in
            # which Delta1/Delta2 act on that kernel
            v1 = vh[:r].conj().T
            v2 = vh[r:].conj().T
            w = np.hstack([d1 @ v2, d2 @ v2])
            uw, ws, _ = np.linalg.svd(w)
            s = _numeric_rank(ws, size0, scale, tol, gap_ratio, log, f"step {step} action[{w.shape[0]}x{w.shape[1]}]")
            u2 = uw[:, s:]
            d0 = u2.conj().T @ d0 @ v1
            d1 = u2.conj().T @ d1 @ v1
            d2 = u2.conj().T @ d2 @ v1
        else:
            # row compression: left kernel of Delta0, dual construction
            u1 = u[:, :r]
            u2 = u[:, r:]
            w = np.vstack([u2.conj().T @ d1, u2.conj().T @ d2])
            _, ws, wvh = np.linalg.svd(w)
            s = _numeric_rank(ws, size0, scale, tol, gap_ratio, log, f"step {step} coaction[{w.shape[0]}x{w.shape[1]}]")
            v2 = wvh[s:].conj().T
            d0 = u1.conj().T @ d0 @ v2
            d1 = u1.conj().T @ d1 @ v2
            d2 = u1.conj().T @ d2 @ v2
    raise NoRegularPart("staircase failed to terminate")


def commutator_defect(dt: DeltaTriple) -> float:
    """Scaled norm of [Delta0^-1 Delta1, Delta0^-1 Delta2] on the reduced triple."""
    g1 = np.linalg.solve(dt.d0, dt.d1)
    g2 = np.linalg.solve(dt.d0, dt.d2)
    comm = g1 @ g2 - g2 @ g1
    scale = max(1.0, float(np.linalg.norm(g1) * np.linalg.norm(g2)))
    return float(np.linalg.norm(comm)) / scale


# -- commuting eigenvalue extraction ------------------------------------------


def solve_commuting(dt: DeltaTriple, commute_tol: float = 1e-6, seed: int = 0):
    """Joint eigenvalues of the commuting quotients of a regular triple.

    A single unitary similarity (the Schur basis of Delta0^-1 Delta1)
    triangularizes both quotients; x comes from the first diagonal, y
    from the transformed second quotient.  Clustered x eigenvalues are
    handled by re-triangularizing a random separating combination of the
    two quotients, which keeps the x/y readout consistent pairwise.
    """
    g1 = np.linalg.solve(dt.d0, dt.d1).astype(complex)
    g2 = np.linalg.solve(dt.d0, dt.d2).astype(complex)
    size = g1.shape[0]
    if size == 0:
        return np.array([]), np.array([])

    t1, qmat = scipy.linalg.schur(g1, output="complex")
    s2 = qmat.conj().T @ g2 @ qmat
    xs = np.diag(t1)
    scale_x = max(1.0, float(np.max(np.abs(xs))))
    clustered = any(
        abs(xs[i] - xs[j]) < 1e-7 * scale_x for i in range(size) for j in range(i + 1, size)
    )
    defect = _lower_defect(s2)
    if not clustered and defect <= commute_tol:
        return xs, np.diag(s2)

    rng = np.random.default_rng(seed)
    best = None
    for _ in range(4):
        theta = rng.uniform(0.15, 1.4)
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        _, qmat = scipy.linalg.schur(g1 + theta * phase * g2, output="complex")
        r1 = qmat.conj().T @ g1 @ qmat
        r2 = qmat.conj().T @ g2 @ qmat
        defect = max(_lower_defect(r1), _lower_defect(r2))
        if best is None or defect < best[0]:
            best = (defect, np.diag(r1).copy(), np.diag(r2).copy())
        if defect <= commute_tol:
            break
    defect, xs, ys = best
    if defect > commute_tol:
        raise CommutationFailure(f"simultaneous triangularization defect {defect:.2e} exceeds {commute_tol:.0e}")
    return xs, ys


def _lower_defect(t: np.ndarray) -> float:
    strict_lower = np.tril(t, -1)
    return float(np.linalg.norm(strict_lower)) / max(1.0, float(np.linalg.norm(t)))


# -- rotation heuristic, refinement, driver ------------------------------------


def rotate_system(p: MultiPoly, q: MultiPoly, seed: int = 0):
    """Replace (p, q) by (c p + s q, -s p + c q) with random c^2 + s^2 = 1.

    The root set is unchanged (the combination is invertible) and so is
    the conditioning of the roots; only the staircase rank decisions see
    a different matrix.
    """
    rng = random.Random(seed)
    theta = rng.uniform(0.2, math.pi - 0.2)
    c, s = math.cos(theta), math.sin(theta)
    pw = p if p.kind == COMPLEX else p.to_complex()
    qw = q if q.kind == COMPLEX else q.to_complex()
    return pw.scale(c) + qw.scale(s), pw.scale(-s) + qw.scale(c), (c, s)


def _newton_polish(pw, qw, px, py, qx, qy, x, y, best, iters, notes):
    for _ in range(max(0, iters)):
        if not (math.isfinite(abs(x)) and math.isfinite(abs(y))):
            break
        f1 = pw.evaluate((x, y))
        f2 = qw.evaluate((x, y))
        j11, j12 = px.evaluate((x, y)), py.evaluate((x, y))
        j21, j22 = qx.evaluate((x, y)), qy.evaluate((x, y))
        det = j11 * j22 - j12 * j21
        jscale = max(abs(j11), abs(j12), abs(j21), abs(j22), 1e-300)
        # the comparison is phrased so that NaN and an underflowed
        # threshold both take the bail-out branch
        if not (abs(det) > 1e-12 * jscale * jscale > 0.0):
            if notes is not None:
                notes.append(f"root ({x:.3g},{y:.3g}): singular Jacobian, left unrefined")
            break
        nx = x - (f1 * j22 - f2 * j12) / det
        ny = y - (f2 * j11 - f1 * j21) / det
        cand = normalized_residual(pw, qw, nx, ny)
        if cand <= best:
            x, y, best = nx, ny, cand
        else:
            break
    return x, y, best


def _reversed_poly(poly: MultiPoly) -> MultiPoly:
    d = max(int(poly.degree()), 0)
    return MultiPoly.make(2, {(d - a, d - b): c for (a, b), c in poly.terms.items()}, COMPLEX)


def refine(roots: RootSet, p: MultiPoly, q: MultiPoly, iters: int = 5) -> RootSet:
    """Newton polish on the 2x2 Jacobian; steps are accepted only if the
    residual does not increase, and singular-Jacobian roots are kept
    unrefined (flagged in the log).

    Large roots are additionally polished in reciprocal coordinates
    (u, v) = (1/x, 1/y) on the degree-reversed polynomials, where the
    evaluation is well conditioned; whichever residual is smaller wins.
    """
    pw = p if p.kind == COMPLEX else p.to_complex()
    qw = q if q.kind == COMPLEX else q.to_complex()
    px, py = pw.derivative(0), pw.derivative(1)
    qx, qy = qw.derivative(0), qw.derivative(1)
    pr = qr = None
    notes = list(roots.log)
    new_roots = []
    new_res = []
    for (x, y), res in zip(roots.roots, roots.residuals):
        x, y, best = _newton_polish(pw, qw, px, py, qx, qy, complex(x), complex(y), res, iters, notes)
        if best > 1e-12 and 2.0 < abs(x) < 1e12 and 2.0 < abs(y) < 1e12:
            if pr is None:
                pr, qr = _reversed_poly(pw), _reversed_poly(qw)
                prx, pry = pr.derivative(0), pr.derivative(1)
                qrx, qry = qr.derivative(0), qr.derivative(1)
            u, v = 1.0 / x, 1.0 / y
            u, v, _ = _newton_polish(pr, qr, prx, pry, qrx, qry, u, v, normalized_residual(pr, qr, u, v), iters + 4, None)
            if u != 0 and v != 0:
                cand = normalized_residual(pw, qw, 1.0 / u, 1.0 / v)
                if cand < best:
                    x, y, best = 1.0 / u, 1.0 / v, cand
        new_roots.append((x, y))
        new_res.append(best)
    return RootSet(
        roots=tuple(new_roots),
        residuals=tuple(new_res),
        multiplicities=roots.multiplicities,
        status=roots.status,
        reduced_size=roots.reduced_size,
        retries=roots.retries,
        log=tuple(notes),
        failure=roots.failure,
    )


def _dedup_roots(pairs, tol: float = 1e-7):
    """Keep one representative per root cluster (best residual first)."""
    out = []
    for (x, y), res in sorted(pairs, key=lambda t: t[1]):
        dup = any(abs(x - ox) + abs(y - oy) < tol * (1.0 + abs(ox) + abs(oy)) for (ox, oy), _ in out)
        if not dup:
            out.append(((x, y), res))
    return out


def _multiplicity_estimates(points, tol: float = 1e-6):
    mult = []
    for x, y in points:
        count = 0
        for ox, oy in points:
            if abs(x - ox) + abs(y - oy) < tol * (1.0 + abs(ox) + abs(oy)):
                count += 1
        mult.append(count)
    return tuple(mult)


# -- rank-completing fallback for deep staircase failures ----------------------


def _completed_pencil_eigs(da: np.ndarray, d0: np.ndarray, scale: float, rng) -> np.ndarray:
    """Finite regular eigenvalues of the singular pencil (da - lambda d0).

    The pencil is regularized by a random rank-completing perturbation;
    eigenvalues belonging to the original pencil are recognized by their
    left/right eigenvectors being orthogonal to the perturbation ranges.
    """
    size = da.shape[0]
    rho = 0
    for _ in range(2):
        lam = complex(rng.standard_normal(), rng.standard_normal())
        svals = np.linalg.svd(da - lam * d0, compute_uv=False)
        rho = max(rho, int(np.sum(svals > np.finfo(float).eps * size * scale)))
    k = size - rho
    if k == 0:
        return scipy.linalg.eigvals(da, d0)
    u = np.linalg.qr(rng.standard_normal((size, k)) + 1j * rng.standard_normal((size, k)))[0]
    v = np.linalg.qr(rng.standard_normal((size, k)) + 1j * rng.standard_normal((size, k)))[0]
    tau = 0.1 * scale
    amp = rng.uniform(0.5, 1.5, k) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, k))
    amp2 = rng.uniform(0.5, 1.5, k) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, k))
    da_p = da + tau * (u * amp) @ v.conj().T
    d0_p = d0 + tau * (u * amp2) @ v.conj().T
    lam, vl, vr = scipy.linalg.eig(da_p, d0_p, left=True, right=True)
    keep = []
    for i in range(size):
        if not np.isfinite(lam[i]):
            continue
        s_right = np.linalg.norm(v.conj().T @ vr[:, i]) / np.linalg.norm(vr[:, i])
        s_left = np.linalg.norm(u.conj().T @ vl[:, i]) / np.linalg.norm(vl[:, i])
        if max(s_right, s_left) < 1e-6:
            keep.append(lam[i])
    return np.array(keep)


def _rank_completed_roots(p: MultiPoly, q: MultiPoly, dt: DeltaTriple, expected: int, seed: int):
    """Root candidates from two regularized singular pencils.

    The x (resp. y) candidates contain all root coordinates, possibly
    along with extra regular eigenvalues that the common reduction of
    the pair would have removed; each x is therefore paired with its
    best-residual y, polished by Newton, and gated on the residual, so
    spurious candidates drop out instead of being counted.
    """
    scale = max(
        float(np.linalg.norm(dt.d0, 2)),
        float(np.linalg.norm(dt.d1, 2)),
        float(np.linalg.norm(dt.d2, 2)),
        1e-300,
    )
    rng = np.random.default_rng(seed)
    xs = _completed_pencil_eigs(dt.d1.astype(complex), dt.d0.astype(complex), scale, rng)
    ys = _completed_pencil_eigs(dt.d2.astype(complex), dt.d0.astype(complex), scale, rng)
    if len(xs) < expected or len(ys) < expected:
        raise NoRegularPart(f"rank completion found {len(xs)} x and {len(ys)} y candidates, expected >= {expected}")
    res = np.maximum(_residual_grid(p, xs, ys), _residual_grid(q, xs, ys))
    pairs = [(complex(xs[i]), complex(ys[j])) for i, j in enumerate(np.argmin(res, axis=1))]
    pairs += [(complex(xs[i]), complex(ys[j])) for j, i in enumerate(np.argmin(res, axis=0))]
    return pairs


def _residual_grid(poly: MultiPoly, xs, ys) -> np.ndarray:
    """Normalized residual |poly(x, y)| / sum |c| |x^a y^b| on the grid xs x ys."""
    dx = max((e[0] for e in poly.terms), default=0)
    dy = max((e[1] for e in poly.terms), default=0)
    c = np.zeros((dx + 1, dy + 1), dtype=complex)
    for (a, b), v in poly.terms.items():
        c[a, b] = complex(v)
    xs = np.asarray(xs, dtype=complex)
    ys = np.asarray(ys, dtype=complex)
    xp = xs[:, None] ** np.arange(dx + 1)[None, :]
    yp = ys[:, None] ** np.arange(dy + 1)[None, :]
    num = np.abs(xp @ c @ yp.T)
    den = np.abs(xp) @ np.abs(c) @ np.abs(yp).T
    den[den == 0.0] = 1.0
    return num / den


def solve(
    p: MultiPoly,
    q: MultiPoly,
    method: str = "minunif",
    tol: float | None = None,
    gap_ratio: float = 1e3,
    retries: int = 3,
    refine_iters: int = 5,
    seed: int = 0,
    commute_tol: float = 1e-6,
    degree_cap: int = DEGREE_CAP,
) -> RootSet:
    """Full pipeline: representations -> Delta pencils -> staircase -> roots.

    On an ambiguous rank decision (or a commutation failure) the system
    is rotated and retried up to ``retries`` times; after the budget the
    best partial result is returned with a machine-readable failure
    note rather than raising.
    """
    if p.n != 2 or q.n != 2:
        raise ValueError("bivariate systems only")
    if p.is_zero() or q.is_zero():
        raise ValueError("zero polynomial input")
    d1 = max(int(p.degree()), 0)
    d2 = max(int(q.degree()), 0)
    if max(d1, d2) > degree_cap:
        raise ValueError(f"degree {max(d1, d2)} exceeds the solver cap {degree_cap} (override degree_cap to force)")
    expected = d1 * d2
    if expected == 0:
        return RootSet((), (), (), status="ok", reduced_size=0, retries=0)

    # unit coefficient norm keeps the pencil scale (and therefore the rank
    # thresholds) independent of the input scaling; the roots are unchanged
    def _unit(poly: MultiPoly) -> MultiPoly:
        w = poly if poly.kind == COMPLEX else poly.to_complex()
        norm = math.sqrt(sum(abs(c) ** 2 for c in w.terms.values()))
        return w.scale(1.0 / norm)

    work = (_unit(p), _unit(q))
    attempts: list[RootSet] = []
    failure = None
    pencil_size = (2 * d1 - 1) * (2 * d2 - 1)
    if tol is not None:
        ladder = ((tol, gap_ratio),)
    elif pencil_size > 600:
        # very large pencils: one strict pass, then hand over to the
        # rank-completing fallback instead of burning minutes of ladders
        ladder = ((None, gap_ratio), (1e-11, 1.0))
    else:
        # escalate the rank threshold first; as a last resort accept the
        # threshold cut without the gap veto and let the Bezout-count,
        # commutation, and residual gates below validate the reduction
        ladder = ((None, gap_ratio), (3e-13, gap_ratio), (1e-11, gap_ratio), (1e-11, 1.0), (1e-9, 1.0))
    effective_retries = min(retries, 1) if pencil_size > 600 else retries
    for attempt in range(max(1, effective_retries + 1)):
        tp = None
        try:
            tp = to_two_param(work[0], work[1], method=method)
            dt = build_deltas(tp)
        except np.linalg.LinAlgError as exc:
            failure = f"attempt {attempt}: {exc}"
        if tp is not None:
            for level, (step_tol, step_gap) in enumerate(ladder):
                try:
                    reduced = staircase(dt, tol=step_tol, gap_ratio=step_gap)
                    log = list(reduced.log)
                    if level:
                        log.append(f"rank ladder level {level}: tol={step_tol}, gap_ratio={step_gap}")
                    defect = commutator_defect(reduced)
                    log.append(f"reduced size {reduced.shape[0]}, commutator defect {defect:.3e}")
                    if reduced.shape[0] != expected:
                        raise NoRegularPart(f"reduced size {reduced.shape[0]} != Bezout count {expected}")
                    if defect > commute_tol:
                        raise CommutationFailure(f"commutator defect {defect:.2e}")
                    xs, ys = solve_commuting(reduced, commute_tol=commute_tol, seed=seed + attempt)
                    pairs = [(complex(x), complex(y)) for x, y in zip(xs, ys)]
                    residuals = [normalized_residual(p, q, x, y) for x, y in pairs]
                    rs = RootSet(
                        roots=tuple(pairs),
                        residuals=tuple(residuals),
                        multiplicities=_multiplicity_estimates(pairs),
                        status="ok" if len(pairs) == expected else "partial",
                        reduced_size=reduced.shape[0],
                        retries=attempt,
                        log=tuple(log),
                    )
                    rs = refine(rs, p, q, iters=refine_iters)
                    attempts.append(rs)
                    if len(rs) == expected:
                        return rs
                except (RankDecisionAmbiguous, NoRegularPart, CommutationFailure, np.linalg.LinAlgError) as exc:
                    failure = f"attempt {attempt}: {exc}"
        if attempt < effective_retries:
            rotated_p, rotated_q, _ = rotate_system(work[0], work[1], seed=seed + 17 * (attempt + 1))
            work = (rotated_p, rotated_q)

    # deep staircase failure: regularize the two singular pencils directly by
    # rank-completing perturbations and pair the recovered x and y values
    for attempt in range(2):
        base = (_unit(p), _unit(q))
        if attempt:
            base = rotate_system(base[0], base[1], seed=seed + 977)[:2]
        try:
            dt = build_deltas(to_two_param(base[0], base[1], method=method))
            pairs = _rank_completed_roots(base[0], base[1], dt, expected, seed + attempt)
        except (NoRegularPart, np.linalg.LinAlgError) as exc:
            failure = f"rank completion: {exc}"
            continue
        residuals = [normalized_residual(p, q, x, y) for x, y in pairs]
        rs = RootSet(
            roots=tuple(pairs),
            residuals=tuple(residuals),
            multiplicities=(1,) * len(pairs),
            status="ok",
            reduced_size=expected,
            retries=retries,
            log=("staircase exhausted; rank-completing perturbation fallback",),
        )
        rs = refine(rs, p, q, iters=max(refine_iters, 10))
        # a second, longer polish for stragglers only (near-multiple roots
        # converge slowly)
        close = [i for i, res in enumerate(rs.residuals) if 1e-9 <= res < 1e-3]
        if close:
            sub = RootSet(
                roots=tuple(rs.roots[i] for i in close),
                residuals=tuple(rs.residuals[i] for i in close),
                multiplicities=(1,) * len(close),
            )
            sub = refine(sub, p, q, iters=60)
            merged_roots = list(rs.roots)
            merged_res = list(rs.residuals)
            for pos, i in enumerate(close):
                merged_roots[i] = sub.roots[pos]
                merged_res[i] = sub.residuals[pos]
            rs = RootSet(roots=tuple(merged_roots), residuals=tuple(merged_res), multiplicities=rs.multiplicities, log=rs.log)
        # near-multiple roots plateau around sqrt(eps), far above machine
        # precision but far below the ~1e-1 residuals of spurious pairs
        survivors = _dedup_roots(
            [(r, res) for r, res in zip(rs.roots, rs.residuals) if res < 1e-6]
        )
        roots = tuple(r for r, _ in survivors)
        cleaned = RootSet(
            roots=roots,
            residuals=tuple(res for _, res in survivors),
            multiplicities=_multiplicity_estimates(roots),
            status="ok" if len(survivors) == expected else "partial",
            reduced_size=expected,
            retries=retries,
            log=("staircase exhausted; rank-completing perturbation fallback",),
        )
        if len(survivors) == expected:
            return cleaned
        attempts.append(cleaned)
    if attempts:
        best = max(attempts, key=len)
        return RootSet(
            roots=best.roots,
            residuals=best.residuals,
            multiplicities=best.multiplicities,
            status="partial",
            reduced_size=best.reduced_size,
            retries=retries,
            log=best.log,
            failure=failure or f"recovered {len(best)} of {expected} roots",
        )
    return RootSet((), (), (), status="failed", reduced_size=None, retries=retries, failure=failure)
