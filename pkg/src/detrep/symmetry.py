"""Affine change of variables acting on representations.

An invertible affine map g of x-space induces a linear action rho(g) on
the coefficient symbols: expanding p(g^-1 x) = sum c'_alpha x^alpha
gives c' = rho(g) c.  Substituting x <- g^-1 x and c <- rho(g)^-1 c in a
valid representation yields another representation of the same size,
since det(M(g^-1 x, rho(g)^-1 c)) = p(x, c).

All arithmetic here is exact over the rationals, so rho(g) rho(g^-1) is
the identity matrix on the nose.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .biaffine import UniformRep, make_rep
from .poly import AffineForm, MultiPoly, enumerate_monomials


@dataclass(frozen=True)
class AffineMap:
    """x |-> A x + b with A invertible, over exact rationals."""

    a: tuple
    b: tuple

    @property
    def n(self) -> int:
        return len(self.b)

    @staticmethod
    def make(a, b) -> "AffineMap":
        a = tuple(tuple(Fraction(v) for v in row) for row in a)
        b = tuple(Fraction(v) for v in b)
        if len(a) != len(b) or any(len(row) != len(b) for row in a):
            raise ValueError("shape mismatch")
        if _linalg.exact_det(a) == 0:
            raise ValueError("the linear part is singular")
        return AffineMap(a, b)

    @staticmethod
    def identity(n: int) -> "AffineMap":
        return AffineMap.make([[int(i == j) for j in range(n)] for i in range(n)], [0] * n)

    @staticmethod
    def random(n: int, seed: int = 0, entry_range: int = 3) -> "AffineMap":
        rng = random.Random(seed)
        while True:
            a = [[rng.randint(-entry_range, entry_range) for _ in range(n)] for _ in range(n)]
            if _linalg.exact_det(a) != 0:
                b = [rng.randint(-entry_range, entry_range) for _ in range(n)]
                return AffineMap.make(a, b)

    def apply(self, point):
        return tuple(
            sum((row[j] * Fraction(point[j]) for j in range(self.n)), Fraction(0)) + self.b[i]
            for i, row in enumerate(self.a)
        )

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: x |-> self(other(x))."""
        a = _linalg.matmul([list(r) for r in self.a], [list(r) for r in other.a])
        b = [v + w for v, w in zip(_linalg.matvec([list(r) for r in self.a], list(other.b)), self.b)]
        return AffineMap.make(a, b)

    def inverse(self) -> "AffineMap":
        inv = _linalg.invert([list(r) for r in self.a])
        b = [-v for v in _linalg.matvec(inv, list(self.b))]
        return AffineMap.make(inv, b)


@dataclass(frozen=True)
class CoeffAction:
    """The matrix of c -> c' over the graded-lex coefficient basis."""

    n: int
    d: int
    rho: tuple

    def inverse_matrix(self) -> list[list[Fraction]]:
        return _linalg.invert([list(r) for r in self.rho])


def _inverse_substitution_polys(g: AffineMap) -> list[MultiPoly]:
    """The coordinates of g^-1 x as degree-1 polynomials in x."""
    ginv = g.inverse()
    out = []
    for i in range(g.n):
        terms = {(0,) * g.n: ginv.b[i]}
        for j in range(g.n):
            if ginv.a[i][j]:
                terms[tuple(1 if k == j else 0 for k in range(g.n))] = ginv.a[i][j]
        out.append(MultiPoly.make(g.n, terms))
    return out


def coeff_action(g: AffineMap, n: int, d: int) -> CoeffAction:
    """Expand p(g^-1 x) symbolically and read off the matrix of c -> c'."""
    if g.n != n:
        raise ValueError("map dimension mismatch")
    subs = _inverse_substitution_polys(g)
    basis = enumerate_monomials(n, d)
    pos = {e: i for i, e in enumerate(basis)}
    k = len(basis)
    rho = [[Fraction(0)] * k for _ in range(k)]
    for col, beta in enumerate(basis):
        image = MultiPoly.constant(n, 1)
        for sub, e in zip(subs, beta):
            if e:
                image = image * sub**e
        for exp, coeff in image.terms.items():
            rho[pos[exp]][col] = Fraction(coeff)
    return CoeffAction(n, d, tuple(tuple(row) for row in rho))


def _substitute_form(form: AffineForm, ginv: AffineMap) -> AffineForm:
    """a + l.x evaluated at x <- A'x + b' stays affine: (a + l.b') + (l A') x."""
    const = Fraction(form.constant)
    linear = [Fraction(0)] * ginv.n
    for k, lin in enumerate(form.linear):
        if lin:
            const += Fraction(lin) * ginv.b[k]
            for j in range(ginv.n):
                linear[j] += Fraction(lin) * ginv.a[k][j]
    return AffineForm(const, tuple(linear))


def act(g: AffineMap, rep: UniformRep) -> UniformRep:
    """The transformed representation M(g^-1 x, rho(g)^-1 c); same size.

    The affine x-substitution keeps every entry of x-degree <= 1 and the
    linear c-substitution keeps c-degree <= 1, so bi-affinity survives.
    """
    if g.n != rep.n:
        raise ValueError("map dimension mismatch")
    ginv = g.inverse()
    size = rep.size
    m0 = [[_substitute_form(rep.m0[i][j], ginv) for j in range(size)] for i in range(size)]
    rho_inv = coeff_action(g, rep.n, rep.d).inverse_matrix()
    basis = enumerate_monomials(rep.n, rep.d)
    pos = {e: i for i, e in enumerate(basis)}
    substituted = {alpha: [[_substitute_form(f, ginv) for f in row] for row in mat] for alpha, mat in rep.malpha.items()}
    zero_row = [AffineForm.zero(rep.n)] * size
    malpha = {}
    for col, beta in enumerate(basis):
        acc = None
        for alpha, mat in substituted.items():
            w = rho_inv[pos[alpha]][col]
            if w == 0:
                continue
            if acc is None:
                acc = [[f.scale(w) for f in row] for row in mat]
            else:
                for i in range(size):
                    acc[i] = [a + f.scale(w) for a, f in zip(acc[i], mat[i])]
        if acc is not None:
            malpha[beta] = acc
        else:
            malpha[beta] = [list(zero_row) for _ in range(size)]
    meta = dict(rep.meta)
    meta["transformed"] = True
    return make_rep(rep.n, rep.d, m0, malpha, meta)
