"""Affine symmetry and matrix-polynomial lifts.

An invertible affine change of variables acts on representations: it
substitutes x and remixes the coefficient symbols through an exactly
invertible matrix.  Separately, replacing each coefficient symbol by a
k x k matrix lifts a representation to matrix polynomials whenever a
unimodular triangularization witness exists, and genuinely fails
without one once the coefficient matrices stop commuting.
"""

from fractions import Fraction

import numpy as np

from detrep import (
    AffineMap,
    MatrixPoly,
    act,
    coeff_action,
    construct,
    lift,
    repjan,
    skew_pad,
    verify,
    witness_check,
)
from detrep.matpoly import evaluate_form_matrix
from detrep.poly import enumerate_monomials

# the swap-and-shift map g(x, y) = (y, x + 1)
g = AffineMap.make([[0, 1], [1, 0]], [0, 1])
ca = coeff_action(g, 2, 2)
print("coefficient action of g on quadrics (exact 6x6 matrix):")
for row in ca.rho:
    print("   ", [str(v) for v in row])

rep = construct(2, 2, "cons2-table")
moved = act(g, rep)
print("transformed representation still verifies:", verify(moved, "symbolic").ok)

inv = ca.inverse_matrix()
from detrep._linalg import matmul

prod = matmul([list(r) for r in ca.rho], inv)
print("rho(g) rho(g)^-1 is exactly the identity:",
      all(prod[i][j] == (i == j) for i in range(6) for j in range(6)))

# matrix polynomial lift: 2x2 coefficient blocks on the size-9 quartic family
rep4 = repjan(4)
print("\ntriangularization witness for the 2d+1 family:", witness_check(rep4))

rng = np.random.default_rng(3)
terms = {e: [[Fraction(int(v)) for v in row] for row in rng.integers(-3, 4, (2, 2))]
         for e in enumerate_monomials(2, 4)}
P = MatrixPoly.make(2, 4, 2, terms)
res = lift(rep4, P)
print(f"lift is {res.size} x {res.size}, warranted: {res.warranted}")
pt = (0.4, -1.1)
d1 = np.linalg.det(evaluate_form_matrix(res.matrix, pt))
d2 = np.linalg.det(P.evaluate(pt))
print(f"det(lift) vs det(P) at a sample point: |diff| = {abs(d1 - d2):.2e}")

# the counterexample: a padded representation is fine for scalars but
# its lift breaks as soon as two coefficient blocks fail to commute
padded = skew_pad(construct(2, 2, "cons2-table"), (1, 0), (0, 1))
print("\npadded representation still verifies for scalars:", verify(padded, "symbolic").ok)
terms2 = {e: [[Fraction(int(v)) for v in row] for row in rng.integers(-3, 4, (2, 2))]
          for e in enumerate_monomials(2, 2)}
P2 = MatrixPoly.make(2, 2, 2, terms2)
res2 = lift(padded, P2)
d1 = np.linalg.det(evaluate_form_matrix(res2.matrix, pt))
d2 = np.linalg.det(P2.evaluate(pt))
print(f"unwarranted lift (warranted={res2.warranted}): |det difference| = {abs(d1 - d2):.2e}")
