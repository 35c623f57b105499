"""Constructing and verifying uniform determinantal representations.

Builds the classic size-3 representation of the generic bivariate
quadric, checks the exact determinant identity, and pokes at the
structural facts that make such representations tick: the constant part
M0 is identically singular, but only just (rank N-1 everywhere).
"""

from fractions import Fraction

from detrep import (
    MultiPoly,
    check_connected,
    cons1,
    construct,
    det_m0,
    minor_span_check,
    rank_profile_m0,
    specialize,
    symbolic_det,
    verify,
)

# The seed of the construction is a set of monomials "connected to 1":
# {1, x, y}, each member one variable step away from another member.
V = check_connected(2, [(0, 0), (1, 0), (0, 1)])
rep = cons1(V, 2)
print(f"representation size N = {rep.size} for the generic bivariate quadric")

# det(M) = c00 + c10 x + c01 y + c20 x^2 + c11 xy + c02 y^2, exactly:
report = verify(rep, "symbolic")
print("symbolic verification:", "pass" if report.ok else "fail")

# The same check by exact evaluation at random integer points, with a
# Schwartz-Zippel bound on the probability that a wrong matrix slips by.
report = verify(rep, "random", trials=20, seed=1, box=50)
print(f"randomized verification: {'pass' if report.ok else 'fail'} "
      f"(failure probability bound {report.failure_bound:.2e})")

# Structure: the c-free part M0 has determinant identically zero ...
print("det(M0) == 0:", det_m0(rep).is_zero())
# ... yet its rank never drops below N-1 at any point ...
print("rank of M0 at 20 random points:", rank_profile_m0(rep, points=20, seed=2))
# ... and its maximal minors span a space V with F1 * V containing all quadrics.
print("minor span covers degree 2:", minor_span_check(rep))

# Substituting concrete coefficients gives an honest matrix pencil:
circle = MultiPoly.make(2, {(2, 0): Fraction(1), (0, 2): Fraction(1), (0, 0): Fraction(-1)})
pencil = specialize(rep, circle)
polys = [[entry.to_poly() for entry in row] for row in pencil]
print("det(pencil) equals x^2 + y^2 - 1:", symbolic_det(polys) == circle)

# Larger builds work the same way; sizes below the symbolic cap verify
# exactly, bigger ones use the randomized route.
for n, d, method in [(2, 6, "minunif"), (3, 5, "cons2-table"), (6, 4, "cons2-turan")]:
    r = construct(n, d, method)
    mode = "symbolic" if r.size <= 13 else "random"
    ok = verify(r, mode, trials=20, seed=3).ok
    print(f"construct({n}, {d}, {method}): N = {r.size:2d}, {mode} verification {'pass' if ok else 'fail'}")
