"""Uniform determinantal representations of polynomials.

A library for constructing N x N matrices of bi-affine forms whose
determinant equals the generic n-variate polynomial of degree at most d,
for verifying such representations exactly, for transforming them under
affine changes of variables, for lifting them to matrix polynomials, and
for solving bivariate polynomial systems through the induced
two-parameter eigenvalue problem.
"""

from .poly import (
    COMPLEX,
    NEG_INF,
    RATIONAL,
    AffineForm,
    MultiPoly,
    enumerate_monomials,
    poly_from_json,
    poly_to_json,
)
from .monoset import (
    MonomialSet,
    binary_sets,
    build_mv,
    check_connected,
    cover_failure,
    lattice_set,
    monoset_from_json,
    monoset_to_json,
    split_sets,
    table_sets,
    tree_set,
    turan_sets,
)
from .biaffine import (
    SymbolicCapExceeded,
    UniformRep,
    VerificationReport,
    det_m0,
    make_rep,
    minor_span_check,
    rank_profile_m0,
    rep_from_json,
    rep_to_json,
    specialize,
    symbolic_det,
    verify,
)
from .construct import (
    CoveringError,
    InapplicableMethod,
    KNOWN_SIZES,
    METHODS,
    best_method,
    cons1,
    cons2,
    construct,
    minunif,
    repjan,
)
from .symmetry import AffineMap, CoeffAction, act, coeff_action
from .matpoly import (
    FamilyNotSupported,
    LiftResult,
    MatrixPoly,
    lift,
    matrixpoly_from_json,
    matrixpoly_to_json,
    skew_pad,
    witness_check,
)
from .roots import RootSet, normalized_residual, rootset_from_json, rootset_to_csv, rootset_to_json
from .oracle import PositiveDimensionalError, oracle_roots
from .twopareig import (
    DeltaTriple,
    NoRegularPart,
    RankDecisionAmbiguous,
    TwoParamProblem,
    build_deltas,
    refine,
    rotate_system,
    solve,
    solve_commuting,
    staircase,
    to_two_param,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
