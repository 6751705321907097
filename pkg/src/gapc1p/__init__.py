"""Gapped consecutive-ones toolchain.

Decide whether a binary matrix admits a column ordering with at most k
blocks of ones per row and no zero-gap wider than delta, generate the
column-rigidity gadget and the 3SAT hardness instances built on it, and
verify every construction against exhaustive oracles at small scale.
"""

from .bitmatrix import (
    DENSE,
    GAP_TOO_LARGE,
    SPARSE,
    TOO_MANY_BLOCKS,
    BinaryMatrix,
    CheckReport,
    ColumnOrdering,
    GapSpec,
    MatrixFormatError,
    RowProfile,
    Violation,
    apply_ordering,
    check_ordering,
    parse_matrix,
    parse_ordering,
    profile_row,
    serialize_matrix,
    serialize_ordering,
)
from .gadget import GadgetSpec, RigidityReport, build_gadget, gadget_row_count, verify_rigidity
from .reduction import (
    VARIANT_LITERAL,
    VARIANT_REPAIRED,
    Cnf,
    ColumnRole,
    ConstructionError,
    DimacsFormatError,
    EquivalenceReport,
    ReductionOutput,
    ReductionParams,
    parse_dimacs,
    reduce_theorem2,
    reduce_theorem3,
    sat_brute_force,
    satisfying_assignments,
    to_exact3,
    verify_reduction,
    witness_from_assignment,
)
from .solver import (
    EXHAUSTED,
    HEURISTIC_CONSTRAINED,
    HEURISTIC_INPUT,
    SATISFIED,
    TIMED_OUT,
    ExhaustiveReport,
    SearchConfig,
    SearchStats,
    SolveOutcome,
    brute_force,
    classic_c1p,
    decide,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "CheckReport",
    "Cnf",
    "ColumnOrdering",
    "ColumnRole",
    "ConstructionError",
    "DENSE",
    "DimacsFormatError",
    "EXHAUSTED",
    "EquivalenceReport",
    "ExhaustiveReport",
    "GAP_TOO_LARGE",
    "GadgetSpec",
    "GapSpec",
    "HEURISTIC_CONSTRAINED",
    "HEURISTIC_INPUT",
    "MatrixFormatError",
    "ReductionOutput",
    "ReductionParams",
    "RigidityReport",
    "RowProfile",
    "SATISFIED",
    "SPARSE",
    "SearchConfig",
    "SearchStats",
    "SolveOutcome",
    "TIMED_OUT",
    "TOO_MANY_BLOCKS",
    "VARIANT_LITERAL",
    "VARIANT_REPAIRED",
    "Violation",
    "apply_ordering",
    "brute_force",
    "build_gadget",
    "check_ordering",
    "classic_c1p",
    "decide",
    "gadget_row_count",
    "parse_dimacs",
    "parse_matrix",
    "parse_ordering",
    "profile_row",
    "reduce_theorem2",
    "reduce_theorem3",
    "sat_brute_force",
    "satisfying_assignments",
    "serialize_matrix",
    "serialize_ordering",
    "to_exact3",
    "verify_reduction",
    "verify_rigidity",
    "witness_from_assignment",
]
