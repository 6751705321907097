"""3SAT-to-matrix reduction generators and their equivalence harness.

Two families of hardness instances are generated from an exactly-3-CNF
formula with ``n`` variables and ``m`` clauses.  Both share one layout:

* columns ``2i-1, 2i`` form the two-column block of variable ``i``;
* a *separator* of ``d`` columns follows, carrying a rigidity gadget that
  pins its internal order;
* one *clause block* of ``w`` columns per clause closes the matrix
  (``w = 4`` for the block-count family, ``w = 5`` for the gapped family).

Variable rows tie each variable block against the separator's left end,
nesting rows tie the clause blocks in order against its right end, and three
literal rows per clause play the satisfiability game: orienting a variable
block against a literal costs that literal's row an extra block, which is
affordable only if the row's two target columns sit at the head of their
clause block -- and four distinct columns cannot all do that.

The printed templates this follows contain several arithmetic glitches; the
deviations adopted here are listed in ``DEVIATIONS`` and documented in
REPAIRS.md, and the ``repaired`` variant is validated empirically by
``verify_reduction`` against brute-force oracles on both sides.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .bitmatrix import BinaryMatrix, ColumnOrdering, GapSpec, check_ordering, profile_row
from .gadget import GadgetSpec, build_gadget, gadget_row_count
from .solver import SATISFIED, TIMED_OUT, SearchConfig, SolveOutcome, decide

VARIANT_LITERAL = "literal"
VARIANT_REPAIRED = "repaired"

ROLE_VARIABLE = "variable"
ROLE_SEPARATOR = "separator"
ROLE_CLAUSE = "clause"


class DimacsFormatError(ValueError):
    """Raised when a DIMACS CNF stream cannot be parsed."""


class ConstructionError(RuntimeError):
    """A generated matrix failed its own witness construction.

    This signals a defect in the construction, not in the caller's input.
    """


@dataclass(frozen=True)
class Cnf:
    """A CNF formula; literals are DIMACS-style signed variable indices."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for i, clause in enumerate(self.clauses, start=1):
            if not clause:
                raise ValueError(f"clause {i} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {i}: literal {lit} out of range")


@dataclass(frozen=True)
class ColumnRole:
    kind: str  # ROLE_VARIABLE, ROLE_SEPARATOR, or ROLE_CLAUSE
    index: int  # variable index, separator position, or clause index
    slot: int | None = None  # slot within a variable (1..2) or clause block


@dataclass(frozen=True)
class ReductionParams:
    theorem: int
    k: int
    delta: int
    d: int
    num_vars: int
    num_clauses: int
    variant: str


@dataclass(frozen=True)
class ReductionOutput:
    matrix: BinaryMatrix
    legend: dict[int, ColumnRole]
    cnf: Cnf
    params: ReductionParams

    @property
    def block_width(self) -> int:
        return 4 if self.params.theorem == 3 else 5

    def separator_column(self, t: int) -> int:
        return 2 * self.params.num_vars + t

    def clause_block(self, j: int) -> tuple[int, ...]:
        base = 2 * self.params.num_vars + self.params.d + self.block_width * (j - 1)
        return tuple(base + s for s in range(1, self.block_width + 1))

    def clause_row_bound(self, j: int) -> int:
        """Number of leading rows unaffected by clause blocks after j."""
        g = gadget_row_count(self.params.d, self.params.delta, force=True)
        return g + self.params.num_vars + self.params.num_clauses + 3 * j


@dataclass(frozen=True)
class EquivalenceReport:
    formula_satisfiable: bool | None
    matrix_decision: str
    agree: bool | None
    variant: str
    outcome: SolveOutcome


# Points where the generated rows deviate from the printed construction,
# mirrored in REPAIRS.md (checked by the verification suite).
DEVIATIONS: tuple[tuple[str, str, str], ...] = (
    ("R1", "separator gadget row count is the delta-parameterized closed form, "
           "not the delta=1 value 2d-3", "criteria 1 and 7"),
    ("R2", "the block-count family reads its separator width as max{2k, 5}", "criterion 6"),
    ("R3", "clause blocks of the block-count family use 4 disjoint columns "
           "instead of the printed overlapping 5-index ranges", "criterion 6"),
    ("R4", "a per-clause nesting row is added to the block-count family to "
           "meet its stated row total and order the clause blocks", "criterion 6"),
    ("R5", "literal rows of the block-count family merge the separator tail "
           "into one run from offset 2k-5 through d", "criterion 6"),
    ("R6", "negative literals use the left column of the variable block and "
           "omit the right one", "criteria 6 and 7"),
    ("R7", "the gapped family's repaired variant widens the separator to "
           "max{2k, 2*delta+3} so the rigidity hypothesis holds", "criterion 7"),
    ("R8", "printed index sequences are clamped to the separator range and "
           "emptied when their bounds cross", "criteria 6 and 7"),
    ("R9", "the gapped family emits 4 rows per clause (nesting plus three "
           "literal rows); actual row totals are reported", "criterion 7"),
    ("R10", "truth orientation: variable block ordered (2a-1, 2a) encodes "
            "true, reversed encodes false", "criteria 6 and 7"),
)


# ---------------------------------------------------------------------------
# CNF plumbing.


def parse_dimacs(text: str) -> Cnf:
    num_vars = num_clauses = None
    literals: list[int] = []
    clauses: list[tuple[int, ...]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if num_vars is not None:
                raise DimacsFormatError(f"line {lineno}: duplicate problem line")
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsFormatError(f"line {lineno}: malformed problem line")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsFormatError(f"line {lineno}: malformed problem line") from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsFormatError(f"line {lineno}: negative counts")
            continue
        if num_vars is None:
            raise DimacsFormatError(f"line {lineno}: clause before problem line")
        for token in stripped.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsFormatError(f"line {lineno}: bad literal {token!r}") from None
            if lit == 0:
                if not literals:
                    raise DimacsFormatError(f"line {lineno}: zero-length clause")
                clauses.append(tuple(literals))
                literals.clear()
            else:
                if abs(lit) > num_vars:
                    raise DimacsFormatError(
                        f"line {lineno}: variable {abs(lit)} out of range 1..{num_vars}"
                    )
                literals.append(lit)
    if num_vars is None:
        raise DimacsFormatError("missing problem line")
    if literals:
        raise DimacsFormatError("last clause is missing its terminating 0")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise DimacsFormatError(
            f"header announces {num_clauses} clauses, found {len(clauses)}"
        )
    return Cnf(num_vars, tuple(clauses))


def to_exact3(cnf: Cnf) -> Cnf:
    """Equisatisfiable formula in which every clause has exactly 3 literals.

    Short clauses repeat their first literal; long clauses are split by the
    standard chaining transformation with fresh variables.
    """
    next_var = cnf.num_vars + 1
    clauses: list[tuple[int, int, int]] = []
    for clause in cnf.clauses:
        if len(clause) <= 3:
            padded = list(clause)
            while len(padded) < 3:
                padded.insert(0, clause[0])
            clauses.append(tuple(padded))
            continue
        fresh = next_var
        next_var += 1
        clauses.append((clause[0], clause[1], fresh))
        remaining = list(clause[2:])
        while len(remaining) > 2:
            nxt = next_var
            next_var += 1
            clauses.append((-fresh, remaining.pop(0), nxt))
            fresh = nxt
        clauses.append((-fresh, remaining[0], remaining[1]))
    return Cnf(next_var - 1, tuple(clauses))


def satisfying_assignments(cnf: Cnf, var_cap: int = 20):
    """Yield every satisfying assignment, in binary counting order."""
    if cnf.num_vars > var_cap:
        raise ValueError(f"{cnf.num_vars} variables exceeds the cap of {var_cap}")
    for values in itertools.product((False, True), repeat=cnf.num_vars):
        assignment = {i + 1: values[i] for i in range(cnf.num_vars)}
        if formula_value(cnf, assignment):
            yield assignment


def sat_brute_force(cnf: Cnf, var_cap: int = 20) -> dict[int, bool] | None:
    """Exhaustive SAT oracle; returns the first satisfying assignment found."""
    return next(satisfying_assignments(cnf, var_cap), None)


def formula_value(cnf: Cnf, assignment: Mapping[int, bool]) -> bool:
    return all(
        any(assignment[abs(lit)] == (lit > 0) for lit in clause)
        for clause in cnf.clauses
    )


# ---------------------------------------------------------------------------
# Matrix generators.


def _require_exact3(cnf: Cnf) -> None:
    for i, clause in enumerate(cnf.clauses, start=1):
        if len(clause) != 3:
            raise ValueError(f"clause {i} has {len(clause)} literals; expected exactly 3")


def _legend(n: int, d: int, m: int, width: int) -> dict[int, ColumnRole]:
    legend: dict[int, ColumnRole] = {}
    for i in range(1, n + 1):
        legend[2 * i - 1] = ColumnRole(ROLE_VARIABLE, i, 1)
        legend[2 * i] = ColumnRole(ROLE_VARIABLE, i, 2)
    for t in range(1, d + 1):
        legend[2 * n + t] = ColumnRole(ROLE_SEPARATOR, t)
    for j in range(1, m + 1):
        for s in range(1, width + 1):
            legend[2 * n + d + width * (j - 1) + s] = ColumnRole(ROLE_CLAUSE, j, s)
    return legend


def _variable_row(i: int, n: int, k: int, sep: int) -> tuple[int, ...]:
    # All columns of blocks i..n, then the odd separator offsets 1, 3, ..., 2k-1.
    cols = list(range(2 * i - 1, 2 * n + 1))
    cols.extend(sep + t for t in range(1, 2 * k, 2))
    return tuple(cols)


def _nesting_row(j: int, k: int, d: int, sep: int, blocks: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    # Separator offsets d-2k+2, d-2k+4, ..., d, then every column of blocks 1..j.
    cols = [sep + t for t in range(d - 2 * k + 2, d + 1, 2)]
    for block in blocks[:j]:
        cols.extend(block)
    return tuple(sorted(cols))


def _literal_row(
    lit: int,
    j: int,
    slot: int,
    n: int,
    k: int,
    d: int,
    sep: int,
    blocks: Sequence[tuple[int, ...]],
    tail_start: int,
) -> tuple[int, ...]:
    """One clause-literal row.

    The variable part starts at column 2a for a positive literal on variable
    a, and at 2a-1 (omitting 2a) for a negative one, then runs through the
    rest of the variable region.  The separator part is offset 1, the odd
    offsets below the tail, and the solid tail through offset d.  Clause
    blocks before j are bridged whole; the targets are the block's first
    column and the column for this literal's slot.
    """
    a = abs(lit)
    cols = [2 * a if lit > 0 else 2 * a - 1]
    cols.extend(range(2 * a + 1, 2 * n + 1))
    offsets = {1}
    offsets.update(t for t in range(3, tail_start - 1, 2) if t <= d)
    offsets.update(range(max(1, tail_start), d + 1))
    cols.extend(sep + t for t in sorted(offsets))
    for block in blocks[: j - 1]:
        cols.extend(block)
    cols.append(blocks[j - 1][0])
    cols.append(blocks[j - 1][slot - 1])
    return tuple(sorted(cols))


def _build(
    cnf: Cnf,
    theorem: int,
    k: int,
    delta: int,
    d: int,
    width: int,
    tail_start: int,
    variant: str,
) -> ReductionOutput:
    n, m = cnf.num_vars, len(cnf.clauses)
    sep = 2 * n
    num_columns = 2 * n + d + width * m
    blocks = [
        tuple(2 * n + d + width * (j - 1) + s for s in range(1, width + 1))
        for j in range(1, m + 1)
    ]
    separator_order = tuple(sep + t for t in range(1, d + 1))
    rows: list[tuple[int, ...]] = list(
        build_gadget(GadgetSpec(separator_order, delta, force=True))
    )
    rows.extend(_variable_row(i, n, k, sep) for i in range(1, n + 1))
    rows.extend(_nesting_row(j, k, d, sep, blocks) for j in range(1, m + 1))
    for j, clause in enumerate(cnf.clauses, start=1):
        for slot, lit in enumerate(clause, start=2):
            rows.append(_literal_row(lit, j, slot, n, k, d, sep, blocks, tail_start))
    matrix = BinaryMatrix(num_columns, tuple(rows))
    params = ReductionParams(theorem, k, delta, d, n, m, variant)
    return ReductionOutput(matrix, _legend(n, d, m, width), cnf, params)


def reduce_theorem3(cnf3: Cnf, k: int) -> ReductionOutput:
    """Instance family for the block-count bound with unit gaps (k >= 3, delta = 1)."""
    if k < 3:
        raise ValueError("this family requires k >= 3")
    _require_exact3(cnf3)
    d = max(2 * k, 5)
    return _build(cnf3, 3, k, 1, d, width=4, tail_start=2 * k - 5, variant=VARIANT_REPAIRED)


def reduce_theorem2(
    cnf3: Cnf,
    k: int,
    delta: int,
    variant: str = VARIANT_REPAIRED,
) -> ReductionOutput:
    """Instance family for the jointly gapped bound (k >= 2, delta >= 2).

    The repaired variant widens the separator to max{2k, 2*delta+3} so the
    rigidity gadget's hypothesis holds; the literal variant keeps the printed
    width max{2k, 5} for fidelity experiments.
    """
    if k < 2:
        raise ValueError("this family requires k >= 2")
    if delta < 2:
        raise ValueError("this family requires delta >= 2; use the k >= 3 "
                         "family for delta = 1")
    if variant not in (VARIANT_LITERAL, VARIANT_REPAIRED):
        raise ValueError(f"unknown variant {variant!r}")
    _require_exact3(cnf3)
    d = max(2 * k, 5) if variant == VARIANT_LITERAL else max(2 * k, 2 * delta + 3)
    return _build(cnf3, 2, k, delta, d, width=5, tail_start=2 * k - 3, variant=variant)


# ---------------------------------------------------------------------------
# Witness construction and the two-sided equivalence check.


def witness_from_assignment(
    output: ReductionOutput,
    assignment: Mapping[int, bool],
) -> ColumnOrdering:
    """Build a valid ordering from a satisfying assignment.

    Layout: variable blocks in index order, each oriented by its truth value
    (true puts the odd column first), the separator in gadget order, then
    clause blocks in index order, each internally arranged by exhaustive
    search over its few permutations.
    """
    cnf = output.cnf
    params = output.params
    if not formula_value(cnf, assignment):
        raise ValueError("assignment does not satisfy the recorded formula")
    forward: list[int] = []
    for i in range(1, params.num_vars + 1):
        if assignment[i]:
            forward.extend((2 * i - 1, 2 * i))
        else:
            forward.extend((2 * i, 2 * i - 1))
    forward.extend(output.separator_column(t) for t in range(1, params.d + 1))
    spec = GapSpec(params.k, params.delta)
    rows = output.matrix.rows
    for j in range(1, params.num_clauses + 1):
        block = output.clause_block(j)
        rest = [c for jj in range(j + 1, params.num_clauses + 1)
                for c in output.clause_block(jj)]
        bound = output.clause_row_bound(j)
        chosen = None
        for perm in itertools.permutations(block):
            candidate = ColumnOrdering(tuple(forward) + perm + tuple(rest))
            if _rows_ok(rows[:bound], candidate, spec):
                chosen = perm
                break
        if chosen is None:
            raise ConstructionError(
                f"no internal arrangement of clause block {j} satisfies its rows"
            )
        forward.extend(chosen)
    ordering = ColumnOrdering(tuple(forward))
    if not check_ordering(output.matrix, ordering, spec).ok:
        raise ConstructionError("assembled witness fails the full matrix check")
    return ordering


def _rows_ok(rows: Sequence[tuple[int, ...]], ordering: ColumnOrdering, spec: GapSpec) -> bool:
    for row in rows:
        profile = profile_row(row, ordering)
        if spec.k is not None and profile.block_count > spec.k:
            return False
        if spec.delta is not None and profile.gaps and max(profile.gaps) > spec.delta:
            return False
    return True


def verify_reduction(
    cnf: Cnf,
    theorem: int,
    k: int,
    delta: int | None = None,
    config: SearchConfig | None = None,
    variant: str = VARIANT_REPAIRED,
) -> EquivalenceReport:
    """Check formula satisfiability against the generated matrix's decision.

    Runs the exhaustive SAT oracle on one side and the complete ordering
    search on the other; for satisfiable formulas the explicit witness
    construction is validated end to end.  A timed-out search leaves the
    agreement unknown.
    """
    cnf3 = to_exact3(cnf)
    if theorem == 3:
        output = reduce_theorem3(cnf3, k)
    elif theorem == 2:
        if delta is None:
            raise ValueError("the gapped family needs a delta")
        output = reduce_theorem2(cnf3, k, delta, variant)
    else:
        raise ValueError("theorem must be 2 or 3")
    outcome = decide(output.matrix, GapSpec(k, output.params.delta), config)
    # Some satisfying assignments may not admit the canonical layout (the
    # gapped family tolerates at most one falsified occurrence per clause),
    # so search them all; only a formula with no witness-admitting
    # assignment at all is a construction discrepancy.
    formula_satisfiable = False
    witness_error: ConstructionError | None = None
    for assignment in satisfying_assignments(cnf3):
        formula_satisfiable = True
        try:
            witness_from_assignment(output, assignment)
            witness_error = None
            break
        except ConstructionError as exc:
            witness_error = exc
    if witness_error is not None:
        raise witness_error
    if outcome.status == TIMED_OUT:
        agree = None
    else:
        agree = formula_satisfiable == (outcome.status == SATISFIED)
    return EquivalenceReport(
        formula_satisfiable, outcome.status, agree, output.params.variant, outcome
    )
