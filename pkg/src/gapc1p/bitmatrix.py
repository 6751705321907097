"""Binary matrices, column orderings, and block/gap row profiles.

Columns are numbered 1..num_columns throughout.  A row is stored as a
strictly increasing tuple of the column indices that carry a 1 entry
("row support").  Under a column ordering, a *block* is a maximal run of
consecutive positions holding ones, and a *gap* is a run of zeros strictly
between two blocks of the same row; leading and trailing zero runs are not
gaps.  A matrix satisfies a :class:`GapSpec` ``(k, delta)`` under an
ordering when every row has at most ``k`` blocks and no gap larger than
``delta``.

Everything in this module is an immutable value; the operations are pure
functions and safe to use from concurrent tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

SPARSE = "sparse"
DENSE = "dense"

TOO_MANY_BLOCKS = "too_many_blocks"
GAP_TOO_LARGE = "gap_too_large"


class MatrixFormatError(ValueError):
    """Raised when a matrix or ordering file cannot be parsed."""


@dataclass(frozen=True)
class BinaryMatrix:
    """A binary matrix as an ordered sequence of row supports.

    Duplicate rows and empty rows are legal; duplicates are preserved.
    """

    num_columns: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.num_columns < 1:
            raise ValueError("num_columns must be positive")
        for i, row in enumerate(self.rows, start=1):
            for a, b in zip(row, row[1:]):
                if a >= b:
                    raise ValueError(f"row {i} is not strictly increasing")
            if row and (row[0] < 1 or row[-1] > self.num_columns):
                raise ValueError(
                    f"row {i} has an index outside 1..{self.num_columns}"
                )

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, num_columns: int, rows: Iterable[Iterable[int]]) -> "BinaryMatrix":
        """Build a matrix, sorting each row and rejecting duplicate indices."""
        normalized = []
        for i, row in enumerate(rows, start=1):
            support = tuple(sorted(row))
            if len(set(support)) != len(support):
                raise ValueError(f"row {i} contains a duplicate column index")
            normalized.append(support)
        return cls(num_columns, tuple(normalized))


@dataclass(frozen=True)
class ColumnOrdering:
    """A permutation of the columns: ``forward[p-1]`` is the column at position p."""

    forward: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.forward)
        if sorted(self.forward) != list(range(1, n + 1)):
            raise ValueError("forward map is not a permutation of 1..n")

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        """``inverse[c-1]`` is the (1-based) position of column c."""
        inv = [0] * len(self.forward)
        for pos, col in enumerate(self.forward, start=1):
            inv[col - 1] = pos
        return tuple(inv)

    @property
    def num_columns(self) -> int:
        return len(self.forward)

    @classmethod
    def identity(cls, n: int) -> "ColumnOrdering":
        return cls(tuple(range(1, n + 1)))

    def reverse(self) -> "ColumnOrdering":
        return ColumnOrdering(tuple(reversed(self.forward)))


@dataclass(frozen=True)
class GapSpec:
    """The (k, delta) constraint pair; ``None`` means the bound is absent."""

    k: int | None
    delta: int | None

    def __post_init__(self) -> None:
        if self.k is not None and self.k < 1:
            raise ValueError("finite k must be >= 1")
        if self.delta is not None and self.delta < 0:
            raise ValueError("finite delta must be >= 0")

    def block_limit(self, num_columns: int) -> int:
        """Effective block bound: a row never has more blocks than columns."""
        return self.k if self.k is not None else num_columns

    def gap_limit(self, num_columns: int) -> int:
        return self.delta if self.delta is not None else num_columns

    def __str__(self) -> str:
        k = "inf" if self.k is None else str(self.k)
        d = "inf" if self.delta is None else str(self.delta)
        return f"({k},{d})"


@dataclass(frozen=True)
class RowProfile:
    block_count: int
    gaps: tuple[int, ...]


@dataclass(frozen=True)
class Violation:
    row_index: int  # 1-based
    profile: RowProfile
    kind: str  # TOO_MANY_BLOCKS or GAP_TOO_LARGE


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    first_violation: Violation | None = None


def profile_row(row: Sequence[int], ordering: ColumnOrdering) -> RowProfile:
    """Block count and gap sizes of one row under an ordering.

    Positions are ``ordering.inverse[c-1]`` for each column c of the row;
    leading and trailing zero runs do not count as gaps.
    """
    n = ordering.num_columns
    inverse = ordering.inverse
    positions = []
    for c in row:
        if not 1 <= c <= n:
            raise ValueError(f"column {c} outside universe 1..{n}")
        positions.append(inverse[c - 1])
    positions.sort()
    if not positions:
        return RowProfile(0, ())
    blocks = 1
    gaps = []
    for prev, cur in zip(positions, positions[1:]):
        if cur > prev + 1:
            blocks += 1
            gaps.append(cur - prev - 1)
    return RowProfile(blocks, tuple(gaps))


def check_ordering(matrix: BinaryMatrix, ordering: ColumnOrdering, spec: GapSpec) -> CheckReport:
    """Check every row against the spec; report the lowest-index violation.

    If a row breaks both bounds, the block-count violation is the one
    reported.
    """
    if ordering.num_columns != matrix.num_columns:
        raise ValueError(
            f"ordering over {ordering.num_columns} columns does not match "
            f"matrix with {matrix.num_columns}"
        )
    for i, row in enumerate(matrix.rows, start=1):
        profile = profile_row(row, ordering)
        if spec.k is not None and profile.block_count > spec.k:
            return CheckReport(False, Violation(i, profile, TOO_MANY_BLOCKS))
        if spec.delta is not None and profile.gaps and max(profile.gaps) > spec.delta:
            return CheckReport(False, Violation(i, profile, GAP_TOO_LARGE))
    return CheckReport(True, None)


def apply_ordering(matrix: BinaryMatrix, ordering: ColumnOrdering) -> BinaryMatrix:
    """Permute the matrix columns: input column c moves to position inverse[c]."""
    if ordering.num_columns != matrix.num_columns:
        raise ValueError("ordering universe does not match matrix")
    inverse = ordering.inverse
    rows = tuple(tuple(sorted(inverse[c - 1] for c in row)) for row in matrix.rows)
    return BinaryMatrix(matrix.num_columns, rows)


# ---------------------------------------------------------------------------
# File formats.
#
# Sparse: line 1 is "<num_rows> <num_cols>", then one line per row with the
# space-separated 1-based indices of the ones (an empty line is an empty
# row).  Dense: same header, then num_rows lines of exactly num_cols
# characters from {0,1}.  Ordering file: one line of num_cols space-separated
# column indices (the forward map).


def _parse_header(line: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise MatrixFormatError(f"line 1: malformed header {line!r}")
    try:
        num_rows, num_cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise MatrixFormatError(f"line 1: malformed header {line!r}") from None
    if num_rows < 0 or num_cols < 1:
        raise MatrixFormatError(f"line 1: invalid dimensions {num_rows} x {num_cols}")
    return num_rows, num_cols


def parse_matrix(text: str, fmt: str = SPARSE) -> BinaryMatrix:
    if fmt not in (SPARSE, DENSE):
        raise ValueError(f"unknown matrix format {fmt!r}")
    lines = text.splitlines()
    if not lines:
        raise MatrixFormatError("line 1: missing header")
    num_rows, num_cols = _parse_header(lines[0])
    if len(lines) != num_rows + 1:
        raise MatrixFormatError(
            f"expected {num_rows} row lines after the header, found {len(lines) - 1}"
        )
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        if fmt == SPARSE:
            support = []
            for token in line.split():
                try:
                    c = int(token)
                except ValueError:
                    raise MatrixFormatError(f"line {i}: bad index {token!r}") from None
                if not 1 <= c <= num_cols:
                    raise MatrixFormatError(
                        f"line {i}: index {c} exceeds {num_cols} columns"
                    )
                support.append(c)
            if len(set(support)) != len(support):
                raise MatrixFormatError(f"line {i}: duplicate index in row")
            rows.append(tuple(sorted(support)))
        else:
            entry = line.strip()
            if len(entry) != num_cols:
                raise MatrixFormatError(
                    f"line {i}: expected {num_cols} characters, found {len(entry)}"
                )
            bad = set(entry) - {"0", "1"}
            if bad:
                raise MatrixFormatError(
                    f"line {i}: non-0/1 character {sorted(bad)[0]!r}"
                )
            rows.append(tuple(p + 1 for p, ch in enumerate(entry) if ch == "1"))
    return BinaryMatrix(num_cols, tuple(rows))


def serialize_matrix(matrix: BinaryMatrix, fmt: str = SPARSE) -> str:
    if fmt not in (SPARSE, DENSE):
        raise ValueError(f"unknown matrix format {fmt!r}")
    out = [f"{matrix.num_rows} {matrix.num_columns}"]
    if fmt == SPARSE:
        for row in matrix.rows:
            out.append(" ".join(str(c) for c in row))
    else:
        for row in matrix.rows:
            support = set(row)
            out.append(
                "".join("1" if c in support else "0" for c in range(1, matrix.num_columns + 1))
            )
    return "\n".join(out) + "\n"


def parse_ordering(text: str, num_columns: int) -> ColumnOrdering:
    tokens = text.split()
    if len(tokens) != num_columns:
        raise MatrixFormatError(
            f"ordering has {len(tokens)} entries, expected {num_columns}"
        )
    try:
        forward = tuple(int(t) for t in tokens)
    except ValueError:
        raise MatrixFormatError("ordering contains a non-integer entry") from None
    try:
        return ColumnOrdering(forward)
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from None


def serialize_ordering(ordering: ColumnOrdering) -> str:
    return " ".join(str(c) for c in ordering.forward) + "\n"
