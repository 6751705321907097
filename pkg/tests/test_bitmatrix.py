import random

import pytest

from gapc1p import (
    DENSE,
    GAP_TOO_LARGE,
    SPARSE,
    TOO_MANY_BLOCKS,
    BinaryMatrix,
    ColumnOrdering,
    GapSpec,
    MatrixFormatError,
    apply_ordering,
    check_ordering,
    parse_matrix,
    parse_ordering,
    profile_row,
    serialize_matrix,
    serialize_ordering,
)


def random_matrix(rng, max_cols=6, max_rows=6, density=0.4):
    n = rng.randint(1, max_cols)
    rows = tuple(
        tuple(c for c in range(1, n + 1) if rng.random() < density)
        for _ in range(rng.randint(0, max_rows))
    )
    return BinaryMatrix(n, rows)


def random_ordering(rng, n):
    forward = list(range(1, n + 1))
    rng.shuffle(forward)
    return ColumnOrdering(tuple(forward))


class TestParsing:
    def test_sparse_and_dense_parse_to_equal_matrices(self):
        sparse = parse_matrix("2 3\n1 2\n3\n", SPARSE)
        dense = parse_matrix("2 3\n110\n001\n", DENSE)
        assert sparse == dense
        assert sparse.num_columns == 3
        assert sparse.rows == ((1, 2), (3,))

    def test_index_out_of_range(self):
        with pytest.raises(MatrixFormatError, match="exceeds 2"):
            parse_matrix("1 2\n3\n")

    def test_duplicate_index(self):
        with pytest.raises(MatrixFormatError, match="duplicate"):
            parse_matrix("1 3\n2 2\n")

    def test_malformed_header(self):
        with pytest.raises(MatrixFormatError, match="line 1"):
            parse_matrix("3\n")

    def test_dense_rejects_other_characters(self):
        with pytest.raises(MatrixFormatError, match="non-0/1"):
            parse_matrix("1 3\n1x0\n", DENSE)

    def test_error_reports_line_number(self):
        with pytest.raises(MatrixFormatError, match="line 3"):
            parse_matrix("2 2\n1\n7\n")

    def test_empty_row_line(self):
        m = parse_matrix("2 2\n\n1 2\n")
        assert m.rows == ((), (1, 2))

    def test_round_trips(self):
        rng = random.Random(7)
        for _ in range(50):
            m = random_matrix(rng)
            for fmt in (SPARSE, DENSE):
                assert parse_matrix(serialize_matrix(m, fmt), fmt) == m

    def test_serialize_examples(self):
        m = BinaryMatrix(3, ((1, 2), (3,)))
        assert serialize_matrix(m, SPARSE) == "2 3\n1 2\n3\n"
        assert serialize_matrix(m, DENSE) == "2 3\n110\n001\n"
        empty_row = BinaryMatrix(2, ((),))
        assert serialize_matrix(empty_row, SPARSE) == "1 2\n\n"

    def test_ordering_file_round_trip(self):
        o = ColumnOrdering((2, 3, 1))
        assert parse_ordering(serialize_ordering(o), 3) == o
        with pytest.raises(MatrixFormatError):
            parse_ordering("1 2 2", 3)
        with pytest.raises(MatrixFormatError):
            parse_ordering("1 2", 3)


class TestProfile:
    def test_spread_row_identity(self):
        p = profile_row((1, 5, 8), ColumnOrdering.identity(8))
        assert p.block_count == 3
        assert p.gaps == (3, 2)

    def test_all_ones_single_block(self):
        rng = random.Random(1)
        for n in (1, 4, 7):
            p = profile_row(tuple(range(1, n + 1)), random_ordering(rng, n))
            assert p.block_count == 1
            assert p.gaps == ()

    def test_reversal_mirrors_gaps(self):
        p = profile_row((1, 5, 8), ColumnOrdering.identity(8).reverse())
        assert p.block_count == 3
        assert p.gaps == (2, 3)

    def test_empty_row(self):
        p = profile_row((), ColumnOrdering.identity(3))
        assert p.block_count == 0 and p.gaps == ()

    def test_out_of_universe_column(self):
        with pytest.raises(ValueError):
            profile_row((4,), ColumnOrdering.identity(3))

    def test_gap_accounting(self):
        # Block widths plus gaps plus boundary zero runs cover every position.
        rng = random.Random(42)
        for _ in range(200):
            m = random_matrix(rng)
            o = random_ordering(rng, m.num_columns)
            for row in m.rows:
                if not row:
                    continue
                positions = sorted(o.inverse[c - 1] for c in row)
                p = profile_row(row, o)
                widths = len(row)  # total ones == sum of block widths
                leading = positions[0] - 1
                trailing = m.num_columns - positions[-1]
                assert widths + sum(p.gaps) + leading + trailing == m.num_columns


class TestCheck:
    def test_spec_examples(self):
        m = BinaryMatrix(8, ((1, 5, 8),))
        identity = ColumnOrdering.identity(8)
        assert check_ordering(m, identity, GapSpec(3, 3)).ok
        report = check_ordering(m, identity, GapSpec(2, 3))
        assert not report.ok
        assert report.first_violation.row_index == 1
        assert report.first_violation.kind == TOO_MANY_BLOCKS

    def test_gap_violation_kind(self):
        m = BinaryMatrix(8, ((1, 5),))
        report = check_ordering(m, ColumnOrdering.identity(8), GapSpec(2, 2))
        assert not report.ok
        assert report.first_violation.kind == GAP_TOO_LARGE

    def test_contiguous_rows_pass_strict_spec(self):
        m = BinaryMatrix(3, ((1, 2), (2, 3)))
        assert check_ordering(m, ColumnOrdering.identity(3), GapSpec(1, 0)).ok

    def test_lowest_violating_row_reported(self):
        m = BinaryMatrix(3, ((1, 2), (1, 3), (1, 3)))
        report = check_ordering(m, ColumnOrdering.identity(3), GapSpec(1, 0))
        assert report.first_violation.row_index == 2

    def test_universe_mismatch(self):
        m = BinaryMatrix(3, ((1, 2),))
        with pytest.raises(ValueError):
            check_ordering(m, ColumnOrdering.identity(4), GapSpec(1, 0))

    def test_reversal_invariance(self):
        rng = random.Random(11)
        for _ in range(200):
            m = random_matrix(rng)
            o = random_ordering(rng, m.num_columns)
            for spec in (GapSpec(1, 0), GapSpec(2, 1), GapSpec(3, 2), GapSpec(None, 2)):
                assert (
                    check_ordering(m, o, spec).ok
                    == check_ordering(m, o.reverse(), spec).ok
                )

    def test_monotonicity(self):
        rng = random.Random(12)
        wider = [
            (GapSpec(1, 0), GapSpec(2, 0)),
            (GapSpec(1, 0), GapSpec(1, 1)),
            (GapSpec(2, 1), GapSpec(3, 2)),
            (GapSpec(2, 1), GapSpec(None, 1)),
            (GapSpec(2, 1), GapSpec(2, None)),
        ]
        for _ in range(150):
            m = random_matrix(rng)
            o = random_ordering(rng, m.num_columns)
            for tight, loose in wider:
                if check_ordering(m, o, tight).ok:
                    assert check_ordering(m, o, loose).ok

    def test_rows_with_at_most_one_one_always_pass(self):
        rng = random.Random(13)
        for _ in range(50):
            n = rng.randint(1, 6)
            rows = tuple((rng.randint(1, n),) for _ in range(3)) + ((),)
            m = BinaryMatrix(n, rows)
            o = random_ordering(rng, n)
            assert check_ordering(m, o, GapSpec(1, 0)).ok

    def test_delta_zero_collapse(self):
        rng = random.Random(14)
        for _ in range(150):
            m = random_matrix(rng)
            o = random_ordering(rng, m.num_columns)
            base = check_ordering(m, o, GapSpec(1, 0)).ok
            for k in (2, 3, None):
                assert check_ordering(m, o, GapSpec(k, 0)).ok == base


class TestApply:
    def test_identity_is_noop(self):
        m = BinaryMatrix(3, ((1, 3), (2,)))
        assert apply_ordering(m, ColumnOrdering.identity(3)) == m

    def test_mirror(self):
        m = BinaryMatrix(3, ((1, 3),))
        assert apply_ordering(m, ColumnOrdering((3, 2, 1))) == m

    def test_position_equation(self):
        # The permuted row under identity profiles like the original under
        # the ordering.
        rng = random.Random(15)
        for _ in range(200):
            m = random_matrix(rng)
            o = random_ordering(rng, m.num_columns)
            permuted = apply_ordering(m, o)
            identity = ColumnOrdering.identity(m.num_columns)
            for row, prow in zip(m.rows, permuted.rows):
                assert profile_row(prow, identity) == profile_row(row, o)

    def test_column_lands_at_inverse_position(self):
        o = ColumnOrdering((2, 3, 1))
        m = BinaryMatrix(3, ((1, 2),))
        permuted = apply_ordering(m, o)
        assert permuted.rows[0] == tuple(sorted((o.inverse[0], o.inverse[1])))


class TestTypes:
    def test_matrix_invariants(self):
        with pytest.raises(ValueError):
            BinaryMatrix(0, ())
        with pytest.raises(ValueError):
            BinaryMatrix(3, ((2, 1),))
        with pytest.raises(ValueError):
            BinaryMatrix(3, ((0, 1),))
        with pytest.raises(ValueError):
            BinaryMatrix.from_rows(3, [(1, 1)])

    def test_ordering_is_bijection(self):
        with pytest.raises(ValueError):
            ColumnOrdering((1, 1, 3))
        o = ColumnOrdering((3, 1, 2))
        assert [o.forward[p - 1] for p in o.inverse] == [1, 2, 3]

    def test_gap_spec_bounds(self):
        with pytest.raises(ValueError):
            GapSpec(0, 1)
        with pytest.raises(ValueError):
            GapSpec(1, -1)
        assert GapSpec(None, None).block_limit(5) == 5
        assert str(GapSpec(2, None)) == "(2,inf)"
