import json

import pytest

from gapc1p import GapSpec, check_ordering, parse_matrix, parse_ordering
from gapc1p.cli import main

TRIPLE_TEXT = "3 3\n1 2\n2 3\n1 3\n"
CHAIN_TEXT = "2 3\n1 2\n2 3\n"


@pytest.fixture
def triple(tmp_path):
    path = tmp_path / "triple.txt"
    path.write_text(TRIPLE_TEXT)
    return path


@pytest.fixture
def chain(tmp_path):
    path = tmp_path / "chain.txt"
    path.write_text(CHAIN_TEXT)
    return path


class TestSolve:
    def test_satisfiable_exits_zero_and_prints_witness(self, chain, capsys):
        code = main(["solve", "--matrix", str(chain), "--k", "1", "--delta", "0"])
        assert code == 0
        out = capsys.readouterr().out
        ordering = parse_ordering(out, 3)
        matrix = parse_matrix(CHAIN_TEXT)
        assert check_ordering(matrix, ordering, GapSpec(1, 0)).ok

    def test_triple_exhausts_with_exit_one(self, triple):
        assert main(["solve", "--matrix", str(triple), "--k", "1", "--delta", "0"]) == 1

    def test_triple_satisfiable_with_gap(self, triple):
        assert main(["solve", "--matrix", str(triple), "--k", "2", "--delta", "1"]) == 0

    def test_node_limit_gives_undecided_exit(self, triple):
        code = main(["solve", "--matrix", str(triple), "--k", "2", "--delta", "0",
                     "--nodes", "1"])
        assert code == 2

    def test_exit_codes_distinguish_exhausted_from_undecided(self, triple):
        # (2,0) decides like (1,0) but runs the search, not the fast path.
        exhausted = main(["solve", "--matrix", str(triple), "--k", "2", "--delta", "0"])
        undecided = main(["solve", "--matrix", str(triple), "--k", "2", "--delta", "0",
                          "--nodes", "1"])
        assert exhausted == 1 and undecided == 2

    def test_json_witness_reparses_as_ordering_file(self, chain, capsys, tmp_path):
        code = main(["solve", "--matrix", str(chain), "--k", "2", "--delta", "1", "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "satisfied"
        order_path = tmp_path / "order.txt"
        order_path.write_text(" ".join(str(c) for c in payload["witness"]) + "\n")
        assert main(["check", "--matrix", str(chain), "--order", str(order_path),
                     "--k", "2", "--delta", "1"]) == 0

    def test_brute_force_flag(self, triple):
        assert main(["solve", "--matrix", str(triple), "--k", "1", "--delta", "0",
                     "--brute-force"]) == 1

    def test_inf_bounds_accepted(self, triple):
        # Unlimited blocks cannot beat a zero gap bound (delta=0 collapse),
        # while an unlimited gap bound with two blocks can.
        assert main(["solve", "--matrix", str(triple), "--k", "inf", "--delta", "0"]) == 1
        assert main(["solve", "--matrix", str(triple), "--k", "2", "--delta", "inf"]) == 0

    def test_missing_file_is_usage_error(self, tmp_path):
        assert main(["solve", "--matrix", str(tmp_path / "nope.txt"),
                     "--k", "1", "--delta", "0"]) == 3


class TestCheck:
    def test_check_on_solve_witness_round_trip(self, triple, tmp_path, capsys):
        code = main(["solve", "--matrix", str(triple), "--k", "2", "--delta", "1"])
        assert code == 0
        witness = capsys.readouterr().out
        order_path = tmp_path / "w.txt"
        order_path.write_text(witness)
        assert main(["check", "--matrix", str(triple), "--order", str(order_path),
                     "--k", "2", "--delta", "1"]) == 0

    def test_violation_exits_one_with_detail(self, triple, tmp_path, capsys):
        order_path = tmp_path / "id.txt"
        order_path.write_text("1 2 3\n")
        code = main(["check", "--matrix", str(triple), "--order", str(order_path),
                     "--k", "1", "--delta", "0"])
        assert code == 1
        assert "violation" in capsys.readouterr().out

    def test_json_violation_payload(self, triple, tmp_path, capsys):
        order_path = tmp_path / "id.txt"
        order_path.write_text("1 2 3\n")
        main(["check", "--matrix", str(triple), "--order", str(order_path),
              "--k", "1", "--delta", "0", "--json"])
        payload = json.loads(capsys.readouterr().out)
        assert payload["ok"] is False
        assert payload["violation"]["row"] == 3


class TestGadget:
    def test_emits_parseable_sparse_matrix(self, tmp_path):
        out = tmp_path / "g.txt"
        assert main(["gadget", "--n", "5", "--delta", "1", "-o", str(out)]) == 0
        matrix = parse_matrix(out.read_text())
        assert matrix.num_rows == 7
        assert matrix.num_columns == 5

    def test_custom_target_columns(self, tmp_path, capsys):
        assert main(["gadget", "--n", "3", "--delta", "0", "--columns", "4,2,6"]) == 0
        matrix = parse_matrix(capsys.readouterr().out)
        assert matrix.num_columns == 6
        assert set(matrix.rows) == {(2, 4), (2, 6)}

    def test_undersized_needs_force(self, capsys):
        assert main(["gadget", "--n", "4", "--delta", "1"]) == 3
        assert main(["gadget", "--n", "4", "--delta", "1", "--force"]) == 0

    def test_verify_mode(self, capsys):
        code = main(["gadget", "--n", "5", "--delta", "1", "--k", "2", "--verify"])
        assert code == 0
        assert "valid_count=2" in capsys.readouterr().out


class TestReduce:
    def write_cnf(self, tmp_path, text):
        path = tmp_path / "f.cnf"
        path.write_text(text)
        return path

    def test_theorem3_instance_with_legend(self, tmp_path):
        cnf = self.write_cnf(tmp_path, "p cnf 1 1\n1 1 1 0\n")
        out = tmp_path / "m.txt"
        legend = tmp_path / "legend.json"
        code = main(["reduce", "--cnf", str(cnf), "--theorem", "3", "--k", "3",
                     "-o", str(out), "--legend", str(legend)])
        assert code == 0
        matrix = parse_matrix(out.read_text())
        assert matrix.num_columns == 12 and matrix.num_rows == 14
        payload = json.loads(legend.read_text())
        assert payload["d"] == 6
        assert len(payload["columns"]) == 12
        roles = {c["column"]: c["role"] for c in payload["columns"]}
        assert roles[1] == "variable" and roles[3] == "separator" and roles[12] == "clause"

    def test_theorem2_variants_differ_in_width(self, tmp_path, capsys):
        cnf = self.write_cnf(tmp_path, "p cnf 1 1\n1 1 1 0\n")
        assert main(["reduce", "--cnf", str(cnf), "--theorem", "2", "--k", "2",
                     "--delta", "2"]) == 0
        repaired = parse_matrix(capsys.readouterr().out)
        assert main(["reduce", "--cnf", str(cnf), "--theorem", "2", "--k", "2",
                     "--delta", "2", "--variant", "literal"]) == 0
        literal = parse_matrix(capsys.readouterr().out)
        assert repaired.num_columns == 14
        assert literal.num_columns == 12

    def test_theorem2_requires_delta(self, tmp_path):
        cnf = self.write_cnf(tmp_path, "p cnf 1 1\n1 1 1 0\n")
        assert main(["reduce", "--cnf", str(cnf), "--theorem", "2", "--k", "2"]) == 3

    def test_generated_instance_solves_end_to_end(self, tmp_path, capsys):
        cnf = self.write_cnf(tmp_path, "p cnf 1 1\n1 1 1 0\n")
        out = tmp_path / "m.txt"
        assert main(["reduce", "--cnf", str(cnf), "--theorem", "3", "--k", "3",
                     "-o", str(out)]) == 0
        assert main(["solve", "--matrix", str(out), "--k", "3", "--delta", "1"]) == 0


class TestVerify:
    def test_single_gadget_case(self, capsys):
        code = main(["verify", "--suite", "gadget", "--n", "5", "--delta", "1", "--k", "2"])
        assert code == 0
        assert "valid_count = 2" in capsys.readouterr().out

    def test_gadget_suite_json(self, capsys):
        code = main(["verify", "--suite", "gadget", "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["ok"] is True
        assert [c["id"] for c in payload["cases"]] == ["C1", "C2", "C3"]
        assert all(c["status"] == "pass" for c in payload["cases"])

    def test_single_case_flags_require_gadget_suite(self):
        assert main(["verify", "--suite", "solver", "--n", "5", "--delta", "1"]) == 3


class TestUsage:
    def test_unknown_subcommand(self):
        assert main(["frobnicate"]) == 3

    def test_bad_bound_value(self, triple):
        assert main(["solve", "--matrix", str(triple), "--k", "zero", "--delta", "0"]) == 3

    def test_malformed_matrix_file(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("1 2\n3\n")
        assert main(["solve", "--matrix", str(bad), "--k", "1", "--delta", "0"]) == 3
