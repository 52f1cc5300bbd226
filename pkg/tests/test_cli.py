"""
Tests for the qheine command line: exit codes and machine-readable output.
"""

import json

import pytest

from src.cli.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, main
from src.contiguous import generator, three_term
from src.algebra.paramgroup import A, B, ONE
from src.models.codec import parse_relation, render_operator
from src.models.schemas import RelationModel


def run_json(capsys, *argv):
    """Run the CLI with --format json and return (exit code, parsed stdout)."""
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.mark.unit
class TestParser:
    """Argument parsing."""

    def test_subcommands(self):
        parser = build_parser()
        args = parser.parse_args(["relation", "A", "1", "Z", "--truncation", "6"])
        assert args.command == "relation"
        assert args.shifts == ["A", "1", "Z"]
        assert args.truncation == 6

    def test_missing_command(self):
        assert main([]) == EXIT_USAGE

    def test_wrong_arity(self):
        assert main(["relation", "A", "Z"]) == EXIT_USAGE

    def test_help(self):
        assert main(["--help"]) == EXIT_OK

    def test_eval_needs_every_coordinate(self):
        assert main(["eval", "--a", "0.1", "--b", "0.2"]) == EXIT_USAGE


@pytest.mark.integration
class TestRelationCommand:
    """qheine relation."""

    def test_text_output(self, capsys):
        assert main(["relation", "A", "1", "Z", "--format", "text", "--truncation", "8"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "(-1 * a + 1) * A + -1 + a * Z = 0" in out

    def test_json_round_trip(self, capsys):
        code, payload = run_json(capsys, "relation", "A", "B", "1", "--truncation", "8")
        assert code == EXIT_OK
        assert payload["verified"] is True
        rel = parse_relation(RelationModel.model_validate(payload["relation"]))
        assert rel == three_term(A, B, ONE)

    def test_latex_output(self, capsys):
        assert main(["relation", "A", "1", "Z", "--format", "latex"]) == EXIT_OK
        assert "\\begin{equation}" in capsys.readouterr().out

    def test_repeated_shift(self, capsys):
        assert main(["relation", "A", "A", "Z"]) == EXIT_USAGE
        assert capsys.readouterr().out == ""

    def test_unknown_shift_symbol(self):
        assert main(["relation", "X", "1", "Z"]) == EXIT_USAGE


@pytest.mark.integration
class TestOtherCommands:
    """verify-generators, membership, group, verify-symmetry and eval."""

    def test_verify_generators(self, capsys):
        code, payload = run_json(capsys, "verify-generators", "--truncation", "4")
        assert code == EXIT_OK
        assert [c["name"] for c in payload["checks"]] == ["P_a", "P_b", "P_c", "Q_a", "Q_b", "Q_c", "R_z"]
        assert all(c["passed"] for c in payload["checks"])

    def test_membership_from_file(self, capsys, tmp_path):
        path = tmp_path / "operator.json"
        path.write_text(render_operator(generator("P_a")).model_dump_json())
        code, payload = run_json(capsys, "membership", str(path))
        assert code == EXIT_OK
        assert payload["member"] is True
        assert payload["residual_length"] == 0

    def test_membership_non_member_is_not_a_failure(self, capsys, tmp_path):
        path = tmp_path / "operator.json"
        path.write_text(json.dumps({"terms": [{"shift": [1, 0, 0, 0], "coeff": "1"}]}))
        code, payload = run_json(capsys, "membership", str(path))
        assert code == EXIT_OK
        assert payload["member"] is False

    def test_membership_missing_file(self, tmp_path):
        assert main(["membership", str(tmp_path / "absent.json")]) == EXIT_USAGE

    def test_membership_bad_document(self, tmp_path):
        path = tmp_path / "operator.json"
        path.write_text("[1, 2")
        assert main(["membership", str(path)]) == EXIT_USAGE

    def test_group(self, capsys):
        code, payload = run_json(capsys, "group")
        assert code == EXIT_OK
        assert payload["order"] == 12
        assert len(payload["elements"]) == 12

    @pytest.mark.numeric
    def test_verify_symmetry(self, capsys):
        code, payload = run_json(capsys, "verify-symmetry", "--word", "t_h", "--samples", "4")
        assert code == EXIT_OK
        assert [s["word"] for s in payload["symmetries"]] == ["t_h"]

    def test_verify_symmetry_unknown_word(self):
        assert main(["verify-symmetry", "--word", "t_x", "--samples", "2"]) == EXIT_USAGE

    @pytest.mark.numeric
    def test_eval(self, capsys):
        code, payload = run_json(
            capsys, "eval", "--a", "1", "--b", "0.2", "--c", "0.7", "--z", "0.4", "--q", "0.5",
        )
        assert code == EXIT_OK
        assert payload["value"].startswith("(1.0")

    def test_eval_outside_disk(self):
        code = main(["eval", "--a", "0.1", "--b", "0.2", "--c", "0.7", "--z", "1.5", "--q", "0.5"])
        assert code == EXIT_FAILED

    def test_eval_bad_precision(self):
        code = main(["eval", "--a", "0.1", "--b", "0.2", "--c", "0.7", "--z", "0.5", "--q", "0.5",
                     "--precision", "1"])
        assert code == EXIT_USAGE

    def test_json_error_report(self, capsys):
        code = main(["eval", "--a", "0.1", "--b", "0.2", "--c", "0.7", "--z", "1.5", "--q", "0.5",
                     "--format", "json"])
        assert code == EXIT_FAILED
        # engine logs precede the report on stderr
        error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert error["error_class"] == "NumericDomainError"
        assert error["error_type"] == "numeric_domain_error"


@pytest.mark.slow
class TestClassifyCommand:
    """qheine classify."""

    def test_json(self, capsys):
        code, payload = run_json(capsys, "classify", "--excluded")
        assert code == EXIT_OK
        assert payload["survivors"] == [[1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]]
        assert payload["excluded_matrix"]["preserves_filter_identity"] is True

    def test_emit_table(self, capsys):
        assert main(["classify", "--emit-table"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "\\begin{tabular}" in out
        # header plus one row per canonical candidate
        assert out.count("\\\\") == 17

    def test_text_counts(self, capsys):
        assert main(["classify", "--format", "text"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "44 candidates (16 canonical)" in out
        assert "3 canonical survivors" in out

