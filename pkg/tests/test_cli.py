"""Command line front end: commands, formats, exit codes."""

import json

import pytest

from triderive.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCommands:
    def test_bracket(self, capsys):
        code, out, _ = run(capsys, "--n", "3", "bracket", "x1^2*d2", "x1*x2*d3")
        assert code == 0
        assert out.strip() == "x1^3*d3"

    def test_exp_and_log_round_trip(self, capsys):
        code, out, _ = run(capsys, "--n", "2", "exp", "x1^2*d2")
        assert code == 0
        assert out.strip() == "[0, x1^2]"
        code, out, _ = run(capsys, "--n", "2", "log", "[0, x1^2]")
        assert code == 0
        assert out.strip() == "x1^2*d2"

    def test_conjugate(self, capsys):
        code, out, _ = run(capsys, "conjugate", "[0, x1^2]", "d1")
        assert code == 0
        assert out.strip() == "d1 - 2*x1*d2"

    def test_reconstruct(self, capsys):
        code, out, _ = run(capsys, "reconstruct", "d1 - 2*x1*d2", "d2")
        assert code == 0
        assert out.strip() == "[0, x1^2]"

    def test_ord(self, capsys):
        code, out, _ = run(capsys, "--n", "3", "ord", "d1")
        assert code == 0
        assert out.strip() == "w^2*1 + w*1 + 1"

    def test_ideal(self, capsys):
        code, out, _ = run(capsys, "--n", "2", "ideal", "x1*d2", "w*1 + 1")
        assert code == 0 and out.strip() == "true"
        code, out, _ = run(capsys, "--n", "2", "ideal", "d1", "w*1")
        assert code == 0 and out.strip() == "false"

    def test_center(self, capsys):
        code, out, _ = run(capsys, "--n", "3", "center")
        assert code == 0
        assert out.strip() == "d3"

    def test_center_requires_rank(self, capsys):
        code, _, err = run(capsys, "center")
        assert code == 2
        assert "--n" in err

    def test_act_with_triaut_element(self, capsys):
        code, out, _ = run(capsys, "act", "[0, x1^2]", "d1")
        assert code == 0
        assert out.strip() == "d1 - 2*x1*d2"

    def test_decompose_and_act_with_json(self, capsys):
        code, out, _ = run(capsys, "--n", "2", "decompose", "[0, x1^2]")
        assert code == 0
        data = json.loads(out)
        assert data["form"] == "A"
        assert data["tau"]["a"] == ["0", "x1^2"]
        code, out2, _ = run(capsys, "act", out, "d1")
        assert code == 0
        assert out2.strip() == "d1 - 2*x1*d2"

    def test_mul_and_inv(self, capsys):
        code, gtext, _ = run(capsys, "--n", "2", "decompose", "[0, x1^2]")
        assert code == 0
        code, invtext, _ = run(capsys, "inv", gtext)
        assert code == 0
        code, out, _ = run(capsys, "mul", gtext, invtext)
        assert code == 0
        data = json.loads(out)
        assert data["tau"]["a"] == ["0", "0"]
        assert data["f"]["coeffs"] == {}

    def test_verify_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "bracket")
        assert code == 0
        lines = [line for line in out.splitlines() if line]
        assert len(lines) == 4
        assert all(line.startswith("PASS") for line in lines)


class TestFormatsAndInput:
    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "--n", "2",
                           "bracket", "d1", "x1*d2")
        assert code == 0
        data = json.loads(out)
        assert data == {"kind": "lie", "value": "d2"}

    def test_json_bool(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "--n", "2",
                           "ideal", "d2", "w*1")
        assert code == 0
        assert json.loads(out)["value"] is True

    def test_file_indirection(self, capsys, tmp_path):
        path = tmp_path / "elem.txt"
        path.write_text("x1^2*d2", encoding="utf-8")
        code, out, _ = run(capsys, "--n", "2", "exp", f"@{path}")
        assert code == 0
        assert out.strip() == "[0, x1^2]"

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "--n", "2", "exp", "@/no/such/file")
        assert code == 2
        assert "error" in err


class TestExitCodes:
    def test_parse_error_reports_span(self, capsys):
        code, _, err = run(capsys, "--n", "2", "bracket", "d1 +", "d2")
        assert code == 1
        assert "at" in err and ".." in err

    def test_semantic_error(self, capsys):
        code, _, err = run(capsys, "--n", "2", "bracket", "x2*d2", "d2")
        assert code == 1
        assert "may only use" in err

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "--n", "1", "center")
        assert code == 2
        assert "rank" in err

    def test_truncation_error(self, capsys):
        blob = json.dumps({
            "n": 2, "form": "A", "t": ["1", "1"],
            "tau": {"a": ["0", "0"], "lambda": ["1", "1"]},
            "s": [], "f": {"order": 2, "coeffs": {"2": "1"}}, "e": [],
        })
        code, _, err = run(capsys, "act", blob, "x1^4*d2")
        assert code == 4
        assert "order" in err or "degree" in err

    def test_usage_error(self, capsys):
        assert run(capsys, "bracket")[0] == 2
