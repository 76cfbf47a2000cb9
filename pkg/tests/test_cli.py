import json

import pytest

from grassmann.cli import main
from grassmann.algebra import parse_element
from grassmann.endo import parse_endomorphism
from grassmann.rings import GF, QQ


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


class TestElementCommands:
    def test_mul_example(self, capsys):
        code, out, _ = run_cli(capsys, "mul", "--n", "4", "x2", "x1")
        assert code == 0
        assert out == "-x1x2"

    def test_mul_prime_field(self, capsys):
        code, out, _ = run_cli(capsys, "mul", "--n", "4", "--field", "prime:7",
                               "x2", "x1")
        assert code == 0
        assert out == "6*x1x2"

    def test_mul_json(self, capsys):
        code, out, _ = run_cli(capsys, "mul", "--n", "4", "--format", "json",
                               "x1", "x2")
        assert code == 0
        data = json.loads(out)
        assert data["schema"] == "grassmann/1"
        assert data["terms"] == [{"mask": 3, "monomial": "x1x2", "coeff": "1"}]

    def test_apply(self, capsys):
        code, out, _ = run_cli(capsys, "apply", "--n", "3",
                               "--endo", "x1 -> x2; x2 -> x1; x3 -> x3", "x1x2")
        assert code == 0
        assert out == "-x1x2"

    def test_parse_error_reported(self, capsys):
        code, _, err = run_cli(capsys, "mul", "--n", "4", "x9", "x1")
        assert code == 2
        assert "error" in err


class TestJacobianCommand:
    def test_example(self, capsys):
        code, out, _ = run_cli(
            capsys, "jacobian", "--n", "3",
            "--endo", "x1 -> x1 + x1x2x3; x2 -> x2; x3 -> x3")
        assert code == 0
        assert out == "1 + x2x3"

    def test_parity_error(self, capsys):
        code, _, err = run_cli(
            capsys, "jacobian", "--n", "2",
            "--endo", "x1 -> x1 + x1x2; x2 -> x2")
        assert code == 2
        assert "odd" in err


class TestInvertCommand:
    @pytest.mark.parametrize("strategy", ["iteration", "formula"])
    def test_forced_inverse(self, capsys, strategy):
        code, out, _ = run_cli(
            capsys, "invert", "--n", "4", "--strategy", strategy,
            "--endo", "x1 -> x1 + x2x3x4; x2 -> x2; x3 -> x3; x4 -> x4")
        assert code == 0
        assert parse_endomorphism(QQ, 4, out) == parse_endomorphism(
            QQ, 4, "x1 -> x1 - x2x3x4; x2 -> x2; x3 -> x3; x4 -> x4")


class TestDecomposeCommand:
    @pytest.mark.parametrize("mode", ["oga", "unipotent", "gamma",
                                      "sigma-prime", "layers"])
    def test_identity_everywhere(self, capsys, mode):
        code, out, _ = run_cli(
            capsys, "decompose", "--n", "4", "--mode", mode,
            "--endo", "x1 -> x1; x2 -> x2; x3 -> x3; x4 -> x4")
        assert code == 0
        assert "verified: True" in out

    def test_gamma_word_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "decompose", "--n", "4", "--mode", "gamma", "--format", "json",
            "--endo", "x1 -> x1 + x2x3x4; x2 -> x2; x3 -> x3; x4 -> x4")
        assert code == 0
        data = json.loads(out)
        assert data["verified"] is True
        assert data["kind"] == "scaling-and-shifts"


class TestMemberCommand:
    def test_sigma_membership(self, capsys):
        code, out, _ = run_cli(
            capsys, "member", "--n", "4", "--group", "sigma",
            "--endo", "x1 -> x1 + x2x3x4; x2 -> x2; x3 -> x3; x4 -> x4")
        assert code == 0
        assert out == "true"

    def test_gamma_asc(self, capsys):
        code, out, _ = run_cli(
            capsys, "member", "--n", "4", "--group", "gamma-asc:4",
            "--endo", "x1 -> x1 + x2x3x4; x2 -> x2; x3 -> x3; x4 -> x4")
        assert code == 0
        assert out == "true"


class TestPreimageCommand:
    def test_odd_n(self, capsys):
        code, out, _ = run_cli(capsys, "preimage", "--n", "5", "1 + x1x2")
        assert code == 0
        sigma = parse_endomorphism(QQ, 5, out)
        assert sigma.jacobian().det == parse_element(QQ, 5, "1 + x1x2")

    def test_even_n_refused(self, capsys):
        code, out, _ = run_cli(capsys, "preimage", "--n", "4", "1 + x1x2x3x4")
        assert code == 1
        assert "no preimage" in out

    def test_even_n_inexact(self, capsys):
        code, out, _ = run_cli(capsys, "preimage", "--n", "4", "--inexact",
                               "1 + x1x2x3x4")
        assert code == 0
        assert "forced top coefficient: 0" in out


class TestDimsCommand:
    def test_sigma_n4(self, capsys):
        code, out, _ = run_cli(capsys, "dims", "--group", "sigma", "--n", "4")
        assert code == 0
        assert out == "formula=10 coordinates=10"

    def test_ascent(self, capsys):
        code, out, _ = run_cli(capsys, "dims", "--group", "gamma-asc:4", "--n", "6")
        assert code == 0
        formula = int(out.split()[0].split("=")[1])
        coords = int(out.split()[1].split("=")[1])
        assert formula == coords


class TestGeneratorsCommand:
    def test_gamma_n4(self, capsys):
        code, out, _ = run_cli(capsys, "generators", "--n", "4", "--group", "gamma")
        assert code == 0
        assert out.endswith("total: 4")


class TestVerifyCommand:
    def test_deterministic_runs(self, capsys):
        args = ("verify", "--suite", "all", "--n", "5", "--samples", "3",
                "--seed", "11")
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "n3",
                               "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["type"] == "verification"
        assert all(r["passed"] for r in data["results"])


class TestRoundTrips:
    def test_element_print_parse(self, capsys):
        for field, ring in (("rational", QQ), ("prime:7", GF(7))):
            code, out, _ = run_cli(capsys, "mul", "--n", "5", "--field", field,
                                   "1 + 2*x1x2", "1 - x3x4x5")
            assert code == 0
            e = parse_element(ring, 5, out)
            want = parse_element(ring, 5, "1 + 2*x1x2") * parse_element(
                ring, 5, "1 - x3x4x5")
            assert e == want

    def test_endo_print_parse(self, capsys):
        code, out, _ = run_cli(
            capsys, "invert", "--n", "5",
            "--endo",
            "x1 -> x1 + x2x3x4; x2 -> x2 + x3x4x5; x3 -> x3; x4 -> x4; x5 -> x5")
        assert code == 0
        sigma = parse_endomorphism(QQ, 5, out)
        orig = parse_endomorphism(
            QQ, 5,
            "x1 -> x1 + x2x3x4; x2 -> x2 + x3x4x5; x3 -> x3; x4 -> x4; x5 -> x5")
        from grassmann.endo import identity_endo
        assert orig.compose(sigma) == identity_endo(QQ, 5)


class TestFieldValidation:
    def test_even_characteristic_rejected(self, capsys):
        code, _, err = run_cli(capsys, "mul", "--n", "3", "--field", "prime:2",
                               "x1", "x2")
        assert code == 2
        assert "2" in err

    def test_module_entry_point(self):
        import subprocess
        import sys
        proc = subprocess.run(
            [sys.executable, "-m", "grassmann", "mul", "--n", "4", "x2", "x1"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.strip() == "-x1x2"


class TestFileInputs:
    def test_endo_from_file(self, capsys, tmp_path):
        path = tmp_path / "endo.txt"
        path.write_text("x1 -> x1 + x2x3x4\nx2 -> x2\nx3 -> x3\nx4 -> x4\n")
        code, out, _ = run_cli(capsys, "invert", "--n", "4",
                               "--endo", f"@{path}")
        assert code == 0
        assert "x1 -> x1 - x2x3x4" in out

    def test_element_from_file(self, capsys, tmp_path):
        path = tmp_path / "elem.txt"
        path.write_text("1 + x1x2\n")
        code, out, _ = run_cli(capsys, "preimage", "--n", "5", f"@{path}")
        assert code == 0
