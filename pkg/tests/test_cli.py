import csv
import io
import json

import pytest

from pcclone.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFidelitySweep:
    def test_text_ok(self, capsys):
        code, out, _ = run_cli(capsys, "fidelity-sweep", "--max-m", "7")
        assert code == 0
        assert out.count("ok") == 3  # M = 3, 5, 7

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "fidelity-sweep", "--max-m", "5", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        by_m = {row["M"]: row for row in payload["rows"]}
        assert by_m[3]["gamma_exact"] == "5/6"
        assert by_m[5]["gamma_exact"] == "4/5"
        assert all(row["equal"] for row in payload["rows"])

    def test_csv(self, capsys):
        code, out, _ = run_cli(capsys, "fidelity-sweep", "--max-m", "9", "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [int(r["M"]) for r in rows] == [3, 5, 7, 9]
        assert rows[2]["gamma_closed_form"] == "11/14"

    def test_bad_max_m_is_config_error(self, capsys):
        code, _, err = run_cli(capsys, "fidelity-sweep", "--max-m", "1")
        assert code == 2
        assert "error" in err


class TestSimulate:
    def test_json_payload(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--M", "3", "--plane", "xz", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["M"] == 3 and payload["P"] == 2
        assert all(abs(f - 5 / 6) < 1e-10 for f in payload["per_clone_fidelity"])
        assert abs(payload["success_prob"] - 8 / 9) < 1e-10
        assert payload["covariance_defect"] < 1e-10

    def test_scheme_b_via_p(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--P", "2", "--scheme", "b", "--plane", "xy",
            "--phase", "1.2", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["scheme"] == "B"
        assert all(abs(f - 5 / 6) < 1e-10 for f in payload["per_clone_fidelity"])

    def test_csv_roundtrip(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--M", "3", "--format", "csv", "--phase", "0.5"
        )
        assert code == 0
        row = next(csv.DictReader(io.StringIO(out)))
        assert row["plane"] == "xz"
        assert abs(float(row["fid_2"]) - 5 / 6) < 1e-10

    def test_seeded_runs_deterministic(self, capsys):
        args = ("simulate", "--M", "3", "--seed", "7", "--format", "json")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_even_m_rejected(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--M", "4")
        assert code == 2
        assert "odd" in err

    def test_m_and_p_conflict(self, capsys):
        code, _, _ = run_cli(capsys, "simulate", "--M", "3", "--P", "2")
        assert code == 2

    def test_bad_plane(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--M", "3", "--plane", "qq")
        assert code == 2
        assert "plane" in err


class TestVerify:
    @pytest.mark.parametrize("suite", ["angular", "symmetry"])
    def test_single_suite_passes(self, capsys, suite):
        code, out, _ = run_cli(capsys, "verify", "--suite", suite)
        assert code == 0
        assert "FAIL" not in out
        assert "all checks passed" in out


class TestOpa:
    def test_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "opa", "--phase", "0.3", "--gain", "0.1", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["amp_ratio_magnitude"] - 3 ** 0.5) < 1e-10
        assert abs(payload["reduced_fidelity"] - 5 / 6) < 1e-9
        assert payload["series_norm_deficit"] < 1e-6

    def test_text(self, capsys):
        code, out, _ = run_cli(capsys, "opa")
        assert code == 0
        assert "|ratio| = 1.7320508076" in out

    def test_bad_order(self, capsys):
        code, _, _ = run_cli(capsys, "opa", "--order", "0")
        assert code == 2
