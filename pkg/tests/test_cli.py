import json
import subprocess
import sys

import pytest

from owflab.cli import main


def run_cli(args):
    return main(args)


def strip_timestamps(text):
    return "\n".join(
        line
        for line in text.splitlines()
        if "timestamp" not in line and not line.startswith("# generated")
    )


def test_density_csv(tmp_path):
    out = tmp_path / "density.csv"
    assert run_cli(["density", "--oracle", "sq", "--ell", "50", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[2] == "x,dens,lower_bound,upper_bound"
    assert len(lines) == 3 + 50
    assert lines[3].startswith("1,0,")
    # row for x = 25 carries the third square
    assert lines[2 + 25].startswith("25,3,")


def test_density_empty_limit(tmp_path):
    out = tmp_path / "density.csv"
    assert run_cli(["density", "--ell", "0", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[-1] == "x,dens,lower_bound,upper_bound"


def test_density_full_language_flags_violations(tmp_path):
    out = tmp_path / "density.csv"
    code = run_cli(
        ["density", "--oracle", "sigma-star", "--ell", "100", "--out", str(out)]
    )
    assert code == 1  # the sqrt ceiling fails everywhere; reported via exit


def test_unknown_oracle_is_usage_error(tmp_path):
    assert run_cli(["density", "--oracle", "nope"]) == 2


def test_unknown_command_is_usage_error(capsys):
    assert run_cli(["frobnicate"]) == 2


def test_threshold_table(tmp_path):
    out = tmp_path / "threshold.csv"
    assert run_cli(["threshold", "--n", "20", "--out", str(out)]) == 0
    text = out.read_text()
    assert "N,good,mstar,mu_lower,mu_upper" in text
    assert "\n4,2,1,0,2," in text  # the hand-checked (4, 2) row
    assert "# bollobas grid" in text


def test_threshold_empty_range(tmp_path):
    out = tmp_path / "threshold.csv"
    assert run_cli(["threshold", "--n", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[2] == "N,good,mstar,mu_lower,mu_upper,pr_at_mstar,pr_after_mstar,sandwich_ok"
    assert lines[3] == "# bollobas grid"


def test_census_rows(tmp_path):
    out = tmp_path / "census.csv"
    assert run_cli(["census", "--ell", "8", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "length,diagonal_count,header_classes"
    assert "4,16,4" in lines
    assert "8,256,8" in lines


def test_sample_report(tmp_path):
    out = tmp_path / "sample.json"
    code = run_cli(
        [
            "sample", "--n", "2", "--beta", "2", "--trials", "1000",
            "--seed", "11", "--oracle", "power:2", "--alpha", "8",
            "--out", str(out),
        ]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["params"]["N"] == 16
    assert payload["params"]["trials"] == 1000
    assert 0 <= payload["miss0"] <= 1


def test_owf_command(tmp_path):
    out = tmp_path / "owf.json"
    code = run_cli(
        ["owf", "--ell", "600", "--beta", "1", "--alpha", "8",
         "--k-profile", "paper", "--seed", "99", "--out", str(out)]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["n"] == 2
    assert payload["sets"] == [[4], [3]]  # frozen evaluator vector
    assert payload["bits_consumed"] == 156


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"ell": 10, "oracle": "cube"}))
    out = tmp_path / "density.csv"
    assert run_cli(
        ["density", "--config", str(cfg), "--ell", "30", "--out", str(out)]
    ) == 0
    lines = out.read_text().splitlines()
    assert "oracle=power3" in lines[1]  # from the file
    assert len(lines) == 3 + 30  # the flag beat the file


def test_owf_infeasible_tape_is_reported(capsys):
    # At the bottom of an n-band the tape cannot fund the rounds; the CLI
    # turns the exhaustion diagnostic into a usage error.
    assert run_cli(["owf", "--ell", "80", "--k-profile", "practical"]) == 2


def test_config_file_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"elll": 10}))
    assert run_cli(["density", "--config", str(cfg)]) == 2


@pytest.mark.slow
def test_verify_all_reports_are_deterministic(tmp_path):
    # End-to-end determinism of the verify pipeline through the real CLI,
    # at a reduced trial count to keep the double run affordable.
    outputs = []
    for i in range(2):
        out = tmp_path / f"report{i}.json"
        proc = subprocess.run(
            [
                sys.executable, "-m", "owflab.cli", "verify-all",
                "--seed", "5", "--trials", "1000", "--format", "json",
                "--out", str(out),
            ],
            capture_output=True,
            text=True,
            timeout=900,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_text())
    assert strip_timestamps(outputs[0]) == strip_timestamps(outputs[1])
    payload = json.loads(outputs[0])
    assert payload["all_passed"] is True
    assert len(payload["criteria"]) == 11
