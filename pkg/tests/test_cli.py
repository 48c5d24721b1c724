"""Command-line interface: subcommands, exit codes, report determinism."""

import json

import numpy as np
import pytest

from framedual.cli import main
from framedual import serialize, cyclic_group, Multiplier


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*argv, "--output", str(out)])
    text = out.read_text() if out.exists() else ""
    return code, text


def test_validate_heisenberg(tmp_path):
    code, text = run(tmp_path, "validate", "--multiplier", "heisenberg", "--N", "4")
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["multiplier"]["passed"] is True
    assert doc["meta"]["tool"] == "framedual"


def test_validate_detects_broken_multiplier(tmp_path):
    g = cyclic_group(3)
    table = np.ones((3, 3), dtype=complex)
    table[1, 0] = 1j  # breaks mu(g, e) = 1
    mu_file = tmp_path / "mu.json"
    mu_file.write_text(json.dumps(serialize.multiplier_to_json(Multiplier(g, table))))
    code, text = run(tmp_path, "validate", "--group", "Z3",
                     "--multiplier", f"@{mu_file}")
    assert code == 1
    doc = json.loads(text)
    assert doc["result"]["multiplier"]["passed"] is False


def test_classify_degenerate_gabor_window(tmp_path):
    code, text = run(tmp_path, "classify", "--rep", "gabor", "--lattice", "4,1,2",
                     "--window", "1,0,1,0")
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["classification"]["is_complete_frame"] is False


def test_commutant_command(tmp_path):
    code, text = run(tmp_path, "commutant", "--rep", "regular", "--group", "Z6")
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["commutant_dim"] == 6
    assert doc["result"]["is_factor"] is False


def test_certify_pair_command(tmp_path):
    code, text = run(tmp_path, "certify-pair", "--pair", "regular", "--group", "Z6",
                     "--multiplier", "trivial", "--seed", "3")
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["report"]["feasible"] is True


def test_verify_duality_command(tmp_path):
    code, text = run(tmp_path, "verify-duality", "--pair", "regular", "--group", "Z3",
                     "--vector", "1,1,0")
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["verdict"]["theorem_consistent"] is True


def test_sweep_command_and_exit_code(tmp_path):
    code, text = run(tmp_path, "sweep", "--pair", "regular", "--group", "Z12",
                     "--multiplier", "trivial", "--n", "25", "--seed", "7")
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["n_inconsistent"] == 0
    assert doc["meta"]["seed"] == 7


def test_sweep_reports_byte_identical_across_jobs(tmp_path):
    args = ["sweep", "--pair", "regular", "--group", "Z8", "--multiplier", "trivial",
            "--n", "16", "--seed", "11"]
    out1 = tmp_path / "jobs1.json"
    out2 = tmp_path / "jobs8.json"
    assert main([*args, "--jobs", "1", "--output", str(out1)]) == 0
    assert main([*args, "--jobs", "8", "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sweep_csv_summary(tmp_path):
    import csv

    out = tmp_path / "summary.csv"
    code = main(["sweep", "--pair", "gabor", "--lattice", "6,1,2", "--n", "10",
                 "--seed", "2", "--format", "csv", "--output", str(out)])
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["pair", "n", "failures", "worst_residual"]
    assert rows[1][2] == "0"


def test_dilate_command(tmp_path):
    code, text = run(tmp_path, "dilate", "--rep", "regular", "--group", "Z4",
                     "--vector", "1,1,0,0", "--mode", "parseval", "--seed", "5")
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["dilation"]["mode"] == "parseval"


def test_gabor_command_with_window(tmp_path):
    code, text = run(tmp_path, "gabor", "--lattice", "4,1,2",
                     "--window", "1,0,1,0", "--zak")
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["adjoint"] == [4, 2, 4]
    assert doc["result"]["window_verdict"]["theorem_consistent"] is True
    assert doc["result"]["zak"]["rows"] == 1


def test_usage_errors_exit_2(tmp_path):
    assert main(["no-such-command"]) == 2
    assert main(["classify", "--rep", "gabor", "--vector", "1,0"]) == 2  # no lattice
    assert main(["sweep", "--pair", "gabor", "--lattice", "5,2,1"]) == 2  # bad steps
    assert main(["classify", "--rep", "regular", "--group", "Z3",
                 "--vector", "1,frog,0"]) == 2


def test_validate_rep_bundle(tmp_path):
    from framedual import cyclic_group, left_regular, trivial_multiplier

    g = cyclic_group(3)
    lam = left_regular(g, trivial_multiplier(g))
    bundle = serialize.rep_to_json(lam)
    good = tmp_path / "rep.json"
    good.write_text(json.dumps(bundle))
    code, text = run(tmp_path, "validate", "--rep-json", str(good))
    assert code == 0
    assert json.loads(text)["result"]["representation"]["passed"] is True

    bundle["matrices"][1]["entries"][0] = [2.0, 0.0]  # break unitarity
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(bundle))
    code, text = run(tmp_path, "validate", "--rep-json", str(bad))
    assert code == 1
    assert json.loads(text)["result"]["representation"]["passed"] is False


def test_character_rep_classify(tmp_path):
    code, text = run(tmp_path, "classify", "--rep", "character", "--N", "4",
                     "--freqs", "0,2", "--vector", "1,1")
    assert code == 0
    doc = json.loads(text)
    assert doc["result"]["classification"]["orbit_span_dim"] == 2


def test_config_file_overrides_flags(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 21}))
    out = tmp_path / "r.json"
    code = main(["sweep", "--pair", "regular", "--group", "Z4", "--n", "5",
                 "--seed", "1", "--config", str(cfg), "--output", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["meta"]["seed"] == 21


def test_reports_identical_across_runs(tmp_path):
    args = ["classify", "--rep", "regular", "--group", "Z6", "--vector", "1,0,0,1,0,0"]
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main([*args, "--output", str(out1)]) == 0
    assert main([*args, "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
