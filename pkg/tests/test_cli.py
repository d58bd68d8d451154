"""Command-line interface: outputs, exit codes, determinism, golden files."""

import json
import os
import pathlib
import subprocess
import sys

import pytest

from spherecs.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run_main(args, capsys):
    rc = main(args)
    out = capsys.readouterr().out
    return rc, out


# ---------------------------------------------------------------------------
# golden kernel tables (stable to the last printed digit)
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name,args", [
    ("kernel_d2_tau05.csv",
     ["kernel", "--dim", "2", "--tau", "0.5", "--theta", "0:3:21",
      "--format", "csv"]),
    ("kernel_d1_tau02_complex.csv",
     ["kernel", "--dim", "1", "--tau", "0.2", "--theta", "0.4:2.8:9",
      "--theta-im", "0.6", "--format", "csv"]),
    ("nu_d3_s05.csv",
     ["kernel", "--dim", "3", "--space", "hyperbolic", "--tau", "0.5",
      "--radius-range", "0.1:2.5:9", "--format", "csv"]),
])
def test_golden_tables(name, args, capsys):
    rc, out = run_main(args, capsys)
    assert rc == 0
    assert out == (GOLDEN / name).read_text()


def test_deterministic_across_thread_counts(tmp_path):
    outs = []
    for threads in ("1", "4"):
        env = dict(os.environ, SPHERECS_THREADS=threads)
        res = subprocess.run(
            [sys.executable, "-m", "spherecs.cli", "kernel", "--dim", "2",
             "--tau", "0.3", "--theta", "0:3:40", "--format", "csv"],
            capture_output=True, text=True, env=env, check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1]


# ---------------------------------------------------------------------------
# subcommand smoke tests
# ---------------------------------------------------------------------------

def test_kernel_json_shape(capsys):
    rc, out = run_main(["kernel", "--dim", "1", "--tau", "0.5",
                        "--theta", "1.0", "--format", "json"], capsys)
    assert rc == 0
    doc = json.loads(out)
    assert doc["meta"]["command"] == "kernel"
    assert len(doc["rows"]) == 1
    assert abs(doc["rows"][0]["value_im"]) < 1e-15


def test_coherent(capsys):
    rc, out = run_main(["coherent", "--dim", "2", "--tau", "0.5",
                        "--momentum", "0.4", "--theta", "0:1:5",
                        "--format", "json"], capsys)
    assert rc == 0
    doc = json.loads(out)
    assert doc["meta"]["norm_squared"] > 0
    assert len(doc["rows"]) == 5


def test_transform_and_invert(capsys):
    rc, out = run_main(["transform", "--dim", "1", "--tau", "0.5",
                        "--preset", "harmonic:2", "--momentum-range",
                        "0:1:4", "--format", "json"], capsys)
    assert rc == 0
    assert len(json.loads(out)["rows"]) == 4
    rc, out = run_main(["invert", "--dim", "1", "--tau", "0.5",
                        "--preset", "random:7", "--cutoff", "6",
                        "--format", "json"], capsys)
    assert rc == 0
    assert json.loads(out)["meta"]["l2_round_trip_error"] < 1e-6


def test_husimi_mass(capsys):
    rc, out = run_main(["husimi", "--dim", "1", "--tau", "0.5",
                        "--preset", "random:3", "--cutoff", "5",
                        "--format", "json"], capsys)
    assert rc == 0
    doc = json.loads(out)
    assert abs(doc["meta"]["mass"] - 1.0) < 1e-6
    assert all(r["density"] >= -1e-12 for r in doc["rows"])


def test_resolve_identity_and_negative_control(capsys):
    rc, out = run_main(["resolve-identity", "--dim", "1", "--tau", "0.5",
                        "--cutoff", "4", "--format", "json"], capsys)
    assert rc == 0
    assert json.loads(out)["meta"]["max_deviation"] < 1e-8
    rc, out = run_main(["resolve-identity", "--dim", "1", "--tau", "0.5",
                        "--cutoff", "4", "--negative-control",
                        "--format", "json"], capsys)
    assert rc == 0
    assert json.loads(out)["meta"]["max_deviation"] > 1e-7


def test_verify_fast(capsys):
    rc, out = run_main(["verify", "--suite", "complexifier,operators",
                        "--fast"], capsys)
    assert rc == 0
    assert "PASS" in out
    assert "FAIL" not in out


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tau": 1.0, "format": "json"}))
    rc, out = run_main(["kernel", "--dim", "1", "--theta", "0.7",
                        "--config", str(cfg)], capsys)
    assert rc == 0
    doc = json.loads(out)
    assert doc["meta"]["time"] == 1.0
    # explicit flags override config values
    rc, out = run_main(["kernel", "--dim", "1", "--theta", "0.7",
                        "--config", str(cfg), "--tau", "2.0"], capsys)
    assert json.loads(out)["meta"]["time"] == 2.0


def test_physical_parameters_instead_of_tau(capsys):
    # tau = hbar / (m omega r^2)
    rc, out = run_main(["kernel", "--dim", "1", "--radius", "2.0",
                        "--mass", "1.0", "--omega", "0.5", "--hbar", "1.0",
                        "--theta", "1.0", "--format", "json"], capsys)
    assert rc == 0
    assert abs(json.loads(out)["meta"]["time"] - 0.5) < 1e-15


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_exit_code_usage_errors(capsys):
    assert main(["kernel", "--dim", "5", "--tau", "0.5",
                 "--theta", "1.0"]) == 2
    capsys.readouterr()
    assert main(["invert", "--dim", "1", "--tau", "0.5",
                 "--coeffs", "/nonexistent.json"]) == 2
    capsys.readouterr()


def test_exit_code_numerical_failure(capsys):
    assert main(["kernel", "--dim", "2", "--tau", "-0.5",
                 "--theta", "1.0"]) == 3
    capsys.readouterr()


def test_exit_code_verify_failure(capsys):
    # a deliberately broken tolerance cannot exist; use a bogus suite name
    assert main(["verify", "--suite", "nope"]) == 2
    capsys.readouterr()


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    rc = main(["kernel", "--dim", "1", "--tau", "0.5", "--theta", "1.0",
               "--output", str(target)])
    capsys.readouterr()
    assert rc == 0
    assert target.read_text().startswith("# command = kernel")
