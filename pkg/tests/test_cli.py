import json
import math
import subprocess
import sys

import pytest

SQ2 = math.sqrt(2.0)


def run_cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "chgeo", *args],
        capture_output=True,
        text=True,
        env=env,
    )


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def test_catalog_json_document():
    proc = run_cli("--format", "json", "catalog", "--n", "3")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["schema"] == "chgeo/1"
    letters = {e.get("classification_family") for e in doc["entries"]} - {None}
    assert letters == {"a", "b", "c", "d"}
    g2 = [e for e in doc["entries"] if e["g"] == 2]
    assert len(g2) == 4
    for entry in doc["entries"]:
        for lam, mult in entry["profile"]:
            assert isinstance(lam, float) and isinstance(mult, int)


def test_catalog_emits_symbolic_tags():
    proc = run_cli("--format", "json", "catalog", "--n", "3")
    doc = json.loads(proc.stdout)
    ruled = next(e for e in doc["entries"] if e["family"] == "ruled-W")
    assert "1/2" in ruled["profile_symbols"]
    critical = next(e for e in doc["entries"] if e["family"] == "tube-Wk")
    assert critical["r"]["symbol"] == "ln(2+sqrt(3))"


def test_catalog_open_case_note():
    proc = run_cli("--format", "json", "catalog", "--n", "2")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert any("open" in note for note in doc["notes"])
    assert all(e["g"] == 2 for e in doc["entries"])


def test_catalog_rejects_bad_dimension():
    proc = run_cli("catalog", "--n", "1")
    assert proc.returncode == 2
    assert "error" in proc.stderr


def test_catalog_csv_layout():
    proc = run_cli("--format", "csv", "catalog", "--n", "3")
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "family,n,k,r,lambda,mult"
    assert all(len(line.split(",")) == 6 for line in lines[1:])


# ---------------------------------------------------------------------------
# classify / sweep / focal
# ---------------------------------------------------------------------------


def test_classify_zero_axis():
    proc = run_cli("--format", "json", "classify", "--lambda3", "0.0")
    doc = json.loads(proc.stdout)
    assert proc.returncode == 0
    assert doc["lambda1"]["value"] == pytest.approx(-0.5, abs=1e-14)
    assert doc["lambda2"]["value"] == pytest.approx(0.5, abs=1e-14)
    assert doc["lambda1"]["symbol"] == "-1/2"


def test_classify_exclusion_is_success_with_reason():
    proc = run_cli("--format", "json", "classify", "--lambda3", "0.55")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["branch"] is None
    assert "ellipse" in doc["reason"]


def test_classify_isolated_case():
    proc = run_cli("--format", "json", "classify", "--case", "i")
    doc = json.loads(proc.stdout)
    assert doc["case"] == "i"
    assert doc["lambda1"]["symbol"] == "sqrt(3)/2"
    assert doc["b1sq"]["symbol"] == "8/9"


def test_sweep_csv():
    proc = run_cli(
        "--format", "csv", "sweep", "--lo", "-0.4", "--hi", "0.4", "--step", "0.1"
    )
    lines = proc.stdout.strip().splitlines()
    # header + nine parametric rows + the isolated row
    assert len(lines) == 11
    assert lines[-1].startswith("i,")


def test_focal_isolated_report():
    proc = run_cli("--format", "json", "focal", "--case", "i", "--n", "3")
    doc = json.loads(proc.stdout)
    assert proc.returncode == 0
    assert doc["kernel_dim"] == 1
    assert doc["image_codim"] == 2
    block = doc["carrier_block"]
    assert block[0][0] == pytest.approx(4.0 * SQ2 / 18.0, abs=1e-12)
    assert block[0][1] == pytest.approx(-7.0 / 18.0, abs=1e-12)


def test_focal_parametric_report():
    proc = run_cli("--format", "json", "focal", "--case", "ii", "--lambda3", "0.2")
    doc = json.loads(proc.stdout)
    assert doc["kernel_dim"] == 0
    lams = sorted(item["lambda"]["value"] for item in doc["image_spectrum"])
    assert lams == pytest.approx([-0.5, 0.0, 0.5], abs=1e-10)


def test_focal_excluded_window_reports_reason():
    proc = run_cli("--format", "json", "focal", "--case", "ii", "--lambda3", "0.55")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["result"] is None
    assert "ellipse" in doc["reason"]


def test_usage_error_exit_code():
    proc = run_cli("focal", "--case", "x")
    assert proc.returncode == 2


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


@pytest.mark.slow
def test_verify_passes_and_is_deterministic():
    first = run_cli("--seed", "7", "--format", "json", "verify")
    second = run_cli("--seed", "7", "--format", "json", "verify")
    assert first.returncode == 0
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    assert doc["passed"] is True
    assert len(doc["suites"]) >= 9


@pytest.mark.slow
def test_verify_overtight_tolerance_fails():
    proc = run_cli("--format", "json", "verify", "--tolerance", "1e-15")
    assert proc.returncode == 1
    doc = json.loads(proc.stdout)
    failing = [s for s in doc["suites"] if not s["passed"]]
    assert failing
    assert all(s["max_residual"] > 1e-15 for s in failing)


def test_seed_environment_variable():
    import os

    env = dict(os.environ)
    env["CHGEO_SEED"] = "1234"
    with_env = run_cli("--format", "json", "verify", env=env)
    explicit = run_cli("--seed", "1234", "--format", "json", "verify")
    assert json.loads(with_env.stdout)["seed"] == 1234
    assert with_env.stdout == explicit.stdout
