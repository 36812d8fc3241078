import json

import pytest


def run_json(cli, *args):
    res = cli(*args, "--format", "json", "-q")
    assert res.returncode == 0, res.stderr
    return json.loads(res.stdout)


def test_probs_columns_agree(cli, validate):
    doc = run_json(cli, "probs", "--state", "thermal:0.5", "--kappa", "0.1", "--methods", "exact,oracle")
    validate(doc, "probs")
    exact, oracle = (c["probs"] for c in doc["columns"])
    assert [c["method"] for c in doc["columns"]] == ["exact", "oracle"]
    for a, b in zip(exact, oracle):
        assert abs(a - b) < 1e-9
    assert doc["diagnostics"][0]["max_abs_diff"] < 1e-9


def test_probs_rejects_exact_for_fock(cli):
    res = cli("probs", "--state", "fock:3", "--methods", "exact")
    assert res.returncode == 2
    assert "P function" in res.stderr


def test_zero_coupling_gives_p0_one(cli):
    doc = run_json(cli, "probs", "--state", "coherent:1+0i", "--kappa", "0", "--methods", "exact")
    assert doc["columns"][0]["probs"][0] == 1.0


@pytest.mark.parametrize(
    "spec,value,label",
    [("thermal:1", 2.0, "thermal-like"), ("coherent:1", 1.0, "maximally classical")],
)
def test_ratio_labels(cli, validate, spec, value, label):
    doc = run_json(cli, "ratio", "--state", spec, "--methods", "exact")
    validate(doc, "ratio")
    res = doc["results"][0]
    assert abs(res["R"]["value"] - value) < 1e-9
    assert res["label"] == label


def test_ratio_flags_undefined(cli, validate):
    doc = run_json(cli, "ratio", "--state", "fock:1")
    validate(doc, "ratio")
    res = doc["results"][0]
    assert res["R"]["value"] == 0.0
    assert res["R_prime"]["value"] is None
    assert res["R_prime"]["reason"]


def test_moments(cli, validate):
    doc = run_json(cli, "moments", "--state", "squeezed:1")
    validate(doc, "moments")
    assert doc["dispersion"] == "super-Poissonian"


def test_sample_is_reproducible(cli, validate, tmp_path):
    args = ["sample", "--state", "thermal:1", "--gamma0", "0.2", "--dt", "1", "--windows", "500", "--seed", "9"]
    a = cli(*args, "--format", "csv", "--out", str(tmp_path / "a.csv"))
    b = cli(*args, "--format", "csv", "--out", str(tmp_path / "b.csv"))
    assert a.returncode == 0 and b.returncode == 0
    assert (tmp_path / "a.csv").read_text() == (tmp_path / "b.csv").read_text()
    validate(run_json(cli, *args), "sample")


def test_output_dir_from_environment(cli, tmp_path):
    res = cli("astro", "--format", "csv", env={"ACOH_OUTPUT_DIR": str(tmp_path)})
    assert res.returncode == 0
    assert (tmp_path / "astro.csv").read_text().startswith("name,")


def test_zero_windows_is_usage_error(cli):
    assert cli("sample", "--state", "coherent:1", "--windows", "0").returncode == 2


def test_thermal_sample_rejects_null(cli, validate, tmp_path):
    counts = tmp_path / "counts.csv"
    res = cli("sample", "--state", "thermal:1", "--gamma0", "1", "--dt", "1", "--windows", "5000", "--seed", "3",
              "--format", "csv", "--out", str(counts))
    assert res.returncode == 0
    doc = run_json(cli, "test", "--counts", str(counts), "--bootstrap", "199")
    validate(doc, "test")
    assert doc["verdict"] == "reject"


def test_astro_presets(cli, validate):
    doc = run_json(cli, "astro")
    validate(doc, "astro")
    rows = {(r["name"], r["frequency_hz"]): r for r in doc["rows"]}
    assert abs(rows[("GW150914", 200)]["dt_max_s"] / 5e-3 - 1) < 0.2
    assert abs(rows[("GW170817", 200)]["dt_max_s"] / 70e-3 - 1) < 0.2


def test_astro_custom_bar(cli, validate):
    doc = run_json(cli, "astro", "--chirp-mass", "10", "--frequency", "300", "--bar", '{"mass_kg": 2300, "length_m": 3}')
    validate(doc, "astro")
    assert doc["rows"][0]["gamma0_per_s"] > 0


def test_state_json_roundtrips(cli, validate, tmp_path):
    doc = run_json(cli, "probs", "--state", "gaussian:1,0.3,0.2,0.1", "--methods", "gaussian")
    validate(doc["state"], "state")
    path = tmp_path / "state.json"
    path.write_text(json.dumps(doc["state"]))
    again = run_json(cli, "probs", "--state-file", str(path), "--methods", "gaussian")
    assert again["columns"] == doc["columns"]


def test_bad_state_is_usage_error(cli):
    assert cli("probs", "--state", "thermal:-1").returncode == 2
    assert cli("probs", "--bogus").returncode == 2


def test_truncation_failure_exit_code(cli):
    res = cli("probs", "--state", "thermal:500", "--methods", "oracle", "--max-dim", "64")
    assert res.returncode == 3
