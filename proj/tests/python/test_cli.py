import json

import jsonschema
import pytest


def test_construct_verify_and_schemas(run_cli, tmp_path, schema, canonical_config, write_config):
    cfg = write_config(canonical_config)
    assert run_cli("construct", "--config", cfg, "--out", tmp_path).returncode == 0
    structure = json.loads((tmp_path / "structure.json").read_text())
    jsonschema.validate(structure, schema("structure"))
    assert structure["K"] == 17
    assert run_cli("verify", "--config", cfg, "--out", tmp_path).returncode == 0
    jsonschema.validate(json.loads((tmp_path / "nash_report.json").read_text()), schema("nash_report"))
    assert run_cli("filter-analysis", "--config", cfg, "--out", tmp_path).returncode == 0
    jsonschema.validate(json.loads((tmp_path / "filter_analysis.json").read_text()), schema("filter_analysis"))
    assert run_cli("profile", "--config", cfg, "--out", tmp_path).returncode == 0
    jsonschema.validate(json.loads((tmp_path / "profile.json").read_text()), schema("profile"))


def test_shipped_config_matches_schema(canonical_config, schema):
    jsonschema.validate(canonical_config, schema("config"))


def test_missing_field_is_usage_error(run_cli, canonical_config, write_config, tmp_path):
    del canonical_config["params"]["c"]
    assert run_cli("construct", "--config", write_config(canonical_config), "--out", tmp_path).returncode == 64


def test_unknown_sweep_parameter_is_usage_error(run_cli, canonical_config, write_config, tmp_path):
    cfg = write_config(canonical_config)
    r = run_cli("sweep", "--config", cfg, "--out", tmp_path, "--param", "L", "--from", "1", "--to", "2")
    assert r.returncode == 64


def test_infeasible_cost_exits_2(run_cli, canonical_config, write_config, tmp_path):
    canonical_config["params"]["c"] = 1.5
    assert run_cli("construct", "--config", write_config(canonical_config), "--out", tmp_path).returncode == 2


def test_missing_inputs_exit_66(run_cli, canonical_config, write_config, tmp_path):
    cfg = write_config(canonical_config)
    r = run_cli("verify", "--config", cfg, "--out", tmp_path, "--structure", tmp_path / "absent.json")
    assert r.returncode == 66
    assert run_cli("construct", "--config", tmp_path / "absent.json").returncode == 66


def test_tampered_structure_fails_verification(run_cli, canonical_config, write_config, tmp_path):
    cfg = write_config(canonical_config)
    assert run_cli("construct", "--config", cfg, "--out", tmp_path).returncode == 0
    doc = json.loads((tmp_path / "structure.json").read_text())
    first = doc["communities"][0]
    left = dict(first, length=0.3 * first["length"])
    right = dict(first, start=first["start"] + 0.3 * first["length"], length=0.7 * first["length"])
    doc["communities"][0:1] = [left, right]
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(doc))
    r = run_cli("verify", "--config", cfg, "--out", tmp_path, "--structure", tampered)
    assert r.returncode == 1
    assert not json.loads((tmp_path / "nash_report.json").read_text())["pass"]


def test_verify_is_deterministic(run_cli, canonical_config, write_config, tmp_path):
    cfg = write_config(canonical_config)
    assert run_cli("construct", "--config", cfg, "--out", tmp_path).returncode == 0
    reports = []
    for _ in range(2):
        assert run_cli("verify", "--config", cfg, "--out", tmp_path, "--seed", "9").returncode == 0
        reports.append((tmp_path / "nash_report.json").read_bytes())
    assert reports[0] == reports[1]


def test_sweep_rows_and_monotone_bound(run_cli, canonical_config, write_config, tmp_path):
    cfg = write_config(canonical_config)
    r = run_cli("sweep", "--config", cfg, "--out", tmp_path, "--param", "c", "--from", "0.05", "--to", "0.899",
                "--steps", "20")
    assert r.returncode == 0
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    header = lines[0].split(",")
    assert "max_interval_length" in header
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    assert len(rows) == 20
    bounds = [float(row["max_interval_length"]) for row in rows]
    assert all(b <= a for a, b in zip(bounds, bounds[1:]))
    assert bounds[-1] < 0.05


def test_zero_length_sweep_is_one_row(run_cli, canonical_config, write_config, tmp_path):
    cfg = write_config(canonical_config)
    r = run_cli("sweep", "--config", cfg, "--out", tmp_path, "--param", "c", "--from", "0.1", "--to", "0.1")
    assert r.returncode == 0
    assert len((tmp_path / "sweep.csv").read_text().splitlines()) == 2


@pytest.mark.parametrize("verb", ["construct", "filter-analysis", "profile"])
def test_grid_override(run_cli, canonical_config, write_config, tmp_path, verb):
    cfg = write_config(canonical_config)
    assert run_cli(verb, "--config", cfg, "--out", tmp_path, "--grid", "8").returncode == 64
