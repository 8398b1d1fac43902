import json

import numpy as np
import pytest

from loopnet import cli, entropy
from loopnet.errors import ConfigError


MINIMAL = json.dumps({"algebra": {"family": "su2", "level": 1}})


def scenario_text(**overrides):
    base = {
        "algebra": {"family": "su2", "level": 1},
        "fock_cutoff": 3,
        "output": {"dir": ".", "format": "csv"},
        "loops": [
            {"name": "gauss", "kind": "line", "factors": [
                {"generator": {"diag": [[0.0, 0.70710678118654752],
                                        [0.0, -0.70710678118654752]]},
                 "profile": "gaussian",
                 "parameters": {"center": 0.0, "width": 1.0,
                                "amplitude": 0.8}}]},
            {"name": "circle", "kind": "circle", "factors": [
                {"generator": {"basis": 0}, "profile": "bump",
                 "parameters": {"center": 0.0, "width": 2.0,
                                "amplitude": 0.5}}]},
        ],
        "tasks": [],
    }
    base.update(overrides)
    return json.dumps(base)


def test_defaults_filled():
    s = cli.validate_config(MINIMAL)
    assert s.grid_samples == 256
    assert s.fock_cutoff == 6
    assert s.tolerances["quadrature"] == 1e-10
    assert s.algebra_n == 2 and s.level == 1


def test_unknown_task_rejected():
    text = scenario_text(tasks=[{"task": "frobnicate"}])
    with pytest.raises(ConfigError) as err:
        cli.validate_config(text)
    assert "/tasks/0/task" in str(err.value)


def test_unknown_key_rejected_with_pointer():
    with pytest.raises(ConfigError) as err:
        cli.validate_config(json.dumps({"algebre": {}}))
    assert err.value.pointer == "/algebre"
    text = scenario_text()
    raw = json.loads(text)
    raw["loops"][0]["factors"][0]["parameters"]["sigma"] = 1.0
    with pytest.raises(ConfigError) as err:
        cli.validate_config(json.dumps(raw))
    assert "/loops/0/factors/0/parameters" in err.value.pointer


def test_capacity_surfaced_at_validation():
    text = scenario_text(tasks=[{"task": "fock-verify", "cutoff": 40}])
    with pytest.raises(ConfigError) as err:
        cli.validate_config(text)
    assert "dimension" in str(err.value)


def test_bad_loop_reference():
    text = scenario_text(tasks=[{"task": "bekenstein", "loop": "nope"}])
    with pytest.raises(ConfigError):
        cli.validate_config(text)


def test_unknown_family():
    with pytest.raises(ConfigError):
        cli.validate_config(json.dumps({"algebra": {"family": "so5"}}))


def test_line_path_rejects_fourier_profile():
    raw = json.loads(scenario_text())
    raw["loops"][0]["factors"][0]["profile"] = "fourier"
    raw["loops"][0]["factors"][0]["parameters"] = {
        "coefficients": [[1, 0.1, 0.0]]}
    with pytest.raises(ConfigError):
        cli.validate_config(json.dumps(raw))


def test_export_profile_empty_and_roundtrip():
    empty = entropy.EntropyProfile(
        grid=np.array([]), S=np.array([]), S_bar=np.array([]),
        S_prime=np.array([]), s_dd_analytic=np.array([]),
        s_dd_fd=np.array([]), density=np.array([]), total_energy=0.0)
    (name, blob), = cli.export_profile(empty, "csv", "empty")
    assert name == "empty.csv"
    assert blob.decode().strip() == \
        "t,S,S_bar,S_prime,S_dd_analytic,S_dd_fd,density"
    grid = np.linspace(-1, 1, 5)
    prof = entropy.EntropyProfile(
        grid=grid, S=grid ** 2, S_bar=grid + 2, S_prime=-grid,
        s_dd_analytic=np.ones(5), s_dd_fd=np.ones(5),
        density=np.full(5, 1 / (2 * np.pi)), total_energy=1.25)
    (jname, jblob), = cli.export_profile(prof, "json", "p")
    data = json.loads(jblob)
    assert data["total_energy"] == 1.25
    assert data["t"] == [float(v) for v in grid]
    assert data["S"] == [float(v) for v in grid ** 2]
    plots = cli.export_profile(prof, "csv", "p", plot_data=True)
    names = {n for n, _ in plots}
    assert {"p.csv", "p_S.dat", "p_S_bar.dat", "p_S_prime.dat",
            "p_S_dd_analytic.dat", "p_S_dd_fd.dat", "p_density.dat"} == names


@pytest.fixture()
def full_scenario(tmp_path):
    text = scenario_text(tasks=[
        {"task": "fock-verify", "identities": ["affine", "rotation"],
         "cutoff": 3},
        {"task": "entropy-profile", "loop": "gauss",
         "grid": {"start": -3.0, "stop": 3.0, "num": 41}},
        {"task": "bekenstein", "loop": "gauss", "radii": [0.5, 1.0]},
        {"task": "hs-defect", "loop": "circle", "window": 32},
        {"task": "alcove", "levels": [1, 2]},
        {"task": "soliton-classify",
         "soliton": {"linear": {"diag": [[0.0, 0.5], [0.0, -0.5]]}}},
        {"task": "exp-ode-check", "element": {"factors": [
            {"generator": {"basis": 0}, "profile": "fourier",
             "parameters": {"coefficients": [[1, 0.4, 0.0],
                                             [-1, 0.4, 0.0]]}}]},
         "alpha": 1.0, "time": 1.0},
    ])
    return cli.validate_config(text), tmp_path


def test_run_scenario_all_tasks(full_scenario):
    scenario, tmp_path = full_scenario
    report = cli.run_scenario(scenario, out_dir=str(tmp_path))
    assert report.passed
    statuses = {t["task"]: t["status"] for t in report.tasks}
    assert all(v == "pass" for v in statuses.values())
    produced = {p.name for p in tmp_path.iterdir()}
    assert "gauss_profile.csv" in produced
    assert "alcove.csv" in produced
    assert "report.json" in produced
    verdict = json.loads((tmp_path / "soliton_verdict.json").read_text())
    assert verdict["central"] and verdict["extendable"]
    assert verdict["center_index"] == 1
    header = (tmp_path / "gauss_profile.csv").read_text().splitlines()[0]
    assert header == "t,S,S_bar,S_prime,S_dd_analytic,S_dd_fd,density"


def test_run_scenario_filter_and_skip(full_scenario):
    scenario, tmp_path = full_scenario
    report = cli.run_scenario(scenario, out_dir=str(tmp_path),
                              task_filter=("alcove",))
    by_task = {t["task"]: t["status"] for t in report.tasks}
    assert by_task["alcove"] == "pass"
    assert by_task["fock-verify"] == "skipped"
    assert report.passed


def test_artifacts_byte_stable(full_scenario, tmp_path_factory):
    scenario, _ = full_scenario
    outs = []
    for tag in ("a", "b"):
        out = tmp_path_factory.mktemp(tag)
        cli.run_scenario(scenario, out_dir=str(out),
                         task_filter=("entropy-profile", "bekenstein",
                                      "alcove"))
        outs.append(out)
    for name in ("gauss_profile.csv", "gauss_bekenstein.json", "alcove.csv"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()


def test_parallel_matches_sequential(full_scenario, tmp_path_factory):
    scenario, _ = full_scenario
    seq = tmp_path_factory.mktemp("seq")
    par = tmp_path_factory.mktemp("par")
    cli.run_scenario(scenario, out_dir=str(seq),
                     task_filter=("alcove", "bekenstein"))
    cli.run_scenario(scenario, out_dir=str(par),
                     task_filter=("alcove", "bekenstein"), parallel=True)
    for name in ("alcove.csv", "gauss_bekenstein.json"):
        assert (seq / name).read_bytes() == (par / name).read_bytes()


def test_main_entry_points(tmp_path, capsys):
    config = tmp_path / "scenario.json"
    config.write_text(scenario_text(tasks=[{"task": "alcove"}]))
    rc = cli.main(["alcove", "--config", str(config),
                   "--out-dir", str(tmp_path / "out")])
    assert rc == 0
    assert (tmp_path / "out" / "alcove.csv").exists()
    rc = cli.main(["verify", "--config", str(tmp_path / "missing.json")])
    assert rc == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"tasks": [{"task": "nope"}]}')
    assert cli.main(["verify", "--config", str(bad)]) == 2


def test_main_config_free_alcove(tmp_path):
    out = tmp_path / "o"
    rc = cli.main(["alcove", "--algebra", "su3", "--level", "2",
                   "--out-dir", str(out),
                   "--dump-table", str(out / "table.json")])
    assert rc == 0
    table = json.loads((out / "table.json").read_text())
    assert {"family": "E8", "rank": 8, "complex_dimension": 248,
            "dual_coxeter": 30} in table
    lines = (out / "alcove.csv").read_text().splitlines()
    assert lines[0] == "family,level,weight,casimir,h,c"
    assert len(lines) == 1 + 6  # A2 level 2 alcove has 6 weights


def test_main_config_free_verify(tmp_path):
    rc = cli.main(["verify", "--algebra", "su2", "--cutoff", "3",
                   "--identities", "rotation,adjoint",
                   "--out-dir", str(tmp_path)])
    assert rc == 0
    reports = json.loads((tmp_path / "fock_verify.json").read_text())
    assert {r["identity"] for r in reports} == {"rotation", "adjoint"}
    assert all(r["pass"] for r in reports)


def test_fail_fast_stops_after_failure(tmp_path):
    # a hs-defect task with a severely windowed loop fails its gap check;
    # with --fail-fast the following task must not run
    text = scenario_text(tasks=[
        {"task": "hs-defect", "loop": "circle", "window": 1},
        {"task": "alcove"},
    ])
    scenario = cli.validate_config(text)
    report = cli.run_scenario(scenario, out_dir=str(tmp_path), fail_fast=True)
    statuses = [t["status"] for t in report.tasks]
    assert statuses[0] == "fail"
    assert len(statuses) == 1
    assert not report.passed
