import hashlib
import json

import numpy as np
import pytest

from src.cli import EXIT_CONFIG, EXIT_RUNTIME, main
from src.results import read_csv, read_potential


def _write(path, data):
    path.write_text(json.dumps(data))
    return path


@pytest.fixture
def three_level_config(tmp_path, configs_dir):
    data = json.loads((configs_dir / "three_level.json").read_text())
    return _write(tmp_path / "three_level.json", data)


def test_three_level_run(tmp_path, three_level_config, capsys):
    out = tmp_path / "run"
    assert main(["three-level-run", "--config", str(three_level_config), "--out", str(out), "--quiet"]) == 0

    columns, rows = read_csv(out / "data" / "three_level.csv")
    assert columns == ["t", "Omega_P", "Omega_S", "P1", "P2", "P3", "adiabaticity"]
    assert rows[-1, 5] >= 0.999
    assert "P3=" in capsys.readouterr().out

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["scenario"] == "three-level"
    assert manifest["command"] == "three-level-run"
    for name, digest in manifest["files"].items():
        assert hashlib.sha256((out / name).read_bytes()).hexdigest() == digest
    assert not (out / "error.txt").exists()


def test_rerun_from_manifest_is_identical(tmp_path, three_level_config):
    first = tmp_path / "first"
    assert main(["three-level-run", "--config", str(three_level_config), "--out", str(first), "--quiet"]) == 0
    echo = json.loads((first / "manifest.json").read_text())["config"]
    replay = _write(tmp_path / "replay.json", echo)

    second = tmp_path / "second"
    assert main(["three-level-run", "--config", str(replay), "--out", str(second), "--quiet"]) == 0
    name = "data/three_level.csv"
    assert (first / name).read_bytes() == (second / name).read_bytes()


def test_malformed_config(tmp_path, capsys):
    config = tmp_path / "broken.json"
    config.write_text('{"scenario": "three-level", ')
    out = tmp_path / "run"
    assert main(["three-level-run", "--config", str(config), "--out", str(out), "--quiet"]) == EXIT_CONFIG
    assert capsys.readouterr().err.startswith("error=config")
    assert (out / "error.txt").read_text().startswith("error=config")
    assert not (out / "manifest.json").exists()


@pytest.mark.parametrize("block", ["propagation", "geometry", "sweep"])
def test_wrong_block_type_is_a_config_failure(tmp_path, configs_dir, capsys, block):
    data = json.loads((configs_dir / "three_level.json").read_text())
    data[block] = [1, 2]
    config = _write(tmp_path / "listy.json", data)
    out = tmp_path / "run"
    assert main(["three-level-run", "--config", str(config), "--out", str(out), "--quiet"]) == EXIT_CONFIG
    assert capsys.readouterr().err.startswith("error=config")
    assert (out / "error.txt").read_text().startswith("error=config")


def test_invalid_grid_fails_before_output_is_written(tmp_path, configs_dir):
    data = json.loads((configs_dir / "chip.json").read_text())
    data["propagation"]["grid"]["nx"] = 100
    config = _write(tmp_path / "odd_grid.json", data)
    out = tmp_path / "run"
    assert main(["chip-run", "--config", str(config), "--out", str(out), "--quiet"]) == EXIT_CONFIG
    assert (out / "error.txt").read_text().startswith("error=config")
    assert not (out / "data").exists()


def test_step_guard_is_a_runtime_failure(tmp_path, configs_dir, capsys):
    data = json.loads((configs_dir / "three_level.json").read_text())
    data["propagation"]["dt"] = 0.01
    config = _write(tmp_path / "coarse.json", data)
    out = tmp_path / "run"
    assert main(["three-level-run", "--config", str(config), "--out", str(out), "--quiet"]) == EXIT_RUNTIME
    assert "error=step-guard" in capsys.readouterr().err
    assert (out / "error.txt").exists()


def test_wrong_scenario_for_command(tmp_path, three_level_config):
    out = tmp_path / "run"
    assert main(["model-run", "--config", str(three_level_config), "--out", str(out), "--quiet"]) == EXIT_CONFIG


def test_tune_current(tmp_path, configs_dir):
    outer = json.loads((configs_dir / "chip.json").read_text())["geometry"]["outer_current_A"]
    out = tmp_path / "tune"
    assert main(["tune-current", "--config", str(configs_dir / "chip.json"), "--out", str(out), "--quiet"]) == 0
    columns, rows = read_csv(out / "data" / "tuning.csv")
    assert columns[0] == "middle_current_A"
    assert 0.0 < rows[0, 0] < outer
    _, wells = read_csv(out / "data" / "wells.csv")
    assert wells.shape == (3, 5)
    assert json.loads((out / "manifest.json").read_text())["results"]["reached"]


@pytest.fixture
def chip_config(tmp_path, configs_dir):
    """The shipped chip config on a coarse grid, with the outer wires only creeping in to 8.5 um."""
    data = json.loads((configs_dir / "chip.json").read_text())
    data["geometry"].update(closest_approach_um=8.5, outer_current_A=2e-4, middle_current_A=1.5e-4,
                            bias_field_G=0.2, ioffe_field_G=1.0, tune_middle_current=False)
    data["propagation"].update(
        grid={"nx": 64, "ny": 32, "x_min": -16.0, "x_max": 16.0, "y_min": 0.05, "y_max": 16.05},
        dt=0.002, potential_cap=100.0, ground_state_dt=0.005, snapshot_interval=250)
    data["schedule"].update(duration_s=4e-4, approach_duration_s=8e-5, offset_s=8e-5, settle_s=0.0)
    return _write(tmp_path / "chip.json", data)


def test_chip_run(tmp_path, chip_config, capsys):
    out = tmp_path / "chip"
    assert main(["chip-run", "--config", str(chip_config), "--out", str(out), "--quiet"]) == 0
    assert "fidelity=" in capsys.readouterr().out
    columns, rows = read_csv(out / "data" / "observables.csv")
    assert columns == ["t", "norm", "energy", "P_left", "P_middle", "P_right"]
    np.testing.assert_allclose(rows[:, 1], 1.0, atol=1e-10)
    assert rows[0, 3] >= 0.999
    assert rows[-1, 3] >= 0.99
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["results"]["middle_current_A"] == pytest.approx(1.5e-4)
    assert "snapshots/snapshots.h5" in manifest["files"]
    assert not (out / "error.txt").exists()


def _mirror_x(values):
    return np.roll(values[::-1, :], 1, axis=0)


def test_chip_potential_snapshot(tmp_path, chip_config):
    out = tmp_path / "snap"
    assert main(["potential-snapshot", "--config", str(chip_config), "--out", str(out), "--quiet"]) == 0
    x, _, equal = read_potential(out / "data" / "potential_equal_spacing.csv")
    _, _, closest = read_potential(out / "data" / "potential_closest_approach.csv")
    assert equal.shape == closest.shape == (64, 32)
    assert x[0] == -16.0
    assert equal.min() >= -1e-9 and equal.max() <= 100.0
    np.testing.assert_allclose(_mirror_x(equal), equal, rtol=0.0, atol=1e-9)
    assert np.abs(_mirror_x(closest) - closest).max() > 1.0

    results = json.loads((out / "manifest.json").read_text())["results"]
    lower, upper = results["equal_spacing"]["boundaries"]
    assert lower == pytest.approx(-upper)
    assert not results["closest_approach"]["degraded"]


def test_chip_ground_state(tmp_path, chip_config, capsys):
    out = tmp_path / "ground"
    assert main(["ground-state", "--config", str(chip_config), "--out", str(out), "--quiet"]) == 0
    assert "energy=" in capsys.readouterr().out
    columns, rows = read_csv(out / "data" / "ground_state.csv")
    assert columns == ["x", "y", "psi_re", "psi_im"]
    density = rows[:, 2] ** 2 + rows[:, 3] ** 2
    cell = (32.0 / 64) * (16.0 / 32)
    assert density.sum() * cell == pytest.approx(1.0, abs=1e-9)
    assert density[rows[:, 0] < -4.0].sum() * cell >= 0.99
    assert json.loads((out / "manifest.json").read_text())["results"]["energy"] > 0.0


def test_model_potential_snapshot(tmp_path):
    config = _write(tmp_path / "model.json", {
        "scenario": "model",
        "geometry": {"coupling_length": 40.0},
        "propagation": {"dt": 0.005, "grid": {"nx": 32, "ny": 64, "x_min": -12.0, "x_max": 12.0,
                                              "y_min": -64.0, "y_max": 64.0}},
        "schedule": {"offset": 8.0},
    })
    out = tmp_path / "snap"
    assert main(["potential-snapshot", "--config", str(config), "--out", str(out), "--quiet"]) == 0
    x, y, values = read_potential(out / "data" / "potential_model.csv")
    assert values.shape == (32, 64)
    assert x[0] == -12.0 and x[1] - x[0] == pytest.approx(24.0 / 32)
    assert y[0] == -64.0 and y[-1] == pytest.approx(64.0 - 2.0)
    assert values.min() >= 0.0
