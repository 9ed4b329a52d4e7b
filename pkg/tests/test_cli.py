"""Config parsing and command-line interface tests."""

import json

import numpy as np
import pytest
import yaml

from adnoise.cli import EXIT_CAPACITY, EXIT_VALIDATION, OUT_ENV_VAR, main
from adnoise.config import FrequencyGrid, load_config, parse_config
from adnoise.errors import DomainError

BASE_CONFIG = {
    "potential": {
        "U0_meV": 250.0,
        "z0_angstrom": 3.1,
        "beta0_per_angstrom": 1.86,
        "mass_amu": 100.0,
        "polarizability_angstrom3": 4.04,
    },
    "material": {
        "phonon_speed_m_per_s": 3240.0,
        "bulk_density_amu_per_angstrom3": 11.66,
        "adatom_density_per_angstrom2": 2e-3,
    },
    "model": {
        "levels_M": 3,
        "temperature_ratios": [0.2, 1.0],
        "patch_sizes_N": [1, 2],
        "transition_set": "all-pairs",
    },
    "patch_distribution": {"form": "one_over_N", "N_max": 6},
    "frequency_grid": {"min_over_gamma0": 1e-1, "max_over_gamma0": 10.0,
                       "points_per_decade": 5},
}


@pytest.fixture()
def config_file(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(yaml.safe_dump(BASE_CONFIG))
    return str(path)


def test_parse_config_roundtrip(config_file):
    cfg = load_config(config_file)
    assert cfg.potential.U0 == 250.0
    assert cfg.material.bulk_density == 11.66
    assert cfg.levels_m == 3
    assert cfg.patch_sizes == (1, 2)
    assert cfg.patch_distribution().n_max == 6
    assert len(cfg.content_hash()) == 12


def test_config_hash_tracks_content():
    a = parse_config(BASE_CONFIG)
    changed = json.loads(json.dumps(BASE_CONFIG))
    changed["potential"]["U0_meV"] = 260.0
    b = parse_config(changed)
    assert a.content_hash() != b.content_hash()


def test_missing_key_rejected():
    broken = json.loads(json.dumps(BASE_CONFIG))
    del broken["potential"]["z0_angstrom"]
    with pytest.raises(DomainError):
        parse_config(broken)


def test_frequency_grid():
    grid = FrequencyGrid(min_over_gamma0=0.1, max_over_gamma0=10.0,
                         points_per_decade=10)
    w = grid.omegas(2.0)
    assert w[0] == pytest.approx(0.2)
    assert w[-1] == pytest.approx(20.0)
    assert len(w) == 21
    with pytest.raises(DomainError):
        FrequencyGrid(min_over_gamma0=1.0, max_over_gamma0=0.1)


def test_cli_levels(config_file, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["levels", "--config", config_file, "--out", str(out)]) == 0
    payload = json.loads((out / "levels.json").read_text())
    assert len(payload["energies_meV"]) == 3
    assert payload["coverage"] > 1
    assert payload["version"]
    assert len(payload["config_hash"]) == 12
    assert "correlated regime" in capsys.readouterr().out


def test_cli_spectrum_outputs(config_file, tmp_path):
    out = tmp_path / "out"
    assert main(["spectrum", "--config", config_file, "--out", str(out),
                 "--top-k", "2"]) == 0
    for n in (1, 2):
        for t in ("0.2", "1"):
            assert (out / f"decomposition_N{n}_T{t}.json").exists()
            assert (out / f"spectrum_N{n}_T{t}.csv").exists()
            assert (out / f"spectrum_N{n}_T{t}_top2.csv").exists()
    body = (out / "spectrum_N1_T0.2.csv").read_text().splitlines()
    assert body[0].startswith("# config_hash=")
    header = [l for l in body if not l.startswith("#")][0]
    assert header == "omega_per_s,omega_over_Gamma0,S_debye2_s"
    rows = [l for l in body if not l.startswith("#")][1:]
    s_vals = np.array([float(r.split(",")[2]) for r in rows])
    assert np.all(s_vals > 0) and np.all(np.diff(s_vals) < 0)
    summary = (out / "white_noise_per_adatom.csv").read_text()
    assert summary.count("\n") >= 5


def test_cli_pink(config_file, tmp_path):
    out = tmp_path / "out"
    assert main(["pink", "--config", config_file, "--out", str(out)]) == 0
    for name in ("pink_finite_sum.csv", "pink_closed_form.csv"):
        lines = [l for l in (out / name).read_text().splitlines()
                 if not l.startswith("#")]
        assert lines[0].endswith("loglog_slope")
        slopes = [float(l.split(",")[3]) for l in lines[1:]]
        assert all(s < 0 for s in slopes)


def test_cli_validate_pass_and_fault(config_file, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["validate", "--config", config_file, "--out", str(out),
                 "--seed", "5"]) == 0
    report = json.loads((out / "validation.json").read_text())
    assert report["all_passed"]
    printed = capsys.readouterr().out
    assert "[PASS]" in printed and "[FAIL]" not in printed

    rc = main(["validate", "--config", config_file, "--out", str(out),
               "--seed", "5", "--fault-inject", "detailed-balance"])
    assert rc == EXIT_VALIDATION
    report = json.loads((out / "validation.json").read_text())
    assert not report["all_passed"]


def test_cli_sweep_matches_spectrum(config_file, tmp_path):
    serial = tmp_path / "serial"
    threaded = tmp_path / "threaded"
    assert main(["spectrum", "--config", config_file, "--out", str(serial)]) == 0
    assert main(["sweep", "--config", config_file, "--out", str(threaded),
                 "--threads", "3"]) == 0
    a = (serial / "spectrum_N2_T1.csv").read_text()
    b = (threaded / "spectrum_N2_T1.csv").read_text()
    assert a == b


def test_cli_out_env_var(config_file, tmp_path, monkeypatch):
    target = tmp_path / "env_out"
    monkeypatch.setenv(OUT_ENV_VAR, str(target))
    assert main(["levels", "--config", config_file]) == 0
    assert (target / "levels.json").exists()


def test_cli_bad_config_exit_code(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("potential: {U0_meV: -5}\n")
    assert main(["levels", "--config", str(bad)]) == EXIT_CAPACITY
    assert main(["levels", "--config", str(tmp_path / "missing.yaml")]) \
        == EXIT_CAPACITY


def test_cli_capacity_exit_code(tmp_path):
    huge = json.loads(json.dumps(BASE_CONFIG))
    huge["model"]["levels_M"] = 10
    huge["model"]["patch_sizes_N"] = [60]
    path = tmp_path / "huge.yaml"
    path.write_text(yaml.safe_dump(huge))
    assert main(["spectrum", "--config", str(path),
                 "--out", str(tmp_path / "o")]) == EXIT_CAPACITY
