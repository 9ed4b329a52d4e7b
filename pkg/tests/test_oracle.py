"""Stochastic and correlator oracle tests against analytic references."""

import numpy as np
import pytest

from adnoise import (
    TrajectoryConfig,
    build_rate_matrix,
    correlator_spectrum,
    decompose,
    enumerate_basis,
    evaluate_spectrum,
    gillespie_spectrum,
    lorentzian_weights,
    steady_state,
)
from adnoise.errors import DomainError, ResolutionError

from conftest import scaled_levels, thermal_for


@pytest.fixture(scope="module")
def telegraph():
    """Single two-level fluctuator: analytically a random telegraph signal."""
    lv = scaled_levels(m=2)
    basis = enumerate_basis(1, 2)
    rm = build_rate_matrix(basis, lv, thermal_for(lv, 1.0))
    return lv, basis, rm


def test_trajectory_config_validation():
    with pytest.raises(DomainError):
        TrajectoryConfig(duration=1.0, burn_in=2.0)
    with pytest.raises(DomainError):
        TrajectoryConfig(duration=1.0, trajectories=0)
    with pytest.raises(DomainError):
        TrajectoryConfig(duration=1.0, sampling_dt=0.0)


def test_seed_reproducibility(telegraph):
    lv, basis, rm = telegraph
    cfg = TrajectoryConfig(duration=120.0, burn_in=5.0, seed=7,
                           trajectories=4, sampling_dt=0.05)
    a = gillespie_spectrum(rm, basis, lv, cfg)
    b = gillespie_spectrum(rm, basis, lv, cfg)
    assert np.array_equal(a.estimate, b.estimate)
    c = gillespie_spectrum(rm, basis, lv,
                           TrajectoryConfig(duration=120.0, burn_in=5.0,
                                            seed=8, trajectories=4,
                                            sampling_dt=0.05))
    assert not np.array_equal(a.estimate, c.estimate)


def test_telegraph_spectrum_within_errors(telegraph):
    lv, basis, rm = telegraph
    sd = lorentzian_weights(decompose(rm), basis, lv)
    cfg = TrajectoryConfig(duration=520.0, burn_in=20.0, seed=11,
                           trajectories=60, sampling_dt=0.02)
    est = gillespie_spectrum(rm, basis, lv, cfg)
    analytic = evaluate_spectrum(sd, est.omega)
    sigma = np.abs(est.estimate - analytic) / est.stderr
    assert np.mean(sigma <= 3.0) >= 0.95
    # occupancy tracks the steady state
    assert np.abs(est.occupancy - steady_state(rm)).max() < 0.02


def test_alias_cutoff_restricts_band(telegraph):
    lv, basis, rm = telegraph
    cfg = TrajectoryConfig(duration=120.0, burn_in=5.0, seed=1,
                           trajectories=2, sampling_dt=0.05)
    est = gillespie_spectrum(rm, basis, lv, cfg, alias_cutoff=0.2)
    assert est.omega.max() * cfg.sampling_dt <= 0.2
    assert est.omega.min() > 0


def test_sampled_spectrum_to_dict(telegraph):
    lv, basis, rm = telegraph
    sd = lorentzian_weights(decompose(rm), basis, lv)
    cfg = TrajectoryConfig(duration=120.0, burn_in=5.0, seed=2,
                           trajectories=4, sampling_dt=0.05)
    est = gillespie_spectrum(rm, basis, lv, cfg)
    payload = est.to_dict(analytic=evaluate_spectrum(sd, est.omega))
    assert payload["config"]["seed"] == 2
    assert len(payload["estimate"]) == len(payload["omega_per_s"])
    assert payload["max_sigma_deviation"] > 0


def test_correlator_matches_exact_decomposition():
    lv = scaled_levels(m=3, rate_step=0.4)
    basis = enumerate_basis(2, 3)
    rm = build_rate_matrix(basis, lv, thermal_for(lv, 0.5))
    sd = lorentzian_weights(decompose(rm), basis, lv)

    omegas = np.logspace(-2, 2, 31) * lv.rates[0, 1]
    lam = np.abs(sd.lambdas)
    dtau = min(0.02 / omegas.max(), 0.02 / lam.max())
    tau = np.arange(0, int(np.ceil(15.0 / lam.min() / dtau)) + 1) * dtau
    s_corr, corr = correlator_spectrum(rm, basis, lv, tau, omegas)

    ref = evaluate_spectrum(sd, omegas)
    assert np.abs(s_corr / ref - 1.0).max() < 5e-4
    # the zero-lag correlator is the steady-state variance
    assert corr[0] == pytest.approx(sd.variance, rel=1e-10)
    assert np.all(corr > 0)
    assert np.all(np.diff(corr) <= 0)


def test_correlator_grid_validation(telegraph):
    lv, basis, rm = telegraph
    with pytest.raises(DomainError):
        correlator_spectrum(rm, basis, lv, np.array([0.0, 0.1, 0.3]), 1.0)
    with pytest.raises(DomainError):
        correlator_spectrum(rm, basis, lv,
                            np.linspace(0.5, 10.0, 100), 1.0)
    with pytest.raises(ResolutionError):
        correlator_spectrum(rm, basis, lv, np.linspace(0.0, 0.5, 100), 1.0)


def test_correlator_scalar_frequency(telegraph):
    lv, basis, rm = telegraph
    tau = np.linspace(0.0, 20.0, 4001)
    s0, _ = correlator_spectrum(rm, basis, lv, tau, 0.0)
    assert isinstance(s0, float)
    sd = lorentzian_weights(decompose(rm), basis, lv)
    assert s0 == pytest.approx(evaluate_spectrum(sd, 0.0), rel=1e-3)
