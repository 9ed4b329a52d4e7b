"""Desk-scale self-validation suite: invariants plus oracle cross-checks.

Each check returns (name, passed, detail).  The suite is deterministic given
a seed and is intentionally small enough to run in seconds; the pytest suite
covers the same ground at higher resolution.
"""

from math import comb

import numpy as np

from . import basis as basis_mod
from . import master as master_mod
from . import oracle as oracle_mod
from . import spectrum as spectrum_mod
from .errors import NumericalError
from .potential import LevelStructure

FAULTS = ("detailed-balance",)


def _toy_levels(m=3, delta_over_omega0=0.02):
    """Synthetic level structure in scaled units (Gamma0 = 1, hbar omega0 = 1 meV)."""
    base = -50.0
    spacing = [1.0 - k * delta_over_omega0 for k in range(m - 1)]
    energies = base + np.concatenate(([0.0], np.cumsum(spacing)))
    dipoles = np.linspace(1.0, 1.0 - 0.2 * (m - 1), m)
    rates = np.zeros((m, m))
    for k in range(m - 1):
        rates[k, k + 1] = rates[k + 1, k] = 1.0 + 0.4 * k
    if m > 2:
        rates[0, 2] = rates[2, 0] = 0.3
    return LevelStructure(energies=energies, dipoles=dipoles, rates=rates)


def _thermal(levels, ratio):
    return master_mod.ThermalParams(temperature_ratio=ratio,
                                    omega0=levels.omega(0, 1))


def detailed_balance_residual(rm):
    """Max relative pairwise detailed-balance violation over connected pairs."""
    mat = rm.matrix
    be = rm.beta_energies
    worst = 0.0
    for (i, j) in rm.transitions:
        fwd = mat[i, j] * np.exp(-(be[j] - be.min()))
        bwd = mat[j, i] * np.exp(-(be[i] - be.min()))
        scale = max(abs(fwd), abs(bwd))
        if scale > 0:
            worst = max(worst, abs(fwd - bwd) / scale)
    return worst


def run_checks(seed=0, fault=None):
    """Run all validation checks; returns a list of check dicts."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; choose from {FAULTS}")
    checks = []

    def record(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    # basis size formula against brute-force recursion
    ok = all(len(basis_mod.enumerate_basis(n, m)) == comb(n + m - 1, n)
             for n in (1, 2, 5) for m in (2, 3, 5))
    record("basis-size-formula", ok, "C(N+M-1,N) state count")

    levels = _toy_levels()
    th = _thermal(levels, 0.5)
    basis = basis_mod.enumerate_basis(4, levels.count)
    rm = master_mod.build_rate_matrix(basis, levels, th)
    if fault == "detailed-balance":
        # scale one off-diagonal rate; keep columns summing to zero so the
        # result is still a valid generator, just no longer reversible
        mat = rm.matrix.copy()
        (i, j) = next(iter(rm.transitions))
        mat[j, j] -= 0.5 * mat[i, j]
        mat[i, j] *= 1.5
        rm = master_mod.RateMatrix(matrix=mat, basis=rm.basis,
                                   beta_energies=rm.beta_energies,
                                   transitions=rm.transitions)

    col = np.abs(rm.matrix.sum(axis=0)).max()
    record("generator-column-sums", col <= 1e-12 * np.abs(rm.matrix).max(),
           f"max column sum {col:.3e}")

    resid = detailed_balance_residual(rm)
    record("detailed-balance", resid < 1e-12, f"max relative residual {resid:.3e}")

    rho = master_mod.steady_state(rm)
    boltz = rm.boltzmann_weights()
    dev = np.abs(rho - boltz).max()
    record("steady-state-boltzmann", dev < 1e-10, f"max deviation {dev:.3e}")

    w = np.logspace(-2, 2, 41) * levels.rates[0, 1]
    try:
        ed = master_mod.decompose(rm)
        sd = spectrum_mod.lorentzian_weights(ed, basis, levels)
    except NumericalError as exc:
        record("lorentzian-pair-count", False, f"decomposition failed: {exc}")
        record("zero-lag-sum-rule", False, "skipped: decomposition failed")
        record("spectrum-positivity", False, "skipped: decomposition failed")
        sd = None
    if sd is not None:
        n_pairs = len(sd.lambdas)
        record("lorentzian-pair-count", n_pairs == len(basis) - 1,
               f"{n_pairs} pairs for dim {len(basis)}")

        d_states = basis_mod.basis_dipoles(basis, levels)
        var = float(rho @ (d_states - d_states @ rho) ** 2)
        rel = abs(sd.variance - var) / var
        record("zero-lag-sum-rule", rel < 1e-8, f"relative error {rel:.3e}")

        s = spectrum_mod.evaluate_spectrum(sd, w)
        record("spectrum-positivity", bool(np.all(s > 0)), "S(w) > 0 on the grid")

    th_low = _thermal(levels, 0.15)
    rm_low = master_mod.build_rate_matrix(basis, levels, th_low)
    sd_low = spectrum_mod.lorentzian_weights(master_mod.decompose(rm_low),
                                             basis, levels)
    approx = spectrum_mod.low_temperature_spectrum(basis.N, levels, th_low)
    rel = abs(spectrum_mod.evaluate_spectrum(sd_low, 0.0)
              - spectrum_mod.evaluate_spectrum(approx, 0.0)) \
        / spectrum_mod.evaluate_spectrum(sd_low, 0.0)
    # leading corrections are O(N * boltzmann_factor) for an N-adatom patch
    record("low-temperature-limit",
           rel < 5 * basis.N * th_low.boltzmann_factor,
           f"S(0) relative gap {rel:.3e}")

    if sd is not None:
        gamma0 = levels.rates[0, 1]
        tau = np.arange(0, 2000) * (0.01 / gamma0)
        s_corr, _ = oracle_mod.correlator_spectrum(rm, basis, levels, tau, w)
        rel = np.abs(s_corr - s).max() / s.max()
        record("correlator-oracle", rel < 5e-3, f"max relative gap {rel:.3e}")
    else:
        record("correlator-oracle", False, "skipped: decomposition failed")

    small_basis = basis_mod.enumerate_basis(1, 2)
    lv2 = _toy_levels(m=2)
    rm2 = master_mod.build_rate_matrix(small_basis, lv2, _thermal(lv2, 1.0))
    cfg = oracle_mod.TrajectoryConfig(duration=400.0, burn_in=10.0, seed=seed,
                                      trajectories=24, sampling_dt=0.02)
    est = oracle_mod.gillespie_spectrum(rm2, small_basis, lv2, cfg)
    rho2 = master_mod.steady_state(rm2)
    occ_dev = np.abs(est.occupancy - rho2).max()
    record("gillespie-occupancy", occ_dev < 0.05,
           f"occupancy deviation {occ_dev:.3f}")

    return checks
