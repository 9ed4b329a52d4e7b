"""Shared fixtures: a pinned physical parameter set plus scaled toy models.

The physical fixture (a heavy adatom on a gold-like surface) is solved once
per session; scaled toy structures (Gamma0 = 1, hbar omega0 = 1 meV) keep the
algebraic tests fast and unit-free.
"""

import numpy as np
import pytest

from adnoise import (
    LevelStructure,
    MaterialParams,
    PotentialParams,
    ThermalParams,
    build_rate_matrix,
    decompose,
    enumerate_basis,
    evaluate_spectrum,
    lorentzian_weights,
    solve_bound_states,
)
from adnoise.units import omega_from_mev


@pytest.fixture(scope="session")
def potential_params():
    return PotentialParams(U0=250.0, z0=3.1, beta0=1.86, mass=100.0,
                           polarizability=4.04)


@pytest.fixture(scope="session")
def material_params():
    return MaterialParams(phonon_speed=3240.0, bulk_density=11.66,
                          adatom_density=2e-3)


@pytest.fixture(scope="session")
def solved_levels(potential_params, material_params):
    """Ten bound levels of the physical fixture."""
    return solve_bound_states(potential_params, material_params, max_levels=10)


def sub_levels(levels, m):
    """Restrict a LevelStructure to its lowest m levels."""
    return LevelStructure(energies=levels.energies[:m],
                          dipoles=levels.dipoles[:m],
                          rates=levels.rates[:m, :m])


def scaled_levels(m=3, delta_over_omega0=0.0, rate_step=0.0, dipole_step=0.2):
    """Toy structure in scaled units: Gamma0[0,1] = 1/s, hbar omega0 = 1 meV."""
    spacing = [1.0 - k * delta_over_omega0 for k in range(m - 1)]
    energies = -50.0 + np.concatenate(([0.0], np.cumsum(spacing)))
    dipoles = 1.0 - dipole_step * np.arange(m)
    rates = np.zeros((m, m))
    for k in range(m - 1):
        rates[k, k + 1] = rates[k + 1, k] = 1.0 + rate_step * k
    return LevelStructure(energies=energies, dipoles=dipoles, rates=rates)


def thermal_for(levels, ratio):
    return ThermalParams(temperature_ratio=ratio, omega0=levels.omega(0, 1))


def exact_decomposition(n, levels, ratio, transition_set="all-pairs"):
    basis = enumerate_basis(n, levels.count)
    rm = build_rate_matrix(basis, levels, thermal_for(levels, ratio),
                           transition_set=transition_set)
    return basis, rm, lorentzian_weights(decompose(rm), basis, levels)


def exact_s0(n, levels, ratio, transition_set="all-pairs"):
    """Exact zero-frequency noise S_N(0) (debye^2 * s)."""
    _, _, sd = exact_decomposition(n, levels, ratio, transition_set)
    return evaluate_spectrum(sd, 0.0)


@pytest.fixture(scope="session")
def toy2():
    return scaled_levels(m=2)


@pytest.fixture(scope="session")
def toy3():
    return scaled_levels(m=3, rate_step=0.4)


def omega0_of(levels):
    return omega_from_mev(levels.energies[1] - levels.energies[0])
