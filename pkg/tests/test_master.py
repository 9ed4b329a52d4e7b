"""Rate-matrix construction, steady state, and eigendecomposition tests."""

import numpy as np
import pytest

from adnoise import (
    ThermalParams,
    build_rate_matrix,
    decompose,
    enumerate_basis,
    steady_state,
)
from adnoise.errors import DomainError, NumericalError, ReducibilityError
from adnoise.master import RateMatrix, symmetrized_generator

from conftest import scaled_levels, thermal_for


@pytest.fixture(scope="module")
def toy_setup():
    lv = scaled_levels(m=3, rate_step=0.4)
    basis = enumerate_basis(3, lv.count)
    th = thermal_for(lv, 0.5)
    return lv, basis, th, build_rate_matrix(basis, lv, th)


def test_columns_sum_to_zero(toy_setup):
    _, _, _, rm = toy_setup
    col = np.abs(rm.matrix.sum(axis=0)).max()
    assert col <= 1e-12 * np.abs(rm.matrix).max()


def test_off_diagonal_nonnegative(toy_setup):
    _, _, _, rm = toy_setup
    off = rm.matrix - np.diag(np.diag(rm.matrix))
    assert np.all(off >= 0)
    assert np.all(np.diag(rm.matrix) < 0)


def test_two_state_rates_analytic():
    """N=1, M=2: emission Gamma0/(1-T'), absorption Gamma0*T'/(1-T')."""
    lv = scaled_levels(m=2)
    basis = enumerate_basis(1, 2)
    th = thermal_for(lv, 0.5)
    rm = build_rate_matrix(basis, lv, th)
    bw = th.beta_omega(lv.omega(0, 1))
    f = lv.rates[0, 1] / (1.0 - np.exp(-bw))
    down = rm.matrix[basis.index[(1, 0)], basis.index[(0, 1)]]
    up = rm.matrix[basis.index[(0, 1)], basis.index[(1, 0)]]
    assert down == pytest.approx(f)
    assert up == pytest.approx(f * np.exp(-bw))


def test_superradiant_enhancement():
    """The N-excitation emission out of (N-1, 1) carries the factor N."""
    lv = scaled_levels(m=2)
    th = thermal_for(lv, 0.5)
    rates = {}
    for n in (1, 4):
        basis = enumerate_basis(n, 2)
        rm = build_rate_matrix(basis, lv, th)
        src = basis.index[(n - 1, 1)]
        dst = basis.index[(n, 0)]
        rates[n] = rm.matrix[dst, src]
    assert rates[4] == pytest.approx(4 * rates[1])


def test_steady_state_is_boltzmann(toy_setup):
    _, _, _, rm = toy_setup
    rho = steady_state(rm)
    assert rho == pytest.approx(rm.boltzmann_weights(), abs=1e-12)
    assert rho.sum() == pytest.approx(1.0)


def test_reducible_chain_detected():
    """Zero rates split the chain into disconnected components."""
    lv = scaled_levels(m=3)
    lv.rates[0, 1] = lv.rates[1, 0] = 0.0
    lv.rates[0, 2] = lv.rates[2, 0] = 0.0
    basis = enumerate_basis(2, 3)
    rm = build_rate_matrix(basis, lv, thermal_for(lv, 0.5))
    with pytest.raises(ReducibilityError):
        steady_state(rm)


def test_symmetrized_generator_is_symmetric(toy_setup):
    _, _, _, rm = toy_setup
    s = symmetrized_generator(rm)
    assert np.abs(s - s.T).max() <= 1e-12 * np.abs(s).max()


def test_decompose_spectrum_properties(toy_setup):
    _, basis, _, rm = toy_setup
    ed = decompose(rm)
    assert ed.eigenvalues[0] == 0.0
    assert np.all(ed.eigenvalues[1:] < 0)
    assert np.all(np.diff(ed.eigenvalues) <= 0)
    # orthonormal modes
    gram = ed.ortho.T @ ed.ortho
    assert np.abs(gram - np.eye(len(basis))).max() < 1e-8
    # steady right eigenvector is the Boltzmann distribution
    r0 = ed.right_vectors[:, 0]
    r0 = r0 / r0.sum()
    assert r0 == pytest.approx(rm.boltzmann_weights(), abs=1e-12)
    # left steady eigenvector is flat (probability conservation)
    l0 = ed.left_vectors[0]
    assert np.abs(l0 / l0[0] - 1.0).max() < 1e-8


def test_single_fluctuator_relaxation_rate():
    """N=1, M=2: the relaxation eigenvalue is exactly
    -Gamma0 (1 + T') / (1 - T') (sum of the two switching rates)."""
    lv = scaled_levels(m=2)
    for ratio in (0.2, 1.0):
        th = thermal_for(lv, ratio)
        tp = np.exp(-th.beta_omega(lv.omega(0, 1)))
        ed = decompose(build_rate_matrix(enumerate_basis(1, 2), lv, th))
        expected = -lv.rates[0, 1] * (1.0 + tp) / (1.0 - tp)
        assert ed.eigenvalues[1] == pytest.approx(expected, rel=1e-12)


def test_dominant_rate_scales_with_patch_size():
    """Low temperature: the dominant relaxation mode sits at -N * Gamma0."""
    lv = scaled_levels(m=2)
    th = thermal_for(lv, 0.1)
    from adnoise import basis_dipoles, lorentzian_weights

    for n in (1, 3, 6):
        basis = enumerate_basis(n, 2)
        ed = decompose(build_rate_matrix(basis, lv, th))
        sd = lorentzian_weights(ed, basis, lv)
        dominant = sd.lambdas[np.argmax(sd.weights / -sd.lambdas)]
        assert dominant == pytest.approx(-n * lv.rates[0, 1], rel=0.01)


def test_decompose_rejects_non_reversible(toy_setup):
    _, _, _, rm = toy_setup
    mat = rm.matrix.copy()
    (i, j) = next(iter(rm.transitions))
    mat[j, j] -= mat[i, j]
    mat[i, j] *= 2.0
    broken = RateMatrix(matrix=mat, basis=rm.basis,
                        beta_energies=rm.beta_energies,
                        transitions=rm.transitions)
    with pytest.raises(NumericalError):
        decompose(broken)


def test_extreme_temperature_no_overflow():
    """beta*omega ~ 400 must not overflow the symmetrization."""
    lv = scaled_levels(m=3)
    basis = enumerate_basis(2, 3)
    rm = build_rate_matrix(basis, lv, thermal_for(lv, 0.005))
    ed = decompose(rm)
    assert np.all(np.isfinite(ed.eigenvalues))
    assert np.all(np.isfinite(ed.ortho))


def test_thermal_params_validation():
    with pytest.raises(DomainError):
        ThermalParams(temperature_ratio=0.0, omega0=1.0)
    with pytest.raises(DomainError):
        ThermalParams(temperature_ratio=1.0, omega0=-1.0)
    th = ThermalParams(temperature_ratio=0.5, omega0=2.0)
    assert th.boltzmann_factor == pytest.approx(np.exp(-2.0))
    assert th.beta_omega(2.0) == pytest.approx(2.0)


def test_transition_set_nearest_neighbor():
    lv = scaled_levels(m=3, rate_step=0.4)
    lv.rates[0, 2] = lv.rates[2, 0] = 0.5
    basis = enumerate_basis(1, 3)
    rm_all = build_rate_matrix(basis, lv, thermal_for(lv, 0.5))
    rm_nn = build_rate_matrix(basis, lv, thermal_for(lv, 0.5),
                              transition_set="nearest-neighbor")
    i02 = (basis.index[(0, 0, 1)], basis.index[(1, 0, 0)])
    assert rm_all.matrix[i02] > 0
    assert rm_nn.matrix[i02] == 0.0
    with pytest.raises(DomainError):
        build_rate_matrix(basis, lv, thermal_for(lv, 0.5),
                          transition_set="bogus")
