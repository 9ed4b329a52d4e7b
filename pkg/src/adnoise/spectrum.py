"""Exact Lorentzian decomposition of the dipole noise spectrum and patch sums.

The spectrum of N correlated M-level fluctuators decomposes exactly into
C(N+M-1, N) - 1 Lorentzians,

    S(w) = sum_k C_k * (-lambda_k) / (lambda_k^2 + w^2),

one per relaxation mode of the population generator.  Patch aggregation with
a 1/N size distribution produces 1/f behavior above w ~ Gamma0; the infinite
sum has the closed form (C/2) * (-Gamma0/w^2 + pi*coth(pi w/Gamma0)/w).
"""

from dataclasses import dataclass, field

import numpy as np

from .basis import basis_dipoles
from .errors import DomainError


@dataclass(frozen=True)
class SpectralDecomposition:
    """Lorentzian pairs (lambda_k < 0, C_k >= 0), steady mode excluded.

    lambdas in 1/s, weights in debye^2; provenance carries (N, M, T/omega0)
    and whatever extra identifies the generating model.
    """

    lambdas: np.ndarray
    weights: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        c = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "weights", c)
        if lam.shape != c.shape or lam.ndim != 1:
            raise DomainError("lambdas and weights must be matching 1-D arrays")
        if np.any(lam >= 0):
            raise DomainError("all retained eigenvalues must be strictly negative")
        if np.any(c < 0):
            raise DomainError("Lorentzian weights must be non-negative")

    @property
    def variance(self):
        """Zero-lag value sum_k C_k / 2 = Var_ss(D) (debye^2)."""
        return 0.5 * float(self.weights.sum())

    def truncated(self, top_k):
        """Keep the top_k pairs ranked by zero-frequency contribution |C_k/lambda_k|."""
        if top_k < 1:
            raise DomainError("top_k must be >= 1")
        rank = np.argsort(-self.weights / -self.lambdas)
        keep = np.sort(rank[:top_k])
        prov = dict(self.provenance, truncated_to=int(min(top_k, len(keep))))
        return SpectralDecomposition(self.lambdas[keep], self.weights[keep], prov)

    def to_dict(self):
        return {
            "lambdas_per_s": self.lambdas.tolist(),
            "weights_debye2": self.weights.tolist(),
            "provenance": {k: v for k, v in self.provenance.items()},
        }


@dataclass(frozen=True)
class PatchDistribution:
    """Relative weights D(N) over patch sizes N = 1..N_max."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.ndim != 1 or len(w) < 1:
            raise DomainError("weights must be a non-empty 1-D array")
        if np.any(w < 0) or not np.any(w > 0):
            raise DomainError("weights must be non-negative with at least one positive")

    @property
    def n_max(self):
        return len(self.weights)

    def weight(self, n):
        return float(self.weights[n - 1])

    @property
    def sizes(self):
        return [n for n in range(1, self.n_max + 1) if self.weights[n - 1] > 0]

    @classmethod
    def delta(cls, n0, n_max=None):
        n_max = n_max or n0
        w = np.zeros(n_max)
        w[n0 - 1] = 1.0
        return cls(w)

    @classmethod
    def one_over_n(cls, n_max):
        return cls(1.0 / np.arange(1, n_max + 1))

    @classmethod
    def from_table(cls, table):
        n_max = max(table)
        w = np.zeros(n_max)
        for n, v in table.items():
            w[n - 1] = v
        return cls(w)


def lorentzian_weights(ed, basis, levels, extra_provenance=None):
    """Exact Lorentzian weights C_k = 2 (sum_i D_i s_i Q_ik)^2, steady mode dropped.

    Uses the symmetrized eigenvectors: with s = sqrt(rho_ss) and orthogonal Q,
    C_k = 2 (D^T A^-1)_k (A (D rho_ss))_k collapses to a perfect square, which
    also proves C_k >= 0 and hence S(w) > 0.
    """
    if ed.ortho.shape[0] != len(basis):
        raise DomainError("eigendecomposition and basis dimensions disagree")
    d_states = basis_dipoles(basis, levels)
    proj = (d_states * ed.sqrt_weights) @ ed.ortho
    c = 2.0 * proj ** 2
    keep = np.arange(len(c)) != ed.steady_index
    prov = {"N": basis.N, "M": basis.M}
    if extra_provenance:
        prov.update(extra_provenance)
    return SpectralDecomposition(ed.eigenvalues[keep], c[keep], prov)


def evaluate_spectrum(sd, omega):
    """S(omega) = sum_k C_k (-lambda_k) / (lambda_k^2 + omega^2) in debye^2 * s.

    Even in omega, positive, and monotonically non-increasing in |omega|.
    """
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    if not np.all(np.isfinite(w)):
        raise DomainError("frequencies must be finite")
    lam = sd.lambdas
    s = (sd.weights * -lam) @ (1.0 / (lam[:, None] ** 2 + w[None, :] ** 2))
    return s if np.ndim(omega) else float(s[0])


def low_temperature_spectrum(n_adatoms, levels, thermal):
    """One-Lorentzian low-T model: lambda = -N*Gamma0, C = 2 (d1-d2)^2 T.

    Leading order of the perturbative expansion in the Boltzmann factor
    T = exp(-beta omega_0); exact up to O(T^2) corrections.
    """
    if levels.count < 2:
        raise DomainError("need at least two levels")
    gamma0 = levels.rates[0, 1]
    if gamma0 <= 0:
        raise DomainError("fundamental rate Gamma0[0,1] must be positive")
    t = thermal.boltzmann_factor
    c = 2.0 * (levels.dipoles[0] - levels.dipoles[1]) ** 2 * t
    return SpectralDecomposition(
        np.array([-n_adatoms * gamma0]),
        np.array([c]),
        {"N": n_adatoms, "M": 2, "model": "low-temperature"},
    )


def second_order_white_noise(n_adatoms, delta, levels, thermal):
    """Second-order white-noise coefficient C_2(N, delta) (debye^2 * s).

    Nearest-neighbor three-level expansion:

        C_2 = 2 (d1-d2)^2 (3N-1) / ((N-1) N G12)
            + 2 (d1-d3) (2 (d1-d2)/(N G12) + (d1-d3)/G23) exp(beta delta)

    Diverges at N = 1 (the (N-1) denominator), so N >= 2 is required.
    """
    if n_adatoms < 2:
        raise DomainError("C_2(N, delta) is defined for N >= 2 only")
    if levels.count < 3:
        raise DomainError("need at least three levels for the second-order term")
    d1, d2, d3 = levels.dipoles[:3]
    g12 = levels.rates[0, 1]
    g23 = levels.rates[1, 2]
    if g12 <= 0 or g23 <= 0:
        raise DomainError("nearest-neighbor rates must be positive")
    bd = thermal.beta_omega(delta)
    n = n_adatoms
    return (2.0 * (d1 - d2) ** 2 * (3 * n - 1) / ((n - 1) * n * g12)
            + 2.0 * (d1 - d3) * (2.0 * (d1 - d2) / (n * g12)
                                 + (d1 - d3) / g23) * np.exp(bd))


def aggregate_patches(spectra, dist, omega):
    """S_tot(w) = sum_N D(N) S_N(w) over a patch-size distribution."""
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    total = np.zeros_like(w)
    for n in dist.sizes:
        if n not in spectra:
            raise DomainError(f"no spectrum available for patch size N={n}")
        total += dist.weight(n) * evaluate_spectrum(spectra[n], w)
    return total if np.ndim(omega) else float(total[0])


def pink_noise_closed_form(gamma0, amplitude, omega, series_cutoff=1e-3):
    """Infinite 1/N patch sum: (C/2) (-Gamma0/w^2 + pi coth(pi w/Gamma0)/w).

    Below w/Gamma0 = series_cutoff the expression switches to its Taylor
    series, C (pi^2/(6 Gamma0) - pi^4 w^2/(90 Gamma0^3)), to avoid the
    catastrophic cancellation between the two diverging terms.
    """
    if gamma0 <= 0:
        raise DomainError("gamma0 must be positive")
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise DomainError("frequencies must be finite and non-negative")
    x = w / gamma0
    small = x < series_cutoff
    out = np.empty_like(x)
    out[small] = amplitude * (np.pi ** 2 / 6.0 - np.pi ** 4 * x[small] ** 2 / 90.0) / gamma0
    xb = x[~small]
    out[~small] = (amplitude / 2.0) * (-1.0 / xb ** 2
                                       + np.pi / np.tanh(np.pi * xb) / xb) / gamma0
    return out if np.ndim(omega) else float(out[0])


def log_log_slope(omega, s):
    """Local log-log slope d ln S / d ln w (same length as omega)."""
    return np.gradient(np.log(s), np.log(omega))
