"""Adatom-surface binding: exp-3 potential, bound levels, dipoles and phonon rates.

The potential combines an exponential repulsive wall with a -1/z^3
van der Waals attraction,

    U(z) = bt/(bt-3) * U0 * [ 3/bt * exp(bt*(1 - z/z0)) - (z0/z)^3 ],

with bt = beta0*z0.  Bound vibrational levels are obtained from a
three-point finite-difference Hamiltonian on a uniform grid; per-level
dipole moments and pairwise one-phonon transition rates follow from
quadrature of the normalized wavefunctions.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.integrate import trapezoid
from scipy.optimize import brentq

from . import units
from .errors import (
    ConvergenceError,
    DomainError,
    InsufficientLevelsError,
    InvalidParametersError,
)


@dataclass(frozen=True)
class PotentialParams:
    """exp-3 surface interaction parameters and adatom properties.

    U0: well depth at z0 (meV); z0: equilibrium distance (angstrom);
    beta0: reciprocal repulsion range (1/angstrom); mass: adatom mass (amu);
    polarizability: atomic polarizability (angstrom^3).
    """

    U0: float
    z0: float
    beta0: float
    mass: float
    polarizability: float = 1.0

    def __post_init__(self):
        for name in ("U0", "z0", "beta0", "mass", "polarizability"):
            if getattr(self, name) <= 0:
                raise InvalidParametersError(f"{name} must be positive")
        if self.beta_tilde <= 4.0:
            raise InvalidParametersError(
                f"beta0*z0 = {self.beta_tilde:.4g} <= 4: the well does not "
                "support a real oscillation frequency"
            )

    @property
    def beta_tilde(self):
        return self.beta0 * self.z0


@dataclass(frozen=True)
class MaterialParams:
    """Surface material properties.

    phonon_speed: sound speed c (m/s); bulk_density: bulk mass density
    (amu/angstrom^3); adatom_density: surface impurity density (1/angstrom^2).
    """

    phonon_speed: float
    bulk_density: float
    adatom_density: float

    def __post_init__(self):
        if self.phonon_speed <= 0 or self.bulk_density <= 0:
            raise InvalidParametersError("phonon_speed and bulk_density must be positive")
        if self.adatom_density < 0:
            raise InvalidParametersError("adatom_density must be non-negative")


@dataclass(frozen=True)
class LevelStructure:
    """Retained bound levels with dipole moments and pairwise phonon rates.

    energies: level energies (meV, negative, strictly increasing);
    dipoles: permanent dipole moments (debye);
    rates: symmetric matrix of one-phonon rates Gamma0 (1/s), rates[mu, nu]
    for the nu <-> mu transition.  Levels are 0-indexed (ground level 0).
    """

    energies: np.ndarray
    dipoles: np.ndarray
    rates: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=float)
        d = np.asarray(self.dipoles, dtype=float)
        g = np.asarray(self.rates, dtype=float)
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "dipoles", d)
        object.__setattr__(self, "rates", g)
        if e.ndim != 1 or len(e) < 2:
            raise DomainError("need at least two levels")
        if np.any(np.diff(e) <= 0):
            raise DomainError("energies must be strictly increasing")
        if np.any(e >= 0):
            raise DomainError("bound-state energies must lie below dissociation (E < 0)")
        if d.shape != e.shape or np.any(d <= 0):
            raise DomainError("dipoles must be positive, one per level")
        if g.shape != (len(e), len(e)) or np.any(g < 0):
            raise DomainError("rates must be a non-negative MxM matrix")
        if not np.allclose(g, g.T):
            raise DomainError("rates matrix must be index-symmetric")

    @property
    def count(self):
        return len(self.energies)

    def omega(self, mu, nu):
        """Transition angular frequency omega_{mu,nu} = omega_nu - omega_mu (1/s)."""
        return units.omega_from_mev(self.energies[nu] - self.energies[mu])

    @property
    def frequencies(self):
        """Matrix of transition angular frequencies (1/s), antisymmetric."""
        w = units.omega_from_mev(self.energies)
        return w[None, :] - w[:, None]

    def to_dict(self):
        """JSON-ready representation."""
        return {
            "energies_meV": self.energies.tolist(),
            "dipoles_debye": self.dipoles.tolist(),
            "rates_per_s": self.rates.tolist(),
        }


def evaluate_potential(p, z):
    """exp-3 potential U(z) in meV; z in angstrom (scalar or array)."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise DomainError("z must be positive")
    bt = p.beta_tilde
    amp = bt / (bt - 3.0) * p.U0
    val = amp * (3.0 / bt * np.exp(bt * (1.0 - z / p.z0)) - (p.z0 / z) ** 3)
    return float(val) if val.ndim == 0 else val


def potential_derivative(p, z):
    """Analytic dU/dz in meV/angstrom."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise DomainError("z must be positive")
    bt = p.beta_tilde
    amp = bt / (bt - 3.0) * p.U0
    val = amp * 3.0 * (-np.exp(bt * (1.0 - z / p.z0)) / p.z0 + p.z0 ** 3 / z ** 4)
    return float(val) if val.ndim == 0 else val


def harmonic_frequency(p):
    """Harmonic fundamental angular frequency omega_0 (1/s).

    omega_0 = sqrt(3 U0 (bt^2 - 4 bt) / (m z0^2 (bt - 3))).  Scales as
    m^(-1/2); requires bt > 4 (enforced at parameter construction).
    """
    bt = p.beta_tilde
    curv = 3.0 * p.U0 * (bt * bt - 4.0 * bt) / (bt - 3.0)  # meV
    hw = np.sqrt(curv * 2.0 * units.kinetic_factor(p.mass) / p.z0 ** 2)  # meV
    return units.omega_from_mev(hw)


def anharmonic_shift(p):
    """Cubic-expansion level-spacing asymmetry delta = omega_0 - omega_23 (1/s).

    delta = 5/24 * hbar/(m z0^2) * (bt^2 - 20)^2 / (bt - 4)^2, which is
    non-negative and vanishes at bt^2 = 20.
    """
    bt = p.beta_tilde
    hbar_over_mz2 = 2.0 * units.kinetic_factor(p.mass) / p.z0 ** 2 / units.HBAR_MEV_S
    return 5.0 / 24.0 * hbar_over_mz2 * (bt * bt - 20.0) ** 2 / (bt - 4.0) ** 2


def _inner_barrier(p):
    """Location and height of the inner maximum of the exp-3 wall.

    U(z) -> -inf as z -> 0 (the -1/z^3 term wins), so the repulsive wall is a
    finite barrier peaking at z_b < z0.
    """
    bt = p.beta_tilde

    def g(x):  # dU/dz > 0  <=>  g(x) < 0, x = z/z0
        return bt * (1.0 - x) + 4.0 * np.log(x)

    x_lo = 0.5 * np.exp(-bt / 4.0)
    x_hi = 4.0 / bt
    x_b = brentq(g, x_lo, x_hi, xtol=1e-14)
    z_b = x_b * p.z0
    return z_b, evaluate_potential(p, z_b)


def solver_grid(p, dz=0.002):
    """Uniform grid for the bound-state solve.

    The inner edge sits where U climbs to +10*U0 on the repulsive wall, or at
    the top of the (finite) wall barrier when it never reaches that height.
    The outer edge sits where |U| has fallen below 1e-4*U0.
    """
    z_b, u_b = _inner_barrier(p)
    if u_b > 10.0 * p.U0:
        z_min = brentq(lambda z: evaluate_potential(p, z) - 10.0 * p.U0,
                       z_b, p.z0, xtol=1e-12)
    else:
        z_min = z_b
    bt = p.beta_tilde
    z_far = p.z0 * (2.0e4 * bt / (bt - 3.0)) ** (1.0 / 3.0)
    z_max = brentq(lambda z: evaluate_potential(p, z) + 1e-4 * p.U0,
                   p.z0, z_far, xtol=1e-12)
    n = max(int(np.ceil((z_max - z_min) / dz)) + 1, 64)
    return np.linspace(z_min, z_max, n)


def solve_bound_states(p, mat, max_levels=10, dz=0.002, margin_mev=0.0):
    """Solve the 1-D Schroedinger problem in U(z) and assemble a LevelStructure.

    Returns up to max_levels bound states (E < -margin_mev) with dipole
    moments d_mu = 0.47 e a0^(1/2) alpha^(3/2) <mu|z^-4|mu> and pairwise
    phonon rates Gamma0[mu,nu] = |<mu|dU/dz|nu>|^2 omega_{mu,nu} /
    (2 pi hbar c^3 rho_bulk).

    Raises InsufficientLevelsError if fewer than two levels qualify and
    ConvergenceError (with grid diagnostics) if the eigensolve fails.
    """
    if max_levels < 2:
        raise DomainError("max_levels must be >= 2")
    z = solver_grid(p, dz=dz)
    h = z[1] - z[0]
    u = evaluate_potential(p, z)
    t = units.kinetic_factor(p.mass) / h ** 2  # meV
    diag = 2.0 * t + u
    off = np.full(len(z) - 1, -t)
    try:
        n_want = min(max_levels + 2, len(z))
        vals, vecs = eigh_tridiagonal(diag, off, select="i",
                                      select_range=(0, n_want - 1))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceError(
            "tridiagonal eigensolve failed",
            diagnostics={"points": len(z), "dz": h,
                         "z_min": z[0], "z_max": z[-1]},
        ) from exc

    bound = vals < -abs(margin_mev)
    energies = vals[bound][:max_levels]
    if len(energies) < 2:
        raise InsufficientLevelsError(
            f"only {len(energies)} bound level(s) found (need >= 2)"
        )
    m = len(energies)
    psi = vecs[:, :m] / np.sqrt(h)  # unit L2 norm on the grid

    inv_z4 = np.array([trapezoid(psi[:, i] ** 2 * z ** -4, dx=h) for i in range(m)])
    dipoles = (0.47 * np.sqrt(units.BOHR_ANGSTROM) * p.polarizability ** 1.5
               * inv_z4 * units.DEBYE_PER_E_ANGSTROM)

    du = potential_derivative(p, z)
    rates = np.zeros((m, m))
    # rate prefactor: matrix element meV/angstrom -> J/m, density amu/A^3 -> kg/m^3
    me_si = units.MEV_J / units.ANGSTROM_M
    rho_si = mat.bulk_density * units.AMU_KG / units.ANGSTROM_M ** 3
    denom = 2.0 * np.pi * units.HBAR_J_S * mat.phonon_speed ** 3 * rho_si
    for mu in range(m):
        for nu in range(mu + 1, m):
            elem = trapezoid(psi[:, mu] * du * psi[:, nu], dx=h) * me_si
            w = units.omega_from_mev(energies[nu] - energies[mu])
            rates[mu, nu] = rates[nu, mu] = elem ** 2 * w / denom

    return LevelStructure(energies=energies, dipoles=dipoles, rates=rates)


def harmonic_rate(p, mat):
    """Closed-form fundamental rate Gamma0 ~ omega_0^4 m / (4 pi c^3 rho).

    Cross-check only; the pipeline uses matrix-element rates throughout.
    """
    w0 = harmonic_frequency(p)
    m_si = p.mass * units.AMU_KG
    rho_si = mat.bulk_density * units.AMU_KG / units.ANGSTROM_M ** 3
    return w0 ** 4 * m_si / (4.0 * np.pi * mat.phonon_speed ** 3 * rho_si)


def coverage_parameter(p, mat):
    """Correlation-coverage parameter sqrt(R) * 2 pi c / omega_0 (dimensionless).

    Values >~ 1 flag the regime where the dominant phonon wavelength exceeds
    the typical adatom spacing and collective dynamics matter.
    """
    w0 = harmonic_frequency(p)
    sqrt_r_si = np.sqrt(mat.adatom_density) / units.ANGSTROM_M  # 1/m
    return sqrt_r_si * 2.0 * np.pi * mat.phonon_speed / w0
