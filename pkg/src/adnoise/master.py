"""Classical rate matrix over symmetric populations and its eigendecomposition.

Generator convention: columns sum to zero and d rho_i / dt = sum_j M_ij rho_j.
Detailed balance holds by construction, so the generator is similar to a
symmetric matrix via D^(1/2) with D = diag(rho_ss); the decomposition works on
that symmetrized form, which guarantees a real spectrum.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, null_space

from . import units
from .basis import apply_lowering, apply_raising
from .errors import DomainError, NumericalError, ReducibilityError

TRANSITION_SETS = ("all-pairs", "nearest-neighbor")


@dataclass(frozen=True)
class ThermalParams:
    """Temperature expressed relative to the fundamental frequency.

    temperature_ratio: T/omega_0 (dimensionless, hbar = k_B = 1 bookkeeping);
    omega0: reference angular frequency (1/s).  beta*omega for any transition
    follows from beta_omega(); the Boltzmann factor is exp(-beta*omega0).
    """

    temperature_ratio: float
    omega0: float

    def __post_init__(self):
        if self.temperature_ratio <= 0:
            raise DomainError("temperature_ratio must be positive")
        if self.omega0 <= 0:
            raise DomainError("omega0 must be positive")

    @property
    def boltzmann_factor(self):
        return float(np.exp(-1.0 / self.temperature_ratio))

    def beta_omega(self, omega):
        """Dimensionless beta * omega for an angular frequency in 1/s."""
        return omega / (self.temperature_ratio * self.omega0)


@dataclass(frozen=True)
class RateMatrix:
    """Dense generator over a symmetric basis.

    matrix[i, j] is the flow rate (1/s) from state j into state i for i != j;
    diagonal entries balance the columns to zero.  beta_energies holds
    beta * (E_i - E_ground) per state for Boltzmann/symmetrization use;
    transitions records which (mu, nu, direction) produced each edge.
    """

    matrix: np.ndarray
    basis: object
    beta_energies: np.ndarray
    transitions: dict = field(default_factory=dict)

    @property
    def dimension(self):
        return self.matrix.shape[0]

    def boltzmann_weights(self):
        """Normalized Boltzmann distribution over basis states."""
        w = np.exp(-(self.beta_energies - self.beta_energies.min()))
        return w / w.sum()


@dataclass(frozen=True)
class EigenDecomposition:
    """Full real eigendecomposition of a detailed-balance generator.

    eigenvalues are sorted descending (steady 0 first).  The orthogonal
    eigenvectors `ortho` belong to the symmetrized generator; sqrt_weights
    holds sqrt(rho_ss) so that right/left eigenvectors of the original
    generator are diag(s) @ ortho and ortho.T @ diag(1/s).
    """

    eigenvalues: np.ndarray
    ortho: np.ndarray
    sqrt_weights: np.ndarray
    steady_index: int = 0

    @property
    def steady_state(self):
        return self.sqrt_weights ** 2

    @property
    def right_vectors(self):
        return self.sqrt_weights[:, None] * self.ortho

    @property
    def left_vectors(self):
        return self.ortho.T / self.sqrt_weights[None, :]


def _transition_pairs(m, transition_set):
    if transition_set == "all-pairs":
        return [(mu, nu) for mu in range(m) for nu in range(mu + 1, m)]
    if transition_set == "nearest-neighbor":
        return [(mu, mu + 1) for mu in range(m - 1)]
    raise DomainError(
        f"unknown transition_set {transition_set!r}; choose from {TRANSITION_SETS}"
    )


def build_rate_matrix(basis, levels, thermal, transition_set="all-pairs"):
    """Assemble the population-basis generator.

    For each state and transition pair (mu < nu): emission flow at rate
    F * m_nu * (m_mu + 1) toward (m_mu+1, m_nu-1) and absorption flow at
    F * exp(-beta w) * m_mu * (m_nu + 1) toward (m_mu-1, m_nu+1), where
    F = Gamma0[mu,nu] / (1 - exp(-beta w)).
    """
    if basis.M != levels.count:
        raise DomainError("basis and level structure disagree on M")
    pairs = _transition_pairs(levels.count, transition_set)
    if not pairs:
        raise DomainError("empty transition set")

    dim = len(basis)
    mat = np.zeros((dim, dim))
    transitions = {}
    for j, state in enumerate(basis.states):
        for mu, nu in pairs:
            gamma = levels.rates[mu, nu]
            if gamma == 0.0:
                continue
            bw = thermal.beta_omega(levels.omega(mu, nu))
            f = gamma / -np.expm1(-bw)
            if state[nu] > 0:
                target, amp = apply_lowering(state, mu, nu)
                i = basis.index[target]
                r = f * amp * amp
                mat[i, j] += r
                mat[j, j] -= r
                transitions[(i, j)] = (mu, nu, "emission")
            if state[mu] > 0:
                target, amp = apply_raising(state, mu, nu)
                i = basis.index[target]
                r = f * np.exp(-bw) * amp * amp
                mat[i, j] += r
                mat[j, j] -= r
                transitions[(i, j)] = (mu, nu, "absorption")

    w_levels = units.omega_from_mev(levels.energies - levels.energies[0])
    beta_levels = np.array([thermal.beta_omega(w) for w in w_levels])
    occ = np.array(basis.states, dtype=float)
    beta_energies = occ @ beta_levels
    return RateMatrix(matrix=mat, basis=basis, beta_energies=beta_energies,
                      transitions=transitions)


def steady_state(rm, rcond=1e-10):
    """Unique normalized kernel vector of the generator.

    Raises ReducibilityError when the kernel is degenerate (the chain splits
    into disconnected components).
    """
    ns = null_space(rm.matrix, rcond=rcond)
    if ns.shape[1] == 0:
        raise ReducibilityError("no kernel vector found at the given tolerance")
    if ns.shape[1] > 1:
        raise ReducibilityError(
            f"kernel is {ns.shape[1]}-dimensional: generator is reducible"
        )
    v = ns[:, 0]
    v = v * np.sign(v.sum())
    if v.min() < -1e-10 * abs(v).max():
        raise NumericalError("kernel vector has significantly negative entries")
    v = np.clip(v, 0.0, None)
    return v / v.sum()


def symmetrized_generator(rm):
    """Similarity transform S = D^(-1/2) M D^(1/2) with D = diag(Boltzmann).

    Exponent differences are taken per entry so that extreme Boltzmann ratios
    between unconnected states never overflow.
    """
    be = rm.beta_energies
    expo = 0.5 * (be[:, None] - be[None, :])
    scale = np.exp(np.clip(expo, -700.0, 700.0))
    return np.where(rm.matrix != 0.0, rm.matrix * scale, 0.0)


def decompose(rm, sym_tol=1e-8, residual_tol=1e-8):
    """Full eigendecomposition via the detailed-balance symmetrization.

    Eigenvalues come out real and sorted descending with the steady mode
    (lambda = 0) first.  Raises NumericalError when the symmetrization
    residual is large (detailed balance violated) and ReducibilityError on a
    degenerate zero eigenvalue.
    """
    s_mat = symmetrized_generator(rm)
    norm = np.linalg.norm(s_mat)
    asym = np.linalg.norm(s_mat - s_mat.T)
    if norm > 0 and asym > sym_tol * norm:
        raise NumericalError(
            f"symmetrization residual {asym / norm:.3e} exceeds {sym_tol:.1e}: "
            "generator does not satisfy detailed balance"
        )
    s_mat = 0.5 * (s_mat + s_mat.T)
    vals, vecs = eigh(s_mat)

    order = np.argsort(-vals)  # descending: steady (~0) first
    vals = vals[order]
    vecs = vecs[:, order]

    absv = np.sort(np.abs(vals))
    if len(vals) >= 2 and absv[0] > 1e-9 * absv[1]:
        raise NumericalError("no eigenvalue classifiable as zero (steady mode)")
    if len(vals) >= 3 and absv[1] < 1e-9 * absv[2]:
        raise ReducibilityError("multiple zero eigenvalues: generator is reducible")
    vals[0] = 0.0

    be = rm.beta_energies
    s = np.exp(-0.5 * (be - be.min()))
    s = s / np.linalg.norm(s)

    # snap the steady column to the exact sqrt-Boltzmann vector and project it
    # out of the relaxation modes; this makes the zero-lag sum rule hold to
    # second order in the eigensolver's vector error
    vecs[:, 0] = s * np.sign(s @ vecs[:, 0])
    overlap = s @ vecs[:, 1:]
    vecs[:, 1:] -= s[:, None] * overlap[None, :]
    vecs[:, 1:] /= np.linalg.norm(vecs[:, 1:], axis=0)[None, :]

    # residual check in the symmetric frame (similarity preserves the spectrum)
    resid = np.linalg.norm(s_mat @ vecs - vecs * vals[None, :], axis=0)
    mnorm = np.linalg.norm(rm.matrix)
    if mnorm > 0 and np.any(resid > residual_tol * mnorm):
        raise NumericalError("eigenpair residual exceeds tolerance")

    return EigenDecomposition(eigenvalues=vals, ortho=vecs, sqrt_weights=s)
