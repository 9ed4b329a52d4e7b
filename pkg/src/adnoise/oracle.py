"""Independent validation engines for the analytic Lorentzian spectra.

Two routes that never touch the eigenvector machinery of the main pipeline:

* Gillespie jump-process simulation of the population chain with Welch
  periodogram estimation of S(omega), and
* a matrix-exponential propagation of the dipole autocorrelator followed by
  numerical Fourier quadrature.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh, expm
from scipy.integrate import trapezoid
from scipy.signal import welch

from .basis import basis_dipoles
from .errors import DomainError, ResolutionError
from .master import steady_state, symmetrized_generator


@dataclass(frozen=True)
class TrajectoryConfig:
    """Stochastic-simulation settings.

    duration/burn_in in seconds (of simulated time), sampling_dt the uniform
    sampling interval for the recorded dipole signal.  Per-trajectory RNG
    streams are spawned deterministically from `seed` via
    numpy.random.SeedSequence (splitmix-style derivation), so a fixed seed
    gives bit-identical results regardless of execution order.
    """

    duration: float
    burn_in: float = 0.0
    seed: int = 0
    trajectories: int = 1
    sampling_dt: float = 1.0

    def __post_init__(self):
        if not (self.duration > self.burn_in >= 0):
            raise DomainError("need duration > burn_in >= 0")
        if self.trajectories < 1:
            raise DomainError("need at least one trajectory")
        if self.sampling_dt <= 0:
            raise DomainError("sampling_dt must be positive")


@dataclass(frozen=True)
class SampledSpectrum:
    """Periodogram estimate with per-bin standard errors."""

    omega: np.ndarray
    estimate: np.ndarray
    stderr: np.ndarray
    occupancy: np.ndarray
    config: TrajectoryConfig

    def to_dict(self, analytic=None):
        out = {
            "config": {
                "duration": self.config.duration,
                "burn_in": self.config.burn_in,
                "seed": self.config.seed,
                "trajectories": self.config.trajectories,
                "sampling_dt": self.config.sampling_dt,
            },
            "omega_per_s": self.omega.tolist(),
            "estimate": self.estimate.tolist(),
            "stderr": self.stderr.tolist(),
        }
        if analytic is not None:
            out["analytic"] = np.asarray(analytic).tolist()
            dev = np.abs(self.estimate - analytic) / np.where(
                self.stderr > 0, self.stderr, np.inf)
            out["max_sigma_deviation"] = float(dev.max())
        return out


def _simulate_sampled(mat, dim, d_states, start, n_samples, dt, burn_in, rng):
    """One jump trajectory, returning D(t) on the uniform sampling grid and
    the per-state occupancy time."""
    exit_rates = -np.diag(mat)
    channels = []
    for j in range(dim):
        col = mat[:, j].copy()
        col[j] = 0.0
        idx = np.nonzero(col)[0]
        if len(idx) and exit_rates[j] > 0:
            channels.append((idx, np.cumsum(col[idx]) / exit_rates[j]))
        else:
            channels.append((idx, np.array([])))

    samples = np.empty(n_samples)
    occupancy = np.zeros(dim)
    total = burn_in + n_samples * dt
    t = 0.0
    state = start
    filled = 0
    while t < total:
        q = exit_rates[state]
        stay = rng.exponential(1.0 / q) if q > 0 else total - t
        t_next = min(t + stay, total)
        occupancy[state] += max(t_next - max(t, burn_in), 0.0)
        # fill sample slots covered while sitting in `state`
        hi = min(int(np.ceil((t_next - burn_in) / dt - 1e-12)), n_samples)
        if hi > filled:
            samples[filled:hi] = d_states[state]
            filled = hi
        t = t_next
        if t >= total:
            break
        idx, cum = channels[state]
        state = idx[np.searchsorted(cum, rng.uniform())]
    if filled < n_samples:
        samples[filled:] = d_states[state]
    return samples, occupancy / occupancy.sum()


def gillespie_spectrum(rm, basis, levels, cfg, nperseg=None,
                       alias_cutoff=0.35):
    """Monte-Carlo estimate of S(omega) from exact jump trajectories.

    D(t) is recorded on a uniform grid after burn-in; each trajectory gets an
    averaged Welch periodogram (Hann window, 50% segment overlap) and the
    returned estimate/stderr are the across-trajectory mean and standard
    error.  Bins with omega * sampling_dt > alias_cutoff are dropped: uniform
    sampling folds the 1/omega^2 Lorentzian tails back below Nyquist, and
    beyond that cutoff the fold-in bias exceeds the statistical error.
    Emits a warning (not a failure) when states with noticeable steady-state
    weight were never visited.
    """
    dim = rm.dimension
    d_states = basis_dipoles(basis, levels)
    rho_ss = steady_state(rm)

    dt = cfg.sampling_dt
    n_samples = int(np.floor((cfg.duration - cfg.burn_in) / dt))
    if n_samples < 16:
        raise DomainError("duration too short for the requested sampling_dt")
    if nperseg is None:
        nperseg = max(min(n_samples // 8, 65536), 16)

    ground = basis.index[tuple([basis.N] + [0] * (basis.M - 1))]
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.trajectories)
    psds = []
    occupancy = np.zeros(dim)
    for ss in seeds:
        rng = np.random.default_rng(ss)
        sig, occ = _simulate_sampled(rm.matrix, dim, d_states, ground,
                                     n_samples, dt, cfg.burn_in, rng)
        occupancy += occ / cfg.trajectories
        freq, pxx = welch(sig - sig.mean(), fs=1.0 / dt, window="hann",
                          nperseg=nperseg, noverlap=nperseg // 2,
                          detrend=False)
        psds.append(pxx)
    psds = np.array(psds)

    # one-sided PSD in 1/Hz -> two-sided angular-frequency density: S = PSD/2
    estimate = psds.mean(axis=0) / 2.0
    stderr = (psds.std(axis=0, ddof=1) / 2.0 / np.sqrt(cfg.trajectories)
              if cfg.trajectories > 1 else np.zeros_like(estimate))

    unvisited = (occupancy == 0) & (rho_ss > 10.0 / max(n_samples, 1))
    if np.any(unvisited):
        warnings.warn(
            f"{int(unvisited.sum())} state(s) with non-negligible steady-state "
            "weight were never visited; chain may be effectively non-ergodic",
            stacklevel=2,
        )
    omega = 2.0 * np.pi * freq
    # the zero bin is an artifact of per-trajectory mean subtraction
    keep = (omega > 0) & (omega * dt <= alias_cutoff)
    return SampledSpectrum(omega=omega[keep], estimate=estimate[keep],
                           stderr=stderr[keep], occupancy=occupancy, config=cfg)


def correlator_spectrum(rm, basis, levels, tau_grid, omega_grid):
    """S(omega) from the dipole autocorrelator via matrix exponentials.

    Propagates <D(tau) D(0)> - <D>^2 = u^T exp(S tau) u - <D>^2 (u = D sqrt(rho_ss)
    in the symmetrized frame) on a uniform tau grid, then Fourier-transforms the
    symmetrized correlator by trapezoidal quadrature:
    S(w) = 2 int_0^taumax C(tau) cos(w tau) dtau.

    Requires tau_max >= 5 / |lambda_slowest| (ResolutionError otherwise).
    """
    tau = np.asarray(tau_grid, dtype=float)
    if tau.ndim != 1 or len(tau) < 8 or tau[0] != 0.0:
        raise DomainError("tau_grid must start at 0 with at least 8 points")
    steps = np.diff(tau)
    if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-8):
        raise DomainError("tau_grid must be uniform and increasing")
    dtau = steps[0]

    s_mat = symmetrized_generator(rm)
    s_mat = 0.5 * (s_mat + s_mat.T)
    vals = eigvalsh(s_mat)
    nonzero = np.abs(vals)[np.abs(vals) > 1e-9 * np.abs(vals).max()]
    if len(nonzero):
        slowest = nonzero.min()
        if tau[-1] < 5.0 / slowest:
            raise ResolutionError(
                f"tau_max = {tau[-1]:.3e} under-resolves the slowest mode; "
                f"need tau_max >= {5.0 / slowest:.3e}"
            )

    rho_ss = steady_state(rm)
    d_states = basis_dipoles(basis, levels)
    u = d_states * np.sqrt(rho_ss)
    mean_d = float(d_states @ rho_ss)

    prop = expm(s_mat * dtau)
    corr = np.empty(len(tau))
    v = u.copy()
    corr[0] = float(u @ v) - mean_d ** 2
    for i in range(1, len(tau)):
        v = prop @ v
        corr[i] = float(u @ v) - mean_d ** 2

    w = np.atleast_1d(np.asarray(omega_grid, dtype=float))
    s_w = 2.0 * trapezoid(corr[None, :] * np.cos(w[:, None] * tau[None, :]),
                         dx=dtau, axis=1)
    return (s_w if np.ndim(omega_grid) else float(s_w[0])), corr
