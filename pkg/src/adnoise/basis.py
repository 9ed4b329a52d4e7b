"""Permutation-symmetric occupation states of N adatoms over M levels.

States are occupation tuples (m_0, ..., m_{M-1}) with sum(m) = N, ordered
reverse-lexicographically so that the ground-dominated states come first.
The collective lowering operator carries the superradiant amplitude
sqrt((m_mu + 1) * m_nu).
"""

from dataclasses import dataclass
from math import comb, sqrt

from .errors import CapacityError, DomainError

DEFAULT_STATE_CAP = 200_000


def _compositions(n, m):
    """Weak compositions of n into m parts, reverse-lexicographic."""
    if m == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, m - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class SymmetricBasis:
    """Enumerated symmetric basis with a state <-> ordinal bijection."""

    N: int
    M: int
    states: tuple
    index: dict

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)


def basis_size(N, M):
    """Dimension of the symmetric subspace: C(N+M-1, N)."""
    return comb(N + M - 1, N)


def enumerate_basis(N, M, cap=DEFAULT_STATE_CAP):
    """Enumerate all occupation states of N adatoms over M levels.

    Raises CapacityError when the basis would exceed `cap` states.
    """
    if N < 1 or M < 2:
        raise DomainError("need N >= 1 and M >= 2")
    size = basis_size(N, M)
    if size > cap:
        raise CapacityError(
            f"basis of {size} states exceeds the cap of {cap}; reduce N or M"
        )
    states = tuple(_compositions(N, M))
    assert len(states) == size
    index = {s: i for i, s in enumerate(states)}
    return SymmetricBasis(N=N, M=M, states=states, index=index)


def apply_lowering(state, mu, nu):
    """Collective lowering L_{mu,nu} on an occupation tuple (mu < nu).

    Returns (new_state, amplitude) with amplitude sqrt((m_mu + 1) * m_nu);
    when m_nu = 0 the state is annihilated (amplitude 0, state unchanged).
    """
    m = len(state)
    if not (0 <= mu < nu < m):
        raise DomainError(f"invalid level pair ({mu}, {nu}) for M={m}")
    if state[nu] == 0:
        return state, 0.0
    out = list(state)
    out[mu] += 1
    out[nu] -= 1
    return tuple(out), sqrt((state[mu] + 1) * state[nu])


def apply_raising(state, mu, nu):
    """Adjoint bookkeeping: L^dagger_{mu,nu} moves one adatom mu -> nu.

    Amplitude equals the lowering amplitude read in the target state's
    occupations: sqrt(m_mu * (m_nu + 1)).
    """
    m = len(state)
    if not (0 <= mu < nu < m):
        raise DomainError(f"invalid level pair ({mu}, {nu}) for M={m}")
    if state[mu] == 0:
        return state, 0.0
    out = list(state)
    out[mu] -= 1
    out[nu] += 1
    return tuple(out), sqrt(state[mu] * (state[nu] + 1))


def state_dipole(state, levels):
    """Total dipole of an occupation state: sum_mu m_mu * d_mu (debye)."""
    if len(state) != levels.count:
        raise DomainError(
            f"state has {len(state)} levels, structure has {levels.count}"
        )
    return float(sum(m * d for m, d in zip(state, levels.dipoles)))


def basis_dipoles(basis, levels):
    """Vector of state dipoles D_i over the whole basis (debye)."""
    import numpy as np

    if basis.M != levels.count:
        raise DomainError("basis and level structure disagree on M")
    d = np.asarray(levels.dipoles)
    occ = np.array(basis.states, dtype=float)
    return occ @ d
