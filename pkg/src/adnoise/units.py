"""Physical constants and unit conversions.

Internal unit system: energies in meV, lengths in angstrom, masses in amu,
angular frequencies and rates in 1/s, dipole moments in debye.  Bulk mass
density is carried in amu/angstrom^3 and converted to SI only inside the
phonon-rate prefactor.
"""

HBAR_J_S = 1.054571817e-34
HBAR_MEV_S = 6.582119569e-13
MEV_J = 1.602176634e-22
AMU_KG = 1.66053906660e-27
ANGSTROM_M = 1e-10
BOHR_ANGSTROM = 0.529177210903
# 1 e*angstrom in debye
DEBYE_PER_E_ANGSTROM = 4.803204712570263
KB_MEV_PER_K = 0.08617333262


def kinetic_factor(mass_amu):
    """hbar^2 / (2 m) in meV*angstrom^2 for a mass given in amu."""
    return HBAR_J_S ** 2 / (2.0 * mass_amu * AMU_KG) / MEV_J * 1e20


def omega_from_mev(energy_mev):
    """Angular frequency (1/s) corresponding to an energy quantum in meV."""
    return energy_mev / HBAR_MEV_S


def mev_from_omega(omega_per_s):
    """Energy quantum (meV) corresponding to an angular frequency in 1/s."""
    return omega_per_s * HBAR_MEV_S
