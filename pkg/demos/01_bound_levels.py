"""Bound levels of a heavy adatom on a gold-like surface.

Solves the exp-3 surface potential for its vibrational ladder, then compares
the numeric spacings against the harmonic frequency and the closed-form
anharmonic shift, and prints the per-level dipoles and one-phonon rates that
drive everything downstream.

Run:  python3 demos/01_bound_levels.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from adnoise import (
    MaterialParams,
    PotentialParams,
    anharmonic_shift,
    coverage_parameter,
    evaluate_potential,
    harmonic_frequency,
    harmonic_rate,
    solve_bound_states,
)
from adnoise.potential import solver_grid
from adnoise.units import mev_from_omega, omega_from_mev

# a heavy physisorbed atom (mass 100 amu, polarizability 4 angstrom^3)
# bound 250 meV deep at 3.1 angstrom above a gold-like surface
potential = PotentialParams(U0=250.0, z0=3.1, beta0=1.86, mass=100.0,
                            polarizability=4.04)
material = MaterialParams(phonon_speed=3240.0, bulk_density=11.66,
                          adatom_density=2e-3)

levels = solve_bound_states(potential, material, max_levels=10)
w0 = harmonic_frequency(potential)
delta = anharmonic_shift(potential)

print(f"well depth U0 = {potential.U0} meV, stiffness beta0*z0 = "
      f"{potential.beta_tilde:.3f}")
print(f"harmonic frequency  omega0 = {w0:.4e} 1/s "
      f"({mev_from_omega(w0):.4f} meV)")
print(f"anharmonic shift    delta  = {delta:.4e} 1/s "
      f"(delta/omega0 = {delta / w0:.4f})")
print(f"closed-form Gamma0 = {harmonic_rate(potential, material):.4e} 1/s, "
      f"matrix-element Gamma0 = {levels.rates[0, 1]:.4e} 1/s")
cov = coverage_parameter(potential, material)
print(f"coverage parameter = {cov:.3f}"
      + (" -> correlated patches matter" if cov > 1 else ""))

print(f"\n{'mu':>3} {'E (meV)':>10} {'spacing (meV)':>14} "
      f"{'d (debye)':>10} {'Gamma0 to mu+1 (1/s)':>21}")
for mu in range(levels.count):
    spacing = (levels.energies[mu + 1] - levels.energies[mu]
               if mu + 1 < levels.count else np.nan)
    rate = levels.rates[mu, mu + 1] if mu + 1 < levels.count else np.nan
    print(f"{mu:>3} {levels.energies[mu]:>10.3f} {spacing:>14.4f} "
          f"{levels.dipoles[mu]:>10.5f} {rate:>21.4e}")

# the ladder compresses going up: each numeric spacing sits a bit further
# below hbar*omega0, which is exactly what the delta formula captures
w12 = omega_from_mev(levels.energies[1] - levels.energies[0])
w23 = omega_from_mev(levels.energies[2] - levels.energies[1])
print(f"\nomega0 - omega23 = {w0 - w23:.4e} 1/s vs delta formula "
      f"{delta:.4e} 1/s ({abs(w0 - w23 - delta) / delta:.1%} apart)")

z = solver_grid(potential)
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(z, evaluate_potential(potential, z), "k-", lw=1.5, label="U(z)")
for e in levels.energies:
    ax.axhline(e, color="tab:blue", lw=0.6, alpha=0.7)
ax.set_xlim(z[0], 8.0)
ax.set_ylim(-1.05 * potential.U0, 30.0)
ax.set_xlabel("z (angstrom)")
ax.set_ylabel("energy (meV)")
ax.legend()
fig.tight_layout()
fig.savefig("demos/bound_levels.png", dpi=150)
print("\nwrote demos/bound_levels.png")
