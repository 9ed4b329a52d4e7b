"""1/f noise from a 1/N patch-size distribution.

Each N-adatom patch contributes one low-temperature Lorentzian of half-width
N*Gamma0. Weighting patch sizes by 1/N stacks those knees into a 1/f slope
for omega > Gamma0; the infinite sum has a closed coth form whose omega -> 0
limit is C*pi^2/(6*Gamma0).

Run:  python3 demos/03_pink_noise.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from adnoise import (
    LevelStructure,
    PatchDistribution,
    ThermalParams,
    aggregate_patches,
    evaluate_spectrum,
    log_log_slope,
    low_temperature_spectrum,
    pink_noise_closed_form,
)

# scaled two-level fluctuator: Gamma0 = 1, level spacing 1 meV
levels = LevelStructure(energies=np.array([-50.0, -49.0]),
                        dipoles=np.array([1.0, 0.8]),
                        rates=np.array([[0.0, 1.0], [1.0, 0.0]]))
gamma0 = levels.rates[0, 1]
thermal = ThermalParams(temperature_ratio=0.2, omega0=levels.omega(0, 1))
amp = 2.0 * (levels.dipoles[0] - levels.dipoles[1]) ** 2 * thermal.boltzmann_factor

omegas = np.logspace(-2, 3, 251) * gamma0
fig, ax = plt.subplots(figsize=(6.5, 4.5))

for n_max in (3, 10, 50, 200):
    dist = PatchDistribution.one_over_n(n_max)
    spectra = {n: low_temperature_spectrum(n, levels, thermal)
               for n in dist.sizes}
    s = aggregate_patches(spectra, dist, omegas)
    ax.loglog(omegas / gamma0, s, label=f"N_max = {n_max}")
    band = (omegas > 2 * gamma0) & (omegas < 40 * gamma0)
    slope = np.polyfit(np.log(omegas[band]), np.log(s[band]), 1)[0]
    print(f"N_max = {n_max:>3}: slope on omega/Gamma0 in [2, 40] = {slope:.3f}")

s_cf = pink_noise_closed_form(gamma0, amp, omegas)
ax.loglog(omegas / gamma0, s_cf, "k--", lw=1, label="closed form")
print(f"\nclosed-form omega->0 limit: {pink_noise_closed_form(gamma0, amp, 0.0):.6e}")
print(f"C * pi^2 / (6 Gamma0)     : {amp * np.pi ** 2 / 6 / gamma0:.6e}")

# the closed form (N_max -> infinity) rolls from white (slope 0) into a pure
# 1/f tail; finite N_max curves leave the 1/f band at N_max*Gamma0 and bend
# toward -2 beyond their largest knee
slopes = log_log_slope(omegas, s_cf)
for w_ref in (0.1, 1.0, 10.0, 100.0):
    s_at = slopes[np.argmin(np.abs(omegas - w_ref * gamma0))]
    print(f"closed-form local slope at omega/Gamma0 = {w_ref:>5.1f}: {s_at:+.2f}")

ax.set_xlabel("omega / Gamma0")
ax.set_ylabel("S_tot (debye$^2$ s)")
ax.set_title("1/N patch mixture: 1/f band between Gamma0 and N_max*Gamma0")
ax.legend()
fig.tight_layout()
fig.savefig("demos/pink_noise.png", dpi=150)
print("\nwrote demos/pink_noise.png")
