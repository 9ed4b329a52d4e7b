"""Run configuration: YAML parsing, validation, and content hashing.

All physical quantities carry explicit unit suffixes in their keys so a
mis-scaled input fails loudly instead of silently (U0_meV, z0_angstrom, ...).
"""

import hashlib
import json
from dataclasses import dataclass, field

import yaml

from .errors import DomainError
from .master import TRANSITION_SETS
from .potential import MaterialParams, PotentialParams
from .spectrum import PatchDistribution

DISTRIBUTION_FORMS = ("delta", "one_over_N", "custom")


@dataclass(frozen=True)
class FrequencyGrid:
    """Logarithmic frequency grid in units of Gamma0."""

    min_over_gamma0: float = 1e-2
    max_over_gamma0: float = 1e2
    points_per_decade: int = 50

    def __post_init__(self):
        if not (0 < self.min_over_gamma0 < self.max_over_gamma0):
            raise DomainError("frequency grid needs 0 < min < max")
        if self.points_per_decade < 1:
            raise DomainError("points_per_decade must be >= 1")

    def omegas(self, gamma0):
        import numpy as np

        lo = np.log10(self.min_over_gamma0)
        hi = np.log10(self.max_over_gamma0)
        n = int(round((hi - lo) * self.points_per_decade)) + 1
        return gamma0 * np.logspace(lo, hi, n)


@dataclass(frozen=True)
class RunConfig:
    potential: PotentialParams
    material: MaterialParams
    temperature_ratios: tuple = (0.1, 0.4, 1.0)
    patch_sizes: tuple = (1, 2, 4, 8)
    levels_m: int = 10
    transition_set: str = "all-pairs"
    distribution_form: str = "one_over_N"
    distribution_n_max: int = 10
    distribution_table: dict = field(default_factory=dict)
    frequency_grid: FrequencyGrid = field(default_factory=FrequencyGrid)
    raw: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.levels_m < 2:
            raise DomainError("levels_M must be >= 2")
        if self.transition_set not in TRANSITION_SETS:
            raise DomainError(f"transition_set must be one of {TRANSITION_SETS}")
        if self.distribution_form not in DISTRIBUTION_FORMS:
            raise DomainError(f"patch distribution form must be one of {DISTRIBUTION_FORMS}")
        if any(n < 1 for n in self.patch_sizes):
            raise DomainError("patch sizes must be >= 1")
        if any(t <= 0 for t in self.temperature_ratios):
            raise DomainError("temperature ratios must be positive")

    def patch_distribution(self):
        if self.distribution_form == "one_over_N":
            return PatchDistribution.one_over_n(self.distribution_n_max)
        if self.distribution_form == "delta":
            return PatchDistribution.delta(self.distribution_n_max)
        if not self.distribution_table:
            raise DomainError("custom patch distribution needs a table")
        return PatchDistribution.from_table(
            {int(k): float(v) for k, v in self.distribution_table.items()})

    def content_hash(self):
        """Stable hash of the raw config mapping (first 12 hex digits)."""
        blob = json.dumps(self.raw, sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


def _require(mapping, key, section):
    if key not in mapping:
        raise DomainError(f"config section '{section}' is missing key '{key}'")
    return mapping[key]


def parse_config(data):
    """Build a RunConfig from a parsed YAML mapping."""
    if not isinstance(data, dict):
        raise DomainError("config root must be a mapping")
    pot = _require(data, "potential", "root")
    potential = PotentialParams(
        U0=float(_require(pot, "U0_meV", "potential")),
        z0=float(_require(pot, "z0_angstrom", "potential")),
        beta0=float(_require(pot, "beta0_per_angstrom", "potential")),
        mass=float(_require(pot, "mass_amu", "potential")),
        polarizability=float(pot.get("polarizability_angstrom3", 1.0)),
    )
    mat = _require(data, "material", "root")
    material = MaterialParams(
        phonon_speed=float(_require(mat, "phonon_speed_m_per_s", "material")),
        bulk_density=float(_require(mat, "bulk_density_amu_per_angstrom3", "material")),
        adatom_density=float(mat.get("adatom_density_per_angstrom2", 0.0)),
    )
    model = data.get("model", {})
    dist = data.get("patch_distribution", {})
    grid = data.get("frequency_grid", {})
    return RunConfig(
        potential=potential,
        material=material,
        temperature_ratios=tuple(float(t) for t in model.get(
            "temperature_ratios", (0.1, 0.4, 1.0))),
        patch_sizes=tuple(int(n) for n in model.get("patch_sizes_N", (1, 2, 4, 8))),
        levels_m=int(model.get("levels_M", 10)),
        transition_set=str(model.get("transition_set", "all-pairs")),
        distribution_form=str(dist.get("form", "one_over_N")),
        distribution_n_max=int(dist.get("N_max", 10)),
        distribution_table=dict(dist.get("table", {})),
        frequency_grid=FrequencyGrid(
            min_over_gamma0=float(grid.get("min_over_gamma0", 1e-2)),
            max_over_gamma0=float(grid.get("max_over_gamma0", 1e2)),
            points_per_decade=int(grid.get("points_per_decade", 50)),
        ),
        raw=data,
    )


def load_config(path):
    with open(path) as fh:
        data = yaml.safe_load(fh)
    return parse_config(data)
