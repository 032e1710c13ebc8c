"""One-dimensional parameter sweeps over a base scenario.

Every grid point is an independent :func:`evaluate_link` call on a modified
copy of the base scenario, so a swept value is bit-identical to the same
point evaluated on its own.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError
from .geometry import depth_lower_bound
from .linkbudget import Scenario, evaluate_link

#: Characteristic length per metre of S-RIS distance when depth is swept
#: against that distance (1000 m -> 0.05 m).
DEPTH_SCALE_PER_M = 5e-5

PLATEAU_EPSILON = 0.01
PLATEAU_STEP = 0.5
PLATEAU_R_MAX = 1000.0

DEFAULT_TRANSMITTANCES = (0.8, 1.0, 2.0, 5.0, 10.0)


class SweepVariable(str, Enum):
    DISTANCE_RATIO = "distance_ratio"
    INCIDENCE_ANGLE = "incidence_angle"
    S_RIS_DISTANCE = "s_ris_distance"


UNITS = {
    SweepVariable.DISTANCE_RATIO: "1",
    SweepVariable.INCIDENCE_ANGLE: "deg",
    SweepVariable.S_RIS_DISTANCE: "m",
}


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep and over which grid.

    ``range`` is ``(start, stop, steps)`` in the variable's external unit:
    a plain ratio, degrees, or metres. ``refractive_indices`` selects the
    depth columns of the angle and distance sweeps; empty means the base
    scenario's index only.
    """

    variable: SweepVariable
    range: tuple[float, float, int]
    transmittances: tuple[float, ...] = DEFAULT_TRANSMITTANCES
    base: Scenario = field(default_factory=Scenario)
    refractive_indices: tuple[float, ...] = ()
    depth_scale_per_m: float = DEPTH_SCALE_PER_M

    def __post_init__(self) -> None:
        object.__setattr__(self, "variable", SweepVariable(self.variable))
        object.__setattr__(self, "transmittances", tuple(self.transmittances))
        object.__setattr__(self, "refractive_indices", tuple(self.refractive_indices))
        if not self.transmittances:
            raise DomainError("at least one transmittance is required")
        for t in self.transmittances:
            if not (math.isfinite(t) and t >= 0.0):
                raise DomainError(f"transmittance must be >= 0, got {t!r}")

    def grid(self) -> list[float]:
        return linear_grid(*self.range)

    def depth_indices(self) -> tuple[float, ...]:
        return self.refractive_indices or (self.base.ris.refractive_index,)


@dataclass(frozen=True)
class CurveSeries:
    variable: str
    unit: str
    grid: tuple[float, ...]
    columns: tuple[tuple[str, tuple[float, ...]], ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def column(self, name: str) -> tuple[float, ...]:
        for key, values in self.columns:
            if key == name:
                return values
        raise KeyError(name)

    @property
    def column_names(self) -> list[str]:
        return [key for key, _ in self.columns]

    def check(self) -> None:
        """Raise ``ValueError`` if the series breaks its shape invariants."""
        n = len(self.grid)
        for key, values in self.columns:
            if len(values) != n:
                raise ValueError(
                    f"column {key!r} has {len(values)} values for a grid of {n}"
                )
            for v in values:
                if not (math.isfinite(v) and v >= 0.0):
                    raise ValueError(f"column {key!r} holds invalid value {v!r}")


def linear_grid(start: float, stop: float, steps: int) -> list[float]:
    """Inclusive grid ``start + i (stop - start) / (steps - 1)``."""
    if isinstance(steps, bool) or int(steps) != steps or steps < 2:
        raise DomainError(f"steps must be an integer >= 2, got {steps!r}")
    if not (math.isfinite(start) and math.isfinite(stop)) or not start < stop:
        raise DomainError(f"need start < stop, got {start!r} and {stop!r}")
    steps = int(steps)
    delta = stop - start
    return [start + i * delta / (steps - 1) for i in range(steps)]


def t_label(t: float) -> str:
    return f"T={t:g}"


def depth_label(n: float) -> str:
    return f"depth_m[n={n:g}]"


def scenario_digest(scenario: Scenario) -> str:
    payload = json.dumps(
        dataclasses.asdict(scenario), sort_keys=True, default=str, allow_nan=False
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def _series(spec: SweepSpec, grid, columns) -> CurveSeries:
    series = CurveSeries(
        variable=spec.variable.value,
        unit=UNITS[spec.variable],
        grid=tuple(grid),
        columns=tuple((k, tuple(v)) for k, v in columns.items()),
        metadata={"scenario_sha256": scenario_digest(spec.base)},
    )
    series.check()
    return series


def sweep_distance_ratio(spec: SweepSpec) -> CurveSeries:
    """Spectral efficiency against S-RIS / RIS-D distance ratio.

    The S-RIS distance stays at the base value and the RIS-D distance is
    set to ``L1 / r``.
    """
    grid = spec.grid()
    if grid[0] <= 0.0:
        raise DomainError("distance ratios must be positive")
    l1 = spec.base.beam.s_ris_distance
    columns: dict[str, list[float]] = {t_label(t): [] for t in spec.transmittances}
    for r in grid:
        at_r = spec.base.with_distances(ris_d=l1 / r)
        for t in spec.transmittances:
            se = evaluate_link(at_r.with_transmittance(t)).spectral_efficiency
            columns[t_label(t)].append(se)
    return _series(spec, grid, columns)


def sweep_incidence_angle(spec: SweepSpec) -> CurveSeries:
    """Spectral efficiency and depth bound against incidence angle (degrees).

    The angle only enters the budget through the virtual divergence, so in
    ``total_distance`` mode the spectral efficiency columns are flat.
    """
    grid = spec.grid()
    if grid[0] <= 0.0 or grid[-1] >= 90.0:
        raise DomainError("incidence angles must lie strictly inside (0, 90) degrees")
    l_char = spec.base.ris.characteristic_length
    columns: dict[str, list[float]] = {t_label(t): [] for t in spec.transmittances}
    for n in spec.depth_indices():
        columns[depth_label(n)] = []
    for deg in grid:
        phi = math.radians(deg)
        at_phi = spec.base.with_incidence_angle(phi)
        for t in spec.transmittances:
            se = evaluate_link(at_phi.with_transmittance(t)).spectral_efficiency
            columns[t_label(t)].append(se)
        for n in spec.depth_indices():
            columns[depth_label(n)].append(depth_lower_bound(l_char, phi, n))
    return _series(spec, grid, columns)


def sweep_sris_distance(spec: SweepSpec) -> CurveSeries:
    """Energy efficiency and depth bound against S-RIS distance (metres).

    RIS-D distance is held at the base value. The depth columns tie the
    characteristic length to the swept distance via ``depth_scale_per_m``.
    """
    grid = spec.grid()
    if grid[0] < 0.0:
        raise DomainError("S-RIS distances must be non-negative")
    phi = spec.base.incidence_angle
    columns: dict[str, list[float]] = {t_label(t): [] for t in spec.transmittances}
    for n in spec.depth_indices():
        columns[depth_label(n)] = []
    for l1 in grid:
        at_l1 = spec.base.with_distances(s_ris=l1)
        for t in spec.transmittances:
            ee = evaluate_link(at_l1.with_transmittance(t)).energy_efficiency
            columns[t_label(t)].append(ee)
        l_char = spec.depth_scale_per_m * l1
        for n in spec.depth_indices():
            depth = depth_lower_bound(l_char, phi, n) if l_char > 0.0 else 0.0
            columns[depth_label(n)].append(depth)
    return _series(spec, grid, columns)


def run_sweep(spec: SweepSpec) -> CurveSeries:
    return {
        SweepVariable.DISTANCE_RATIO: sweep_distance_ratio,
        SweepVariable.INCIDENCE_ANGLE: sweep_incidence_angle,
        SweepVariable.S_RIS_DISTANCE: sweep_sris_distance,
    }[spec.variable](spec)


def asymptotic_bound(scenario: Scenario, transmittance: float) -> float:
    """Spectral efficiency as the RIS-D distance shrinks to zero.

    This is the limit of the distance-ratio sweep for ``r -> inf`` and an
    upper bound on every point of it.
    """
    limit = scenario.with_distances(ris_d=0.0).with_transmittance(transmittance)
    return evaluate_link(limit).spectral_efficiency


def plateau_ratio(
    scenario: Scenario,
    transmittance: float,
    epsilon: float = PLATEAU_EPSILON,
    grid_step: float = PLATEAU_STEP,
    r_max: float = PLATEAU_R_MAX,
) -> float:
    """Smallest grid ratio whose spectral efficiency is within ``epsilon``
    (relative) of the asymptotic bound."""
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if not grid_step > 0.0:
        raise DomainError(f"grid_step must be positive, got {grid_step!r}")
    target = (1.0 - epsilon) * asymptotic_bound(scenario, transmittance)
    l1 = scenario.beam.s_ris_distance
    base = scenario.with_transmittance(transmittance)
    k = 1
    while (r := k * grid_step) <= r_max:
        se = evaluate_link(base.with_distances(ris_d=l1 / r)).spectral_efficiency
        if se >= target:
            return r
        k += 1
    raise DomainError(f"plateau not reached within ratio {r_max:g}")
