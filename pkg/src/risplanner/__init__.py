"""Geometry and link-budget planning for power-amplifying LCoS surfaces in
near-terrestrial free-space optical links."""

from .channel import AtmosphericParams, DivergenceMode, LossBreakdown, compose
from .config import ScenarioConfig, load_config, parse_scenario, serialize_scenario
from .errors import ConfigError, DomainError, OutputError, PlannerError
from .geometry import (
    IncidentBeam,
    RisGeometry,
    depth_lower_bound,
    optimal_incidence_angle,
    refraction_angle,
    retardation_angle,
    ris_geometry,
    spot_diameter,
)
from .linkbudget import LinkResult, RisDevice, Scenario, evaluate_link, received_power
from .sweep import (
    CurveSeries,
    SweepSpec,
    SweepVariable,
    asymptotic_bound,
    plateau_ratio,
    run_sweep,
)

__all__ = [
    "AtmosphericParams",
    "ConfigError",
    "CurveSeries",
    "DivergenceMode",
    "DomainError",
    "IncidentBeam",
    "LinkResult",
    "LossBreakdown",
    "OutputError",
    "PlannerError",
    "RisDevice",
    "RisGeometry",
    "Scenario",
    "ScenarioConfig",
    "SweepSpec",
    "SweepVariable",
    "asymptotic_bound",
    "compose",
    "depth_lower_bound",
    "evaluate_link",
    "load_config",
    "optimal_incidence_angle",
    "parse_scenario",
    "plateau_ratio",
    "received_power",
    "refraction_angle",
    "retardation_angle",
    "ris_geometry",
    "run_sweep",
    "serialize_scenario",
    "spot_diameter",
]
