"""JSON scenario documents.

Keys carry their unit (``wavelength_nm``, ``incidence_angle_deg``, ...) and
every key is optional; a missing key takes the 780 nm baseline value. The
in-memory :class:`~risplanner.linkbudget.Scenario` is SI throughout.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Callable

from .channel import AtmosphericParams, DivergenceMode
from .errors import ConfigError, DomainError
from .geometry import IncidentBeam
from .linkbudget import RisDevice, Scenario
from .sweep import DEPTH_SCALE_PER_M, PLATEAU_EPSILON, PLATEAU_R_MAX, PLATEAU_STEP

_POSITIVE = "positive"
_NON_NEGATIVE = "non-negative"
_EFFICIENCY = "efficiency"
_ANGLE = "angle"
_INDEX = "index"
_RATIO = "ratio"


@dataclass(frozen=True)
class ScenarioConfig:
    wavelength_nm: float = 780.0
    transmit_power_w: float = 0.3
    beam_divergence_mrad: float = 1.0
    incidence_angle_deg: float = 51.0
    refractive_index: float = 1.2
    characteristic_length_m: float = 0.05
    ris_transmittance: float = 0.8
    glass_efficiency: float = 0.95
    amplifier_noise_figure_db: float = 0.0
    tx_efficiency: float = 0.95
    rx_efficiency: float = 0.95
    s_ris_distance_m: float = 1000.0
    ris_d_distance_m: float = 1000.0
    pd_diameter_mm: float = 2.5
    attenuation_db_per_km: float = 2.6
    cn2_m_minus_2_3: float = 0.0
    rain_rate_mm_per_h: float = 0.0
    visibility_km: float | None = None
    pointing_loss_db: float = 0.0
    bandwidth_hz: float = 1e9
    responsivity_a_per_w: float = 0.5
    noise_psd_a2_per_hz: float = 1e-27
    total_power_w: float = 0.4838
    divergence_mode: str = DivergenceMode.TOTAL_DISTANCE.value
    # sweep and search defaults
    depth_scale_per_m: float = DEPTH_SCALE_PER_M
    plateau_epsilon: float = PLATEAU_EPSILON
    plateau_step: float = PLATEAU_STEP
    plateau_r_max: float = PLATEAU_R_MAX
    search_min_deg: float = 5.0
    search_max_deg: float = 85.0

    def to_scenario(self) -> Scenario:
        phi = math.radians(self.incidence_angle_deg)
        try:
            return Scenario(
                wavelength=self.wavelength_nm / 1e9,
                beam=IncidentBeam(
                    transmit_power=self.transmit_power_w,
                    divergence=self.beam_divergence_mrad / 1e3,
                    s_ris_distance=self.s_ris_distance_m,
                    incidence_angle=phi,
                ),
                ris=RisDevice(
                    transmittance=self.ris_transmittance,
                    glass_efficiency=self.glass_efficiency,
                    refractive_index=self.refractive_index,
                    incidence_angle=phi,
                    characteristic_length=self.characteristic_length_m,
                    amplifier_noise_figure_db=self.amplifier_noise_figure_db,
                ),
                ris_d_distance=self.ris_d_distance_m,
                pd_diameter=self.pd_diameter_mm / 1e3,
                tx_efficiency=self.tx_efficiency,
                rx_efficiency=self.rx_efficiency,
                atmosphere=AtmosphericParams(
                    attenuation_db_per_km=self.attenuation_db_per_km,
                    cn2=self.cn2_m_minus_2_3,
                    rain_rate_mm_per_h=self.rain_rate_mm_per_h,
                    visibility_km=self.visibility_km,
                    pointing_loss_db=self.pointing_loss_db,
                ),
                bandwidth=self.bandwidth_hz,
                responsivity=self.responsivity_a_per_w,
                noise_psd=self.noise_psd_a2_per_hz,
                total_power=self.total_power_w,
                divergence_mode=DivergenceMode(self.divergence_mode),
            )
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"

    @property
    def search_interval(self) -> tuple[float, float]:
        return math.radians(self.search_min_deg), math.radians(self.search_max_deg)


_RULES: dict[str, str] = {
    "wavelength_nm": _POSITIVE,
    "transmit_power_w": _POSITIVE,
    "beam_divergence_mrad": _POSITIVE,
    "incidence_angle_deg": _ANGLE,
    "refractive_index": _INDEX,
    "characteristic_length_m": _POSITIVE,
    "ris_transmittance": _NON_NEGATIVE,
    "glass_efficiency": _EFFICIENCY,
    "amplifier_noise_figure_db": _NON_NEGATIVE,
    "tx_efficiency": _EFFICIENCY,
    "rx_efficiency": _EFFICIENCY,
    "s_ris_distance_m": _NON_NEGATIVE,
    "ris_d_distance_m": _NON_NEGATIVE,
    "pd_diameter_mm": _POSITIVE,
    "attenuation_db_per_km": _NON_NEGATIVE,
    "cn2_m_minus_2_3": _NON_NEGATIVE,
    "rain_rate_mm_per_h": _NON_NEGATIVE,
    "visibility_km": _POSITIVE,
    "pointing_loss_db": _NON_NEGATIVE,
    "bandwidth_hz": _POSITIVE,
    "responsivity_a_per_w": _NON_NEGATIVE,
    "noise_psd_a2_per_hz": _POSITIVE,
    "total_power_w": _POSITIVE,
    "depth_scale_per_m": _POSITIVE,
    "plateau_epsilon": _RATIO,
    "plateau_step": _POSITIVE,
    "plateau_r_max": _POSITIVE,
    "search_min_deg": _ANGLE,
    "search_max_deg": _ANGLE,
}

_CHECKS: dict[str, tuple[Callable[[float], bool], str]] = {
    _POSITIVE: (lambda v: v > 0.0, "must be positive"),
    _NON_NEGATIVE: (lambda v: v >= 0.0, "must be non-negative"),
    _EFFICIENCY: (lambda v: 0.0 < v <= 1.0, "must lie in (0, 1]"),
    _ANGLE: (lambda v: 0.0 <= v < 90.0, "must lie in [0, 90) degrees"),
    _INDEX: (lambda v: v >= 1.0, "must be >= 1"),
    _RATIO: (lambda v: 0.0 < v < 1.0, "must lie in (0, 1)"),
}


def _validate_value(key: str, value: Any) -> Any:
    if key == "divergence_mode":
        modes = [m.value for m in DivergenceMode]
        if value not in modes:
            raise ConfigError(f"{key}: must be one of {modes}, got {value!r}")
        return value
    if key == "visibility_km" and value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    value = float(value)
    check, message = _CHECKS[_RULES[key]]
    if not math.isfinite(value) or not check(value):
        raise ConfigError(f"{key}: {message}, got {value!r}")
    return value


def config_from_mapping(data: Any) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ConfigError("scenario document must be a JSON object")
    known = {f.name for f in fields(ScenarioConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(unknown)}")
    values = {key: _validate_value(key, value) for key, value in data.items()}
    config = ScenarioConfig(**values)
    if config.search_min_deg <= 0.0 or config.search_min_deg > config.search_max_deg:
        raise ConfigError(
            "search_min_deg: need 0 < search_min_deg <= search_max_deg"
        )
    return config


def _read_source(source: str | os.PathLike) -> str:
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return source
    try:
        return Path(source).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read scenario {os.fspath(source)!r}: {exc}") from exc


def load_config(source: str | os.PathLike) -> ScenarioConfig:
    """Parse a JSON document (given as text or as a file path)."""
    text = _read_source(source)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed scenario document: {exc}") from exc
    return config_from_mapping(data)


def parse_scenario(source: str | os.PathLike) -> Scenario:
    return load_config(source).to_scenario()


def _exact_inverse(si: float, to_si: Callable[[float], float], guess: float) -> float:
    # nudge the boundary value until it converts back to exactly ``si``
    if to_si(guess) == si:
        return guess
    up = down = guess
    for _ in range(64):
        up = math.nextafter(up, math.inf)
        if to_si(up) == si:
            return up
        down = math.nextafter(down, -math.inf)
        if to_si(down) == si:
            return down
    return guess


def config_from_scenario(
    scenario: Scenario, base: ScenarioConfig | None = None
) -> ScenarioConfig:
    """Express a scenario in boundary units, exactly invertible by
    :meth:`ScenarioConfig.to_scenario`. Sweep defaults come from ``base``."""
    beam, ris, atm = scenario.beam, scenario.ris, scenario.atmosphere
    return replace(
        base or ScenarioConfig(),
        wavelength_nm=_exact_inverse(
            scenario.wavelength, lambda v: v / 1e9, scenario.wavelength * 1e9
        ),
        transmit_power_w=beam.transmit_power,
        beam_divergence_mrad=_exact_inverse(
            beam.divergence, lambda v: v / 1e3, beam.divergence * 1e3
        ),
        incidence_angle_deg=_exact_inverse(
            beam.incidence_angle, math.radians, math.degrees(beam.incidence_angle)
        ),
        refractive_index=ris.refractive_index,
        characteristic_length_m=ris.characteristic_length,
        ris_transmittance=ris.transmittance,
        glass_efficiency=ris.glass_efficiency,
        amplifier_noise_figure_db=ris.amplifier_noise_figure_db,
        tx_efficiency=scenario.tx_efficiency,
        rx_efficiency=scenario.rx_efficiency,
        s_ris_distance_m=beam.s_ris_distance,
        ris_d_distance_m=scenario.ris_d_distance,
        pd_diameter_mm=_exact_inverse(
            scenario.pd_diameter, lambda v: v / 1e3, scenario.pd_diameter * 1e3
        ),
        attenuation_db_per_km=atm.attenuation_db_per_km,
        cn2_m_minus_2_3=atm.cn2,
        rain_rate_mm_per_h=atm.rain_rate_mm_per_h,
        visibility_km=atm.visibility_km,
        pointing_loss_db=atm.pointing_loss_db,
        bandwidth_hz=scenario.bandwidth,
        responsivity_a_per_w=scenario.responsivity,
        noise_psd_a2_per_hz=scenario.noise_psd,
        total_power_w=scenario.total_power,
        divergence_mode=scenario.divergence_mode.value,
    )


def serialize_scenario(scenario: Scenario) -> str:
    return config_from_scenario(scenario).to_json()
