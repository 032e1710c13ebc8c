"""End-to-end budget of a source -> amplifying surface -> receiver link.

The chain is

    P_rx = P_t * eta_tx * tau_atm(L1) * [eta_g**2 * T] * tau_atm(L2)
               * tau_geo * eta_rx

with any enabled weather/turbulence/pointing extras applied on each
sub-link. Detection is square-law over flat additive noise and the rate is
the Shannon bound ``log2(1 + SNR)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from . import channel
from .channel import AtmosphericParams, DivergenceMode, LossBreakdown
from .errors import (
    DomainError,
    ensure_efficiency,
    ensure_non_negative,
    ensure_positive,
)
from .geometry import IncidentBeam


@dataclass(frozen=True)
class RisDevice:
    """The surface as seen by the link.

    ``transmittance`` above 1 means the doped cavity amplifies. The noise
    figure only degrades the SNR while amplifying.
    """

    transmittance: float = 0.8
    glass_efficiency: float = 0.95
    refractive_index: float = 1.2
    incidence_angle: float = math.radians(51.0)
    characteristic_length: float = 0.05
    amplifier_noise_figure_db: float = 0.0

    def __post_init__(self) -> None:
        ensure_non_negative(self.transmittance, "transmittance")
        ensure_efficiency(self.glass_efficiency, "glass_efficiency")
        if not self.refractive_index >= 1.0:
            raise DomainError(
                f"refractive_index must be >= 1, got {self.refractive_index!r}"
            )
        if not 0.0 <= self.incidence_angle < math.pi / 2:
            raise DomainError(
                f"incidence_angle must lie in [0, pi/2), got {self.incidence_angle!r}"
            )
        ensure_positive(self.characteristic_length, "characteristic_length")
        ensure_non_negative(self.amplifier_noise_figure_db, "amplifier_noise_figure_db")


def _default_beam() -> IncidentBeam:
    return IncidentBeam(
        transmit_power=0.3,
        divergence=1e-3,
        s_ris_distance=1000.0,
        incidence_angle=math.radians(51.0),
    )


@dataclass(frozen=True)
class Scenario:
    """Full link description in SI units. Defaults give the 780 nm baseline."""

    wavelength: float = 780e-9
    beam: IncidentBeam = field(default_factory=_default_beam)
    ris: RisDevice = field(default_factory=RisDevice)
    ris_d_distance: float = 1000.0
    pd_diameter: float = 2.5e-3
    tx_efficiency: float = 0.95
    rx_efficiency: float = 0.95
    atmosphere: AtmosphericParams = field(default_factory=AtmosphericParams)
    bandwidth: float = 1e9
    responsivity: float = 0.5
    noise_psd: float = 1e-27
    total_power: float = 0.4838
    divergence_mode: DivergenceMode = DivergenceMode.TOTAL_DISTANCE

    def __post_init__(self) -> None:
        ensure_positive(self.wavelength, "wavelength")
        ensure_non_negative(self.ris_d_distance, "ris_d_distance")
        ensure_positive(self.pd_diameter, "pd_diameter")
        ensure_efficiency(self.tx_efficiency, "tx_efficiency")
        ensure_efficiency(self.rx_efficiency, "rx_efficiency")
        ensure_positive(self.bandwidth, "bandwidth")
        ensure_non_negative(self.responsivity, "responsivity")
        ensure_positive(self.noise_psd, "noise_psd")
        ensure_positive(self.total_power, "total_power")
        object.__setattr__(self, "divergence_mode", DivergenceMode(self.divergence_mode))
        if self.beam.incidence_angle != self.ris.incidence_angle:
            raise DomainError("beam and ris incidence angles differ")

    @property
    def incidence_angle(self) -> float:
        return self.beam.incidence_angle

    def with_incidence_angle(self, phi: float) -> Scenario:
        return replace(
            self,
            beam=replace(self.beam, incidence_angle=phi),
            ris=replace(self.ris, incidence_angle=phi),
        )

    def with_distances(
        self, s_ris: float | None = None, ris_d: float | None = None
    ) -> Scenario:
        beam = self.beam if s_ris is None else replace(self.beam, s_ris_distance=s_ris)
        return replace(
            self,
            beam=beam,
            ris_d_distance=self.ris_d_distance if ris_d is None else ris_d,
        )

    def with_transmittance(self, transmittance: float) -> Scenario:
        return replace(self, ris=replace(self.ris, transmittance=transmittance))


@dataclass(frozen=True)
class LinkResult:
    received_power: float
    ris_emerged_power: float
    snr: float
    spectral_efficiency: float
    energy_efficiency: float
    breakdown: LossBreakdown


def ris_output_power(p_in: float, transmittance: float, glass_efficiency: float) -> float:
    """Power leaving the surface: one glass crossing in, one out."""
    ensure_non_negative(p_in, "p_in")
    ensure_non_negative(transmittance, "transmittance")
    ensure_efficiency(glass_efficiency, "glass_efficiency")
    return glass_efficiency * glass_efficiency * transmittance * p_in


def _sublink_factors(
    scenario: Scenario, distance: float, suffix: str
) -> list[tuple[str, float]]:
    atm = scenario.atmosphere
    factors = [
        (
            f"atmosphere_{suffix}",
            channel.beer_lambert_transmittance(atm.attenuation_db_per_km, distance),
        )
    ]
    for name, db in channel.sublink_extras_db(atm, scenario.wavelength, distance):
        factors.append((f"{name}_{suffix}", channel.db_to_transmittance(db)))
    return factors


def received_power(scenario: Scenario) -> tuple[float, LossBreakdown]:
    """Power at the detector and every factor that produced it."""
    p, _, breakdown = _chain(scenario)
    return p, breakdown


def _chain(scenario: Scenario) -> tuple[float, float, LossBreakdown]:
    beam, ris = scenario.beam, scenario.ris
    first = _sublink_factors(scenario, beam.s_ris_distance, "s_ris")
    second = _sublink_factors(scenario, scenario.ris_d_distance, "ris_d")
    tau_geo = channel.geometric_transmittance(
        scenario.pd_diameter,
        beam.divergence,
        beam.s_ris_distance,
        scenario.ris_d_distance,
        beam.incidence_angle,
        scenario.divergence_mode,
    )

    p_in = beam.transmit_power * scenario.tx_efficiency
    for _, tau in first:
        p_in *= tau
    p_ris = ris_output_power(p_in, ris.transmittance, ris.glass_efficiency)
    p_rx = p_ris
    for _, tau in second:
        p_rx *= tau
    p_rx *= tau_geo * scenario.rx_efficiency

    factors = [("tx_efficiency", scenario.tx_efficiency), *first]
    factors += [
        ("glass_in", ris.glass_efficiency),
        ("ris_transmittance", ris.transmittance),
        ("glass_out", ris.glass_efficiency),
    ]
    factors += [*second, ("geometric", tau_geo), ("rx_efficiency", scenario.rx_efficiency)]
    return p_rx, p_ris, LossBreakdown.from_transmittances(factors)


def snr(
    received_power: float,
    responsivity: float,
    noise_psd: float,
    bandwidth: float,
    noise_figure_db: float = 0.0,
) -> float:
    """Electrical SNR of a direct-detection receiver."""
    ensure_non_negative(received_power, "received_power")
    ensure_non_negative(responsivity, "responsivity")
    ensure_non_negative(noise_figure_db, "noise_figure_db")
    if not (noise_psd > 0.0 and bandwidth > 0.0):
        raise DomainError("noise power must be positive")
    noise = noise_psd * bandwidth * 10.0 ** (noise_figure_db / 10.0)
    return (responsivity * received_power) ** 2 / noise


def spectral_efficiency(snr_value: float) -> float:
    ensure_non_negative(snr_value, "snr")
    return math.log2(1.0 + snr_value)


def energy_efficiency(se: float, total_power: float) -> float:
    ensure_non_negative(se, "spectral_efficiency")
    if not total_power > 0.0:
        raise DomainError(f"total_power must be positive, got {total_power!r}")
    return se / total_power


def evaluate_link(scenario: Scenario) -> LinkResult:
    p_rx, p_ris, breakdown = _chain(scenario)
    ris = scenario.ris
    nf = ris.amplifier_noise_figure_db if ris.transmittance > 1.0 else 0.0
    s = snr(p_rx, scenario.responsivity, scenario.noise_psd, scenario.bandwidth, nf)
    se = spectral_efficiency(s)
    return LinkResult(
        received_power=p_rx,
        ris_emerged_power=p_ris,
        snr=s,
        spectral_efficiency=se,
        energy_efficiency=energy_efficiency(se, scenario.total_power),
        breakdown=breakdown,
    )

