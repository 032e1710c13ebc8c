"""Loss and attenuation components of a free-space optical sub-link.

Each component is available either as a linear transmittance or as a
positive dB loss. ``compose`` turns a list of dB losses into a
:class:`LossBreakdown`.

References
----------
Andrews & Phillips, Laser Beam Propagation through Random Media (Rytov
variance of a plane wave).
Carbonneau power-law rain fit for optical links (k = 1.076, a = 0.67).
Kim, McArthur & Korevaar, Comparison of laser beam propagation at 785 nm
and 1550 nm in fog and haze (visibility model).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import (
    DomainError,
    ensure_non_negative,
    ensure_positive,
)

RAIN_K = 1.076
RAIN_A = 0.67
RYTOV_MARGIN_FACTOR = 4.343  # 10 log10(e)
FOG_REFERENCE_NM = 550.0


class DivergenceMode(str, Enum):
    """How the beam diameter at the receiver is computed.

    ``TOTAL_DISTANCE`` spreads the source divergence over both sub-links.
    ``VIRTUAL`` spreads the source divergence over the first sub-link and
    the compressed virtual divergence over the second.
    """

    TOTAL_DISTANCE = "total_distance"
    VIRTUAL = "virtual"


def db_to_transmittance(db: float) -> float:
    return 10.0 ** (-db / 10.0)


def transmittance_to_db(tau: float) -> float:
    if tau == 0.0:
        return math.inf
    return -10.0 * math.log10(tau)


@dataclass(frozen=True)
class AtmosphericParams:
    """Per-kilometre propagation conditions shared by both sub-links.

    ``cn2`` of 0, ``rain_rate_mm_per_h`` of 0, ``visibility_km`` of None and
    ``pointing_loss_db`` of 0 switch the matching extra loss off.
    """

    attenuation_db_per_km: float = 2.6
    cn2: float = 0.0
    rain_rate_mm_per_h: float = 0.0
    visibility_km: float | None = None
    pointing_loss_db: float = 0.0

    def __post_init__(self) -> None:
        ensure_non_negative(self.attenuation_db_per_km, "attenuation_db_per_km")
        ensure_non_negative(self.cn2, "cn2")
        ensure_non_negative(self.rain_rate_mm_per_h, "rain_rate_mm_per_h")
        if self.visibility_km is not None:
            ensure_positive(self.visibility_km, "visibility_km")
        ensure_non_negative(self.pointing_loss_db, "pointing_loss_db")


@dataclass(frozen=True)
class LossComponent:
    component_id: str
    transmittance: float
    db: float


@dataclass(frozen=True)
class LossBreakdown:
    """Ordered factors whose product maps an input power to an output power.

    Gains (transmittance above 1, negative dB) are allowed so an amplifying
    stage can sit in the same chain as the passive losses.
    """

    components: tuple[LossComponent, ...] = ()

    @property
    def total_transmittance(self) -> float:
        total = 1.0
        for c in self.components:
            total *= c.transmittance
        return total

    @property
    def total_db(self) -> float:
        return math.fsum(c.db for c in self.components)

    def __getitem__(self, component_id: str) -> LossComponent:
        for c in self.components:
            if c.component_id == component_id:
                return c
        raise KeyError(component_id)

    def ids(self) -> list[str]:
        return [c.component_id for c in self.components]

    @classmethod
    def from_transmittances(
        cls, factors: Iterable[tuple[str, float]]
    ) -> LossBreakdown:
        comps = []
        for cid, tau in factors:
            ensure_non_negative(tau, cid)
            comps.append(LossComponent(cid, tau, transmittance_to_db(tau)))
        return cls(tuple(comps))


def compose(components: Iterable[tuple[str, float]]) -> LossBreakdown:
    """Build a breakdown from ``(id, loss_db)`` pairs of passive losses."""
    comps = []
    for cid, db in components:
        ensure_non_negative(db, f"loss {cid!r}")
        comps.append(LossComponent(cid, db_to_transmittance(db), db))
    return LossBreakdown(tuple(comps))


def beer_lambert_transmittance(kappa_db_per_km: float, distance: float) -> float:
    ensure_non_negative(kappa_db_per_km, "kappa_db_per_km")
    ensure_non_negative(distance, "distance")
    return 10.0 ** (-kappa_db_per_km * (distance / 1000.0) / 10.0)


def receiver_beam_diameter(
    theta_t: float,
    l1: float,
    l2: float,
    phi: float,
    mode: DivergenceMode | str = DivergenceMode.TOTAL_DISTANCE,
) -> float:
    ensure_non_negative(theta_t, "theta_t")
    ensure_non_negative(l1, "l1")
    ensure_non_negative(l2, "l2")
    mode = DivergenceMode(mode)
    if mode is DivergenceMode.TOTAL_DISTANCE:
        return theta_t * (l1 + l2)
    if not 0.0 <= phi < math.pi / 2:
        raise DomainError(f"incidence angle must lie in [0, pi/2), got {phi!r}")
    return theta_t * (l1 + math.cos(phi) * l2)


def geometric_transmittance(
    pd_diameter: float,
    theta_t: float,
    l1: float,
    l2: float,
    phi: float,
    mode: DivergenceMode | str = DivergenceMode.TOTAL_DISTANCE,
) -> float:
    """Fraction of the beam captured by the photodetector aperture.

    Uses the flat-top approximation ``(D / d_r)**2``, capped at 1 once the
    beam is narrower than the aperture.
    """
    ensure_positive(pd_diameter, "pd_diameter")
    d_r = receiver_beam_diameter(theta_t, l1, l2, phi, mode)
    if d_r <= pd_diameter:
        return 1.0
    return (pd_diameter / d_r) ** 2


def rytov_variance(cn2: float, wavelength: float, distance: float) -> float:
    """Plane-wave Rytov variance ``1.23 Cn2 k^(7/6) L^(11/6)``."""
    ensure_non_negative(cn2, "cn2")
    ensure_positive(wavelength, "wavelength")
    ensure_non_negative(distance, "distance")
    k = 2.0 * math.pi / wavelength
    return 1.23 * cn2 * k ** (7.0 / 6.0) * distance ** (11.0 / 6.0)


def scintillation_margin_db(cn2: float, wavelength: float, distance: float) -> float:
    return RYTOV_MARGIN_FACTOR * math.sqrt(rytov_variance(cn2, wavelength, distance))


def rain_attenuation_db(rate_mm_per_h: float, distance: float) -> float:
    ensure_non_negative(rate_mm_per_h, "rate_mm_per_h")
    ensure_non_negative(distance, "distance")
    return RAIN_K * rate_mm_per_h**RAIN_A * (distance / 1000.0)


def _kim_exponent(visibility_km: float) -> float:
    v = visibility_km
    if v > 50.0:
        return 1.6
    if v > 6.0:
        return 1.3
    if v > 1.0:
        return 0.16 * v + 0.34
    if v > 0.5:
        return v - 0.5
    return 0.0


def fog_attenuation_db(visibility_km: float, wavelength: float, distance: float) -> float:
    """Fog/haze loss from visibility, Kim model."""
    ensure_positive(visibility_km, "visibility_km")
    ensure_positive(wavelength, "wavelength")
    ensure_non_negative(distance, "distance")
    q = _kim_exponent(visibility_km)
    beta = (3.91 / visibility_km) * (wavelength * 1e9 / FOG_REFERENCE_NM) ** (-q)
    return beta * (distance / 1000.0)


def pointing_loss_db(configured_db: float) -> float:
    return ensure_non_negative(configured_db, "pointing_loss_db")


def sublink_extras_db(
    atmosphere: AtmosphericParams, wavelength: float, distance: float
) -> list[tuple[str, float]]:
    """Enabled extra losses over one sub-link as ``(name, dB)`` pairs."""
    extras = []
    if atmosphere.cn2 > 0.0:
        extras.append(
            ("scintillation", scintillation_margin_db(atmosphere.cn2, wavelength, distance))
        )
    if atmosphere.rain_rate_mm_per_h > 0.0:
        extras.append(("rain", rain_attenuation_db(atmosphere.rain_rate_mm_per_h, distance)))
    if atmosphere.visibility_km is not None:
        extras.append(("fog", fog_attenuation_db(atmosphere.visibility_km, wavelength, distance)))
    if atmosphere.pointing_loss_db > 0.0:
        extras.append(("pointing", pointing_loss_db(atmosphere.pointing_loss_db)))
    return extras
