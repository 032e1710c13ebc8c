"""Ray geometry and module sizing for the LCoS surface.

Angles are radians throughout this module and are measured on the central
ray against the substrate normal. Outside the device the medium is air
(index 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, ensure_non_negative, ensure_positive

HALF_PI = math.pi / 2.0

#: Resolution of the depth-optimal angle search (0.01 degree).
ANGLE_TOLERANCE = math.radians(0.01)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _check_incidence(phi: float) -> None:
    if not math.isfinite(phi) or not 0.0 <= phi < HALF_PI:
        raise DomainError(f"incidence angle must lie in [0, pi/2), got {phi!r}")


def _check_index(n: float) -> None:
    if not math.isfinite(n) or n < 1.0:
        raise DomainError(f"refractive index must be >= 1, got {n!r}")


@dataclass(frozen=True)
class IncidentBeam:
    """Beam arriving at the surface from the source.

    ``divergence`` is the full angle and ``s_ris_distance`` the source to
    surface path length.
    """

    transmit_power: float
    divergence: float
    s_ris_distance: float
    incidence_angle: float

    def __post_init__(self) -> None:
        ensure_positive(self.transmit_power, "transmit_power")
        ensure_positive(self.divergence, "divergence")
        ensure_non_negative(self.s_ris_distance, "s_ris_distance")
        _check_incidence(self.incidence_angle)


@dataclass(frozen=True)
class RisGeometry:
    refractive_index: float
    characteristic_length: float
    refraction_angle: float
    retardation_angle: float
    spot_diameter: float
    depth: float
    width: float
    length: float


def refraction_angle(phi: float, n: float) -> float:
    """Angle of the refracted central ray inside the device (Snell's law)."""
    _check_incidence(phi)
    _check_index(n)
    if n == 1.0:
        return phi
    # rounding in asin(sin(phi) / n) must not push alpha past phi
    return min(math.asin(math.sin(phi) / n), phi)


def retardation_angle(phi: float, n: float) -> float:
    return phi - refraction_angle(phi, n)


def spot_diameter(theta_t: float, l1: float, phi: float) -> float:
    """Footprint of the divergent beam on the inclined glass substrate."""
    ensure_positive(theta_t, "theta_t")
    ensure_non_negative(l1, "l1")
    _check_incidence(phi)
    return theta_t * l1 / math.cos(phi)


def depth_lower_bound(l_char: float, phi: float, n: float) -> float:
    """Smallest depth that keeps the backplane reflection clear of the beam.

    ``x = l_char / (2 tan(alpha) cos(phi))``. Diverges as ``phi`` goes to 0
    (no refraction tilt) or to pi/2 (grazing incidence).
    """
    ensure_positive(l_char, "l_char")
    alpha = refraction_angle(phi, n)
    tan_alpha = math.tan(alpha)
    if tan_alpha <= 0.0:
        raise DomainError(
            f"no finite depth at incidence angle {phi!r} with index {n!r}"
        )
    return l_char / (2.0 * tan_alpha * math.cos(phi))


def module_dimensions(spot: float, depth: float) -> tuple[float, float, float]:
    """Return ``(width, length, depth)`` of the module housing a spot."""
    ensure_positive(spot, "spot")
    ensure_positive(depth, "depth")
    return spot, 3.0 * spot, depth


def virtual_divergence(theta_t: float, phi: float) -> float:
    """Divergence the receiver perceives as if the beam started at the surface.

    The inclined substrate compresses the in-plane spread by ``cos(phi)``.
    """
    ensure_positive(theta_t, "theta_t")
    _check_incidence(phi)
    return theta_t * math.cos(phi)


def golden_section_minimize(
    f: Callable[[float], float], lo: float, hi: float, tol: float
) -> float:
    """Minimizer of a unimodal ``f`` on ``[lo, hi]`` to within ``tol``."""
    if hi - lo <= tol:
        return 0.5 * (lo + hi)
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def optimal_incidence_angle(
    l_char: float, n: float, search_interval: tuple[float, float]
) -> tuple[float, float]:
    """Incidence angle minimizing the depth bound, and that minimum depth."""
    lo, hi = search_interval
    if not (math.isfinite(lo) and math.isfinite(hi)) or not 0.0 < lo <= hi < HALF_PI:
        raise DomainError(
            f"search interval must satisfy 0 < lo <= hi < pi/2, got {search_interval!r}"
        )

    def depth(phi: float) -> float:
        return depth_lower_bound(l_char, phi, n)

    phi_star = golden_section_minimize(depth, lo, hi, ANGLE_TOLERANCE)
    return phi_star, depth(phi_star)


def ris_geometry(beam: IncidentBeam, n: float, l_char: float) -> RisGeometry:
    """Derive every module dimension for a beam hitting the surface."""
    phi = beam.incidence_angle
    alpha = refraction_angle(phi, n)
    spot = spot_diameter(beam.divergence, beam.s_ris_distance, phi)
    depth = depth_lower_bound(l_char, phi, n)
    width, length, depth = module_dimensions(spot, depth)
    return RisGeometry(
        refractive_index=n,
        characteristic_length=l_char,
        refraction_angle=alpha,
        retardation_angle=phi - alpha,
        spot_diameter=spot,
        depth=depth,
        width=width,
        length=length,
    )
