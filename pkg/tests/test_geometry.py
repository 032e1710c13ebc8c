import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risplanner import geometry
from risplanner.errors import DomainError
from risplanner.geometry import (
    IncidentBeam,
    depth_lower_bound,
    module_dimensions,
    optimal_incidence_angle,
    refraction_angle,
    retardation_angle,
    ris_geometry,
    spot_diameter,
    virtual_divergence,
)

rad = math.radians
deg = math.degrees


def snell_bisect(phi, n):
    """Solve n sin(a) = sin(phi) for a by bisection (oracle)."""
    lo, hi = 0.0, phi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if n * math.sin(mid) < math.sin(phi):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def grid_argmin(l_char, n, lo_deg, hi_deg, step=0.01):
    """Brute-force 0.01 degree scan of the depth curve (oracle)."""
    best = None
    k = 0
    while (d := lo_deg + k * step) <= hi_deg + 1e-9:
        p = rad(d)
        a = snell_bisect(p, n)
        x = l_char / (2.0 * math.tan(a) * math.cos(p))
        if best is None or x < best[1]:
            best = (d, x)
        k += 1
    return best


@pytest.mark.parametrize(
    "phi_deg, n, expected_deg",
    [(51.0, 1.2, 40.36252240229412), (0.0, 1.5, 0.0), (30.0, 1.5, 19.47122063449069)],
)
def test_refraction_angle_examples(phi_deg, n, expected_deg):
    got = refraction_angle(rad(phi_deg), n)
    assert deg(got) == pytest.approx(expected_deg, abs=1e-9)
    assert got == pytest.approx(snell_bisect(rad(phi_deg), n), abs=1e-12)


@pytest.mark.parametrize(
    "phi_deg, n, expected_deg",
    [(51.0, 1.2, 10.637477597705878), (0.0, 1.2, 0.0), (51.0, 1.6, 21.940591757852413)],
)
def test_retardation_angle_examples(phi_deg, n, expected_deg):
    assert deg(retardation_angle(rad(phi_deg), n)) == pytest.approx(expected_deg, abs=1e-9)


@pytest.mark.parametrize("phi, n", [(-0.1, 1.2), (math.pi / 2, 1.2), (0.3, 0.9), (0.3, float("nan"))])
def test_refraction_angle_domain(phi, n):
    with pytest.raises(DomainError):
        refraction_angle(phi, n)


def test_spot_diameter_examples():
    assert spot_diameter(1e-3, 1000.0, rad(51)) == pytest.approx(1.0 / math.cos(rad(51)), rel=1e-15)
    assert spot_diameter(1e-3, 1000.0, rad(51)) == pytest.approx(1.5890, abs=1e-4)
    assert spot_diameter(1e-3, 1000.0, 0.0) == pytest.approx(1.0, rel=1e-15)
    assert spot_diameter(2e-3, 500.0, rad(60)) == pytest.approx(2.0, rel=1e-12)
    with pytest.raises(DomainError):
        spot_diameter(1e-3, 1000.0, math.pi / 2)


def test_depth_lower_bound_examples():
    assert depth_lower_bound(0.05, rad(51), 1.2) == pytest.approx(46.74e-3, abs=0.1e-3)
    assert depth_lower_bound(0.05, rad(51), 1.6) == pytest.approx(71.49e-3, abs=0.1e-3)
    # sqrt(2) index at 45 degrees refracts to exactly 30 degrees
    closed_form = 0.05 * math.sqrt(6.0) / 2.0
    assert depth_lower_bound(0.05, rad(45), math.sqrt(2.0)) == pytest.approx(closed_form, rel=1e-12)


@pytest.mark.parametrize("phi, n", [(0.0, 1.2), (math.pi / 2, 1.2), (0.5, 0.99)])
def test_depth_lower_bound_has_no_finite_value(phi, n):
    with pytest.raises(DomainError):
        depth_lower_bound(0.05, phi, n)


def test_module_dimensions():
    x = depth_lower_bound(0.05, rad(51), 1.2)
    b = spot_diameter(1e-3, 1000.0, rad(51))
    w, length, d = module_dimensions(b, x)
    assert (w, d) == (b, x)
    assert length == pytest.approx(4.7670471872, abs=1e-9)
    assert module_dimensions(1.0, x) == (1.0, 3.0, x)
    with pytest.raises(DomainError):
        module_dimensions(0.0, x)
    with pytest.raises(DomainError):
        module_dimensions(1.0, -1.0)


@pytest.mark.parametrize(
    "n, phi_deg, depth_mm", [(1.2, 53.37, 46.5831), (1.6, 48.54, 71.2250)]
)
def test_optimal_incidence_angle_examples(n, phi_deg, depth_mm):
    phi, x = optimal_incidence_angle(0.05, n, (rad(5), rad(85)))
    assert deg(phi) == pytest.approx(phi_deg, abs=0.05)
    assert x * 1e3 == pytest.approx(depth_mm, abs=1e-3)


def test_optimal_incidence_angle_collapsed_interval():
    phi, x = optimal_incidence_angle(0.05, 1.2, (rad(51), rad(51)))
    assert phi == rad(51)
    assert x == depth_lower_bound(0.05, rad(51), 1.2)


@pytest.mark.parametrize(
    "interval", [(0.0, 1.0), (rad(60), rad(50)), (rad(5), math.pi / 2)]
)
def test_optimal_incidence_angle_bad_interval(interval):
    with pytest.raises(DomainError):
        optimal_incidence_angle(0.05, 1.2, interval)


def test_virtual_divergence():
    assert virtual_divergence(1e-3, 0.0) == 1e-3
    assert virtual_divergence(1e-3, rad(51)) == pytest.approx(0.6293203910498375e-3, rel=1e-12)
    assert virtual_divergence(1e-3, rad(89.9999)) < 1e-8
    assert virtual_divergence(1e-3, rad(30)) > virtual_divergence(1e-3, rad(31))


def test_ris_geometry_baseline():
    beam = IncidentBeam(0.3, 1e-3, 1000.0, rad(51))
    g = ris_geometry(beam, 1.2, 0.05)
    assert g.retardation_angle == rad(51) - g.refraction_angle
    assert g.width == g.spot_diameter
    assert g.length == 3 * g.spot_diameter
    assert 0 <= g.refraction_angle <= rad(51)


def test_incident_beam_validation():
    with pytest.raises(DomainError):
        IncidentBeam(0.0, 1e-3, 1000.0, 0.5)
    with pytest.raises(DomainError):
        IncidentBeam(0.3, 1e-3, -1.0, 0.5)
    with pytest.raises(DomainError):
        IncidentBeam(0.3, 1e-3, 1.0, math.pi / 2)


def test_golden_section_on_parabola():
    x = geometry.golden_section_minimize(lambda v: (v - 0.3) ** 2, -1.0, 2.0, 1e-9)
    assert x == pytest.approx(0.3, abs=1e-9)


# --- properties -------------------------------------------------------------

angles = st.floats(min_value=1e-6, max_value=rad(90) - 1e-6)
indices = st.floats(min_value=1.0, max_value=2.0)


@settings(max_examples=1000, deadline=None)
@given(angles, indices)
def test_snell_identity(phi, n):
    assert abs(math.sin(phi) - n * math.sin(refraction_angle(phi, n))) < 1e-12


@settings(max_examples=300, deadline=None)
@given(angles, indices)
def test_refraction_never_exceeds_incidence(phi, n):
    a = refraction_angle(phi, n)
    assert a <= phi
    if n > 1.0:
        assert a < phi
    assert refraction_angle(phi, 1.0) == phi


def test_depth_diverges_at_edges():
    inner = depth_lower_bound(0.05, rad(53), 1.2)
    assert depth_lower_bound(0.05, rad(0.1), 1.2) > 100 * inner
    assert depth_lower_bound(0.05, rad(89.9), 1.2) > 100 * inner


@settings(max_examples=300, deadline=None)
@given(
    st.floats(min_value=rad(1), max_value=rad(89)),
    st.floats(min_value=1.05, max_value=2.0),
    st.floats(min_value=1e-3, max_value=0.5),
)
def test_depth_increases_with_index(phi, n1, dn):
    n2 = n1 + dn
    assert depth_lower_bound(0.05, phi, n2) > depth_lower_bound(0.05, phi, n1)


def test_depth_ratio_between_indices():
    ratio = depth_lower_bound(0.05, rad(51), 1.6) / depth_lower_bound(0.05, rad(51), 1.2)
    assert ratio == pytest.approx(1.529, abs=0.005)
    assert ratio == pytest.approx(71.49 / 46.74, abs=0.005)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-3, max_value=10.0), st.floats(min_value=0.1, max_value=10.0))
def test_linear_scaling(l_char, k):
    phi = rad(51)
    assert depth_lower_bound(k * l_char, phi, 1.2) == pytest.approx(
        k * depth_lower_bound(l_char, phi, 1.2), rel=1e-14
    )
    assert spot_diameter(k * 1e-3, 1000.0, phi) == pytest.approx(
        k * spot_diameter(1e-3, 1000.0, phi), rel=1e-14
    )
    assert spot_diameter(1e-3, k * l_char, phi) == pytest.approx(
        k * spot_diameter(1e-3, l_char, phi), rel=1e-14
    )


def test_optimizer_matches_grid_oracle():
    import random

    rng = random.Random(20240501)
    for _ in range(20):
        l_char = rng.uniform(0.01, 0.2)
        n = rng.uniform(1.05, 2.0)
        phi, _ = optimal_incidence_angle(l_char, n, (rad(5), rad(85)))
        best_deg, _ = grid_argmin(l_char, n, 5.0, 85.0)
        assert abs(deg(phi) - best_deg) <= 0.05


@pytest.mark.parametrize("n", [1.2, 1.4, 1.6])
def test_depth_curve_is_unimodal(n):
    xs = [depth_lower_bound(0.05, rad(1 + 0.1 * k), n) for k in range(881)]
    minima = [
        i for i in range(1, len(xs) - 1) if xs[i] < xs[i - 1] and xs[i] < xs[i + 1]
    ]
    assert len(minima) == 1
