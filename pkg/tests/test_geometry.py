import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from risloc.geometry import (RisGeometry, UeTruth, angle_steering, angles_from_cosines,
                             array_response, array_response_matrix, direction_cosines,
                             element_indices, exact_distance, fresnel_distance,
                             near_field_steering, spatial_frequencies, unit_phasor)

angles = st.floats(-1.5, 1.5)


def test_geometry_validation():
    with pytest.raises(ValueError):
        RisGeometry(4, 5, 0.15, 0.15, 0.3)
    with pytest.raises(ValueError):
        RisGeometry(5, 5, 0.0, 0.15, 0.3)
    with pytest.raises(ValueError):
        RisGeometry(5, 5, 0.15, 0.15, -1.0)
    g = RisGeometry.half_wavelength(5, 3)
    assert g.n == 15 and g.d_h == pytest.approx(0.15)


def test_ue_validation():
    with pytest.raises(ValueError):
        UeTruth(np.pi / 2, 0.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        UeTruth(0.0, 0.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        UeTruth(0.0, 0.0, 1.0, 1.0, 1.5)
    assert UeTruth(0.1, 0.2, 3.0, 2.0, 0.25).q == pytest.approx(0.5)


@pytest.mark.parametrize("n, expected", [(1, (-2, -2)), (13, (0, 0)), (25, (2, 2)), (6, (-2, -1))])
def test_element_indices_5x5(geom5, n, expected):
    assert element_indices(n, geom5) == expected


def test_element_indices_bijection():
    g = RisGeometry.half_wavelength(7, 5)
    pairs = {element_indices(n, g) for n in range(1, g.n + 1)}
    grid = {(h, v) for h in range(-3, 4) for v in range(-2, 3)}
    assert pairs == grid
    # vectorized index maps agree with the scalar formula
    assert list(zip(g.h_indices, g.v_indices)) == [element_indices(n, g) for n in range(1, g.n + 1)]
    for bad in (0, g.n + 1):
        with pytest.raises(IndexError):
            element_indices(bad, g)


def test_distance_examples():
    g = RisGeometry(5, 5, 0.15, 0.15, 0.3)
    ue = UeTruth(0.0, 0.0, 10.0, 1.0, 1.0)
    # Cartesian oracle: user on the boresight, element 0.3 m off-centre
    assert exact_distance(ue, 2, 0, g) == pytest.approx(np.sqrt(100 + 0.09), abs=1e-12)
    assert exact_distance(ue, 2, 0, g) == pytest.approx(10.0045, abs=1e-4)
    assert fresnel_distance(ue, 2, 0, g) == pytest.approx(10 + 0.09 / 20, abs=1e-12)
    # at broadside the first dropped term is h^4 / (8 r^3) = 1.0125e-6 m
    diff = fresnel_distance(ue, 2, 0, g) - exact_distance(ue, 2, 0, g)
    assert diff == pytest.approx(0.3**4 / (8 * 10**3), rel=1e-3)
    ue2 = UeTruth(0.4, -0.7, 3.0, 1.0, 1.0)
    assert exact_distance(ue2, 0, 0, g) == pytest.approx(3.0)
    assert fresnel_distance(ue2, 0, 0, g) == pytest.approx(3.0)


@settings(max_examples=60, deadline=None)
@given(angles, angles, st.floats(0.5, 50), st.integers(-3, 3), st.integers(-3, 3))
def test_exact_distance_sign_symmetry(az, el, r, h, v):
    g = RisGeometry.half_wavelength(7, 7)
    a = exact_distance(UeTruth(az, el, r, 1.0, 1.0), h, v, g)
    b = exact_distance(UeTruth(-az, -el, r, 1.0, 1.0), -h, -v, g)
    assert a == pytest.approx(b, rel=1e-12)
    assert a > 0


@settings(max_examples=100, deadline=None)
@given(angles, angles, st.integers(-3, 3), st.integers(-3, 3), st.floats(10, 100))
def test_fresnel_error_is_dropped_projection_term(az, el, h, v, scale):
    # exact = r - s + (rho^2 - s^2) / (2r) + O(rho^3 / r^2) with s the projected offset;
    # the Fresnel form keeps rho^2 / (2r), so the gap is s^2 / (2r) up to third order
    g = RisGeometry.half_wavelength(7, 7)
    rho = max(np.hypot(h * g.d_h, v * g.d_v), g.d_h)
    r = scale * rho
    ue = UeTruth(az, el, r, 1.0, 1.0)
    s = h * g.d_h * np.sin(az) * np.cos(el) + v * g.d_v * np.sin(el)
    gap = fresnel_distance(ue, h, v, g) - exact_distance(ue, h, v, g)
    assert abs(gap - s * s / (2 * r)) <= rho**3 / r**2


def test_fresnel_far_field_limit():
    g = RisGeometry.half_wavelength(5, 5)
    errs = [abs(fresnel_distance(UeTruth(0.3, 0.2, r, 1, 1), 2, 2, g)
                - exact_distance(UeTruth(0.3, 0.2, r, 1, 1), 2, 2, g)) for r in (1, 10, 100, 1000)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_fresnel_response_phase_matches_expansion():
    # 3x3 array with hand-picked parameters: phase = nH a + nV b - (nH^2 dH^2 + nV^2 dV^2) g
    g = RisGeometry(3, 3, 0.12, 0.17, 0.3)
    az, el, r = 0.4, -0.25, 1.7
    alpha = 2 * np.pi / 0.3 * 0.12 * np.sin(az) * np.cos(el)
    beta = 2 * np.pi / 0.3 * 0.17 * np.sin(el)
    gamma = np.pi / (0.3 * r)
    expected = []
    for nv in (-1, 0, 1):
        for nh in (-1, 0, 1):
            expected.append(np.exp(1j * (nh * alpha + nv * beta
                                         - (nh**2 * 0.12**2 + nv**2 * 0.17**2) * gamma)))
    got = array_response(UeTruth(az, el, r, 1, 1), g, "fresnel")
    np.testing.assert_allclose(got, expected, atol=1e-12)
    # same thing as exp(j 2pi/lambda (r - fresnel distance))
    fd = fresnel_distance(UeTruth(az, el, r, 1, 1), g.h_indices, g.v_indices, g)
    np.testing.assert_allclose(got, np.exp(2j * np.pi / 0.3 * (r - fd)), atol=1e-12)


def test_spatial_frequencies_values():
    g = RisGeometry(5, 5, 0.15, 0.1, 0.3)
    f = spatial_frequencies(0.3, 0.2, 4.0, g)
    assert f.alpha == pytest.approx(2 * np.pi / 0.3 * 0.15 * np.sin(0.3) * np.cos(0.2))
    assert f.beta == pytest.approx(2 * np.pi / 0.3 * 0.1 * np.sin(0.2))
    assert f.gamma == pytest.approx(np.pi / 1.2)


@pytest.mark.parametrize("model", ["exact", "fresnel"])
def test_array_response_unit_modulus_and_centre(model):
    g = RisGeometry.half_wavelength(5, 7)
    a = array_response(UeTruth(0.5, -0.3, 2.0, 1, 1), g, model)
    assert a.shape == (35,)
    assert np.max(np.abs(np.abs(a) - 1)) < 1e-12
    centre = int(np.flatnonzero((g.h_indices == 0) & (g.v_indices == 0))[0])
    assert a[centre] == pytest.approx(1 + 0j, abs=1e-15)


def test_array_response_exact_phase():
    g = RisGeometry.half_wavelength(3, 3)
    ue = UeTruth(-0.6, 0.35, 1.2, 1, 1)
    d = exact_distance(ue, g.h_indices, g.v_indices, g)
    np.testing.assert_allclose(array_response(ue, g), np.exp(2j * np.pi / g.wavelength * (1.2 - d)),
                               atol=1e-12)


def test_array_response_matrix():
    g = RisGeometry.half_wavelength(3, 3)
    u1, u2 = UeTruth(0.2, 0.1, 2.0, 1, 1), UeTruth(-0.4, 0.3, 1.0, 1, 1)
    a = array_response_matrix([u1, u2], g, "fresnel")
    assert a.shape == (9, 2)
    np.testing.assert_allclose(a[:, 1], array_response(u2, g, "fresnel"))
    np.testing.assert_allclose(array_response_matrix([u1], g)[:, 0], array_response(u1, g))
    assert np.linalg.matrix_rank(array_response_matrix([u1, u1], g)) == 1
    with pytest.raises(ValueError):
        array_response_matrix([], g)


def test_near_field_steering_broadcast_and_bad_model():
    g = RisGeometry.half_wavelength(3, 5)
    s = near_field_steering(np.zeros((2, 3)), 0.1, np.ones((2, 3)), g)
    assert s.shape == (15, 2, 3)
    with pytest.raises(ValueError):
        near_field_steering(0.0, 0.0, 1.0, g, "planar")


def test_angle_steering_examples():
    np.testing.assert_allclose(angle_steering(0.0, 0.0, 3, 2), np.ones(6))
    np.testing.assert_allclose(angle_steering(np.pi / 4, 0.0, 2, 1), [1, 1j], atol=1e-15)
    b = angle_steering(0.3, -0.7, 3, 3)
    assert b[0] == 1
    # entry (p, q) at q * D_H + p
    assert b[2 * 3 + 1] == pytest.approx(np.exp(2j * (1 * 0.3 + 2 * -0.7)))
    with pytest.raises(ValueError):
        angle_steering(0.1, 0.1, 0, 2)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_angle_steering_conjugate_symmetry(a, b):
    np.testing.assert_allclose(angle_steering(a, b, 4, 3).conj(), angle_steering(-a, -b, 4, 3),
                               atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(angles, angles)
def test_direction_cosines_roundtrip(az, el):
    u, v = direction_cosines(az, el)
    back = angles_from_cosines(u, v)
    assert back[0] == pytest.approx(az, abs=1e-9) and back[1] == pytest.approx(el, abs=1e-9)


def test_unit_phasor():
    x = np.linspace(-20, 20, 99).reshape(3, 33)
    np.testing.assert_allclose(unit_phasor(x), np.exp(1j * x), atol=1e-15)
