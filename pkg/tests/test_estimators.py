import numpy as np
import pytest

from risloc.estimators import (alias_candidates, distance_estimate, modified_music,
                               music_2d_known_elevation, music_3d)
from risloc.estimators.music import alias_periods
from risloc.geometry import RisGeometry, direction_cosines
from risloc.grids import GridSpec, SearchGrids
from risloc.harness.presets import load_preset
from risloc.harness.sweep import trial_rng
from risloc.simulator import generate_snapshots
from risloc.subspace import eig_split, ls_recover, sample_covariance

from conftest import analytic_covariance, make_ue, small_scenario


def est_set(res, nd=6):
    return sorted((round(e.azimuth, nd), round(e.elevation, nd), round(e.range, nd)) for e in res.estimates)


def grids_for(ues, g, r_num=161, r_stop=4.5):
    ang = GridSpec.angle_deg(1.0)
    return SearchGrids(ang, ang, GridSpec(0.5, r_stop, r_num))   # 0.025 m distance steps


def test_modified_music_single_user_noiseless():
    ue = make_ue(20, -30, 1.5)
    scn = small_scenario([ue], grids=grids_for([ue], None))
    res = modified_music(analytic_covariance([ue], scn.geom), scn)
    (e,) = res.estimates
    assert (e.azimuth, e.elevation, e.range) == pytest.approx((ue.azimuth, ue.elevation, 1.5), abs=1e-12)
    assert not res.degenerate
    assert res.spectrum.kind == "angle2d" and len(res.distance_spectra) == 1


def test_modified_music_two_users_and_invariances():
    ues = [make_ue(30, -30, 1.5), make_ue(-30, 30, 2.0)]
    scn = small_scenario(ues, grids=grids_for(ues, None))
    r = analytic_covariance(ues, scn.geom, noise=1e-6)
    res = modified_music(r, scn)
    assert est_set(res) == est_set(modified_music(7.5 * r, scn))
    swapped = scn.replace(ues=tuple(reversed(ues)))
    assert est_set(res) == est_set(modified_music(r, swapped))
    got = est_set(res, 9)
    want = sorted((round(u.azimuth, 9), round(u.elevation, 9), round(u.range, 9)) for u in ues)
    assert got == want


def test_grid_evaluation_counts():
    ues = [make_ue(30, -30, 1.5), make_ue(-30, 30, 2.0)]
    scn = small_scenario(ues)
    scn = scn.replace(grids=scn.grids.with_resolution(20))
    r = analytic_covariance(ues, scn.geom, noise=1e-6)
    assert modified_music(r, scn, resolve_aliases=False).grid_evals == 20 * 20 + 2 * 20
    assert music_3d(r, 2, scn.grids, scn.geom).grid_evals == 20**3


def test_music3d_single_user_noiseless():
    ue = make_ue(-20, 10, 1.25)
    g = RisGeometry.half_wavelength(5, 5)
    grids = SearchGrids(GridSpec.angle_deg(2.0), GridSpec.angle_deg(2.0), GridSpec(0.5, 3.0, 101))
    res = music_3d(analytic_covariance([ue], g), 1, grids, g)
    (e,) = res.estimates
    assert (e.azimuth, e.elevation, e.range) == pytest.approx((ue.azimuth, ue.elevation, 1.25), abs=1e-12)
    assert res.spectrum.kind == "music3d"


def test_music2d_known_elevation():
    ues = [make_ue(-20, 0, 1.25), make_ue(25, 0, 2.0), make_ue(10, 15, 1.5)]
    g = RisGeometry.half_wavelength(7, 7)
    grids = SearchGrids(GridSpec.angle_deg(1.0), GridSpec.angle_deg(1.0), GridSpec(0.5, 3.0, 101))
    r = analytic_covariance(ues, g, noise=1e-6)
    res = music_2d_known_elevation(r, 3, [u.elevation for u in ues], grids, g)
    got = sorted((round(e.azimuth, 9), round(e.elevation, 9), round(e.range, 9)) for e in res.estimates)
    want = sorted((round(u.azimuth, 9), round(u.elevation, 9), round(u.range, 9)) for u in ues)
    assert got == want
    assert len(res.distance_spectra) == 2 and res.grid_evals == 2 * 179 * 101
    with pytest.raises(ValueError):
        music_2d_known_elevation(r, 3, [0.0], grids, g)


def test_distance_estimate_scaling_invariance():
    ue = make_ue(15, 25, 1.8)
    g = RisGeometry.half_wavelength(7, 7)
    r_grid = np.linspace(0.5, 4.0, 141)
    r = analytic_covariance([ue], g)
    a, _ = distance_estimate(ue.azimuth, ue.elevation, eig_split(r, 1), r_grid, g)
    b, _ = distance_estimate(ue.azimuth, ue.elevation, eig_split(0.01 * r, 1), r_grid, g)
    assert a == b == pytest.approx(1.8)


def test_alias_candidates_half_wavelength():
    g = RisGeometry.half_wavelength(25, 25)
    pu, pv = alias_periods(g)
    assert (pu, pv) == pytest.approx((1.0, 1.0))
    c = alias_candidates(np.pi / 6, 0.0, g)
    assert c[0] == (np.pi / 6, 0.0)
    assert any(abs(az + np.pi / 6) < 1e-12 and abs(el) < 1e-12 for az, el in c[1:])
    u0, v0 = direction_cosines(np.pi / 6, 0.0)
    for az, el in c[1:]:
        u, v = direction_cosines(az, el)
        assert abs((u - u0) - round(u - u0)) < 1e-12 and abs((v - v0) - round(v - v0)) < 1e-12
    # every alias of broadside sits on the unit circle, outside the visible region
    assert alias_candidates(0.0, 0.0, g) == [(0.0, 0.0)]


def test_alias_resolution_separates_mirror_users():
    # (+30, 0) and (-30, 0) give identical angle-spectrum values with half-wavelength
    # spacing; only the distance step can tell them apart
    ues = [make_ue(30, 0, 1.5), make_ue(-30, 0, 2.0)]
    scn = small_scenario(ues, grids=grids_for(ues, None))
    r = analytic_covariance(ues, scn.geom, noise=1e-6)
    resolved = est_set(modified_music(r, scn), 9)
    want = sorted((round(u.azimuth, 9), round(u.elevation, 9), round(u.range, 9)) for u in ues)
    assert resolved == want


def test_fig4_high_power_angle_accuracy():
    # >= 95% of 100 trials localize both users within one angle cell
    scn = load_preset("fig4")
    cell = scn.grids.azimuth.step
    hits = 0
    for t in range(100):
        r = sample_covariance(ls_recover(generate_snapshots(scn, trial_rng(scn.rng_seed, 0, t))))
        res = modified_music(r, scn)
        ok = all(min(max(abs(e.azimuth - u.azimuth), abs(e.elevation - u.elevation))
                     for e in res.estimates) < cell for u in scn.ues)
        hits += ok
    assert hits >= 95
