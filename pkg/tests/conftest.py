import numpy as np
import pytest

from risloc.geometry import RisGeometry, UeTruth, array_response_matrix
from risloc.grids import GridSpec, SearchGrids
from risloc.simulator import Scenario


def analytic_covariance(ues, geom, model="fresnel", noise=0.0):
    """R = A Q A^H + noise * I built straight from the array responses."""
    a = array_response_matrix(ues, geom, model)
    q = np.array([u.q for u in ues])
    return (a * q) @ a.conj().T + noise * np.eye(geom.n)


def cell_grids(ues, geom, step_deg=1.0, r_num=200, r_stop=None):
    """Angle grids that contain every true angle exactly."""
    ang = GridSpec.angle_deg(step_deg)
    r_stop = r_stop or max(2.0 * max(u.range for u in ues), 3.0)
    return SearchGrids(ang, ang, GridSpec(0.5, r_stop, r_num))


@pytest.fixture
def geom5():
    return RisGeometry.half_wavelength(5, 5)


@pytest.fixture
def geom7():
    return RisGeometry.half_wavelength(7, 7)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def make_ue(az_deg, el_deg, r, q=1.0):
    return UeTruth(np.deg2rad(az_deg), np.deg2rad(el_deg), r, tx_power=q, path_loss=1.0)


def small_scenario(ues, geom=None, smoothing=(4, 4), noise=0.0, **kw):
    geom = geom or RisGeometry.half_wavelength(7, 7)
    kw.setdefault("grids", cell_grids(ues, geom))
    kw.setdefault("sim_model", "fresnel")
    return Scenario(geom=geom, ues=tuple(ues), m_bs=16, t_samples=kw.pop("t_samples", 200),
                    noise_power=noise, smoothing=smoothing, **kw)
