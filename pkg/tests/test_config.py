import json

import numpy as np
import pytest

from risloc.harness.config import (ConfigError, config_json_schema, load_scenario,
                                   scenario_from_dict, scenario_to_dict)
from risloc.harness.presets import PRESETS, load_preset, preset_config
from risloc.simulator import RankConditionError, path_loss


def minimal(**kw):
    cfg = {"geom": {"n_h": 7, "n_v": 7},
           "ues": [{"azimuth_deg": 30, "elevation_deg": -30, "range": 1.5, "tx_power_dbm": 10}],
           "m_bs": 16, "noise_power_dbm": -154, "smoothing": 6}
    cfg.update(kw)
    return cfg


def test_suffix_conversion_and_defaults():
    scn = scenario_from_dict(minimal())
    u = scn.ues[0]
    assert u.azimuth == pytest.approx(np.pi / 6) and u.elevation == pytest.approx(-np.pi / 6)
    assert u.tx_power == pytest.approx(0.01)
    assert u.path_loss == pytest.approx(path_loss(1.5, 0.3))
    assert scn.noise_power == pytest.approx(10 ** (-18.4))
    assert scn.geom.d_h == pytest.approx(0.15) and scn.smoothing == (6, 6)
    assert scn.l_subslots == 4 and scn.t_samples == 300 and scn.sim_model == "exact"
    assert scn.grids.azimuth.num == 359
    assert scn.grids.distance.stop == pytest.approx(scn.geom.fraunhofer_distance)


def test_radians_and_watts_accepted():
    cfg = minimal(ues=[{"azimuth_rad": 0.5, "elevation_rad": 0.1, "range": 2.0, "tx_power": 0.02,
                        "path_loss": 1e-3}], noise_power=1e-12)
    cfg.pop("noise_power_dbm")
    scn = scenario_from_dict(cfg)
    assert scn.ues[0].azimuth == 0.5 and scn.ues[0].q == pytest.approx(2e-5)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_roundtrip_presets(name):
    scn = load_preset(name)
    back = scenario_from_dict(json.loads(json.dumps(scenario_to_dict(scn))))
    assert back == scn


@pytest.mark.parametrize("bad, match", [
    ({"ues": []}, "ues"),
    ({"unknown_key": 1}, "unknown_key"),
    ({"m_bs": 0}, "m_bs"),
    ({"noise_power": 1.0}, "noise_power"),
    ({"smoothing": 7}, "J"),
    ({"geom": {"n_h": 6, "n_v": 7}}, "odd"),
    ({"sim_model": "planar"}, "sim_model"),
    ({"grids": {"azimuth": {"step_deg": 1, "num": 5}}}, "either"),
])
def test_invalid_configs(bad, match):
    with pytest.raises(ConfigError, match=match):
        scenario_from_dict(minimal(**bad))


def test_rank_error_is_config_error():
    with pytest.raises(ConfigError):
        scenario_from_dict(minimal(smoothing=[2, 1], ues=[
            {"azimuth_deg": a, "elevation_deg": 0, "range": 2, "tx_power": 1} for a in (10, 20)]))
    assert issubclass(RankConditionError, ValueError)


def test_load_scenario_file_errors(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_scenario(tmp_path / "nope.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_scenario(p)
    p.write_text(json.dumps(minimal()))
    assert load_scenario(p).k == 1


def test_presets_and_overrides():
    fig4 = load_preset("fig4")
    assert (fig4.geom.n_h, fig4.m_bs, fig4.smoothing, fig4.k) == (7, 16, (6, 6), 2)
    assert fig4.t_samples == 300 and fig4.rician_factor == 2
    assert load_preset("fig4", noise_power=0.0).noise_power == 0.0
    assert load_preset("fig4", t_samples=10).t_samples == 10
    fig5 = load_preset("fig5")
    assert all(u.elevation == 0 for u in fig5.ues) and fig5.geom.n == 625
    assert load_preset("fig6b").smoothing == (32, 32)
    with pytest.raises(ConfigError):
        preset_config("fig9")


def test_schema_export():
    schema = config_json_schema()
    assert "ues" in schema["properties"] and "geom" in schema["required"]
