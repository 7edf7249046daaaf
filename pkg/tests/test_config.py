import json

import pytest

from amphisim.config import (
    AppConfig,
    config_from_dict,
    config_to_dict,
    load_config,
    save_config,
)
from amphisim.errors import DomainError


def test_default_round_trip():
    cfg = AppConfig()
    assert config_from_dict(config_to_dict(cfg)) == cfg


def test_file_round_trip(tmp_path):
    cfg = AppConfig(mass_kg=0.400, command_latency_s=5.0)
    path = tmp_path / "config.json"
    save_config(cfg, path)
    assert load_config(path) == cfg


def test_load_config_none_gives_defaults():
    assert load_config(None) == AppConfig()


def test_partial_dict_keeps_defaults():
    cfg = config_from_dict({"drag": {"cd_descend": 99.0}})
    assert cfg.drag.cd_descend == 99.0
    assert cfg.drag.cd_ascend == AppConfig().drag.cd_ascend
    assert cfg.mass_kg == 0.330


def test_malformed_config_raises():
    with pytest.raises(DomainError):
        config_from_dict({"drag": {"cd_descend": "fast"}})
    with pytest.raises(DomainError):
        config_from_dict({"geometry": {"bell_crank_variant": "mystery"}})


def test_sim_params_reflects_environment(tmp_path):
    cfg = AppConfig()
    params = cfg.sim_params()
    assert params.floor_depth_cm == -cfg.environment.water_depth_cm
    assert params.command_latency_s == cfg.command_latency_s
    assert params.body.mass_kg == cfg.mass_kg


def test_config_json_sections(tmp_path):
    path = tmp_path / "config.json"
    save_config(AppConfig(), path)
    data = json.loads(path.read_text())
    for section in ("geometry", "volume_model", "drag", "gait", "power", "battery", "environment"):
        assert section in data
