# Standard
import os

# Third Party
import pytest

# Local
from dcode.colony.config import ColonyConfig
from dcode.config import CliConfig, ConfigError, ScenarioConfig, load_cli_config, read_json, validate_config
from dcode.simulation.allocation import DE_ADAPTIVE, STATIC


class TestCliConfig:
    def test_defaults_without_a_file(self):
        cfg = load_cli_config(None)
        assert cfg.colony == ColonyConfig()
        assert cfg.de_controller.enabled
        assert cfg.experiment is None

    def test_error_names_the_path(self):
        with pytest.raises(ConfigError) as exc:
            validate_config(CliConfig, {"colony": {"m": 0}}, "cfg.json")
        assert exc.value.path == "colony.m"
        assert str(exc.value).startswith("cfg.json: colony.m:")

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError, match="colony.gamma"):
            validate_config(CliConfig, {"colony": {"gamma": 1}}, "cfg.json")
        with pytest.raises(ConfigError, match="solver"):
            validate_config(CliConfig, {"solver": {}}, "cfg.json")

    def test_invalid_json(self, tmp_path):
        path = os.path.join(tmp_path, "cfg.json")
        with open(path, "w", encoding="utf-8") as f:
            f.write('{"colony": {"m": 5,}}')
        with pytest.raises(ConfigError, match="invalid JSON at line 1"):
            read_json(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_cli_config(os.path.join(tmp_path, "none.json"))


class TestScenarioConfig:
    def test_policies(self):
        cfg = ScenarioConfig(horizon=90, review_period=3)
        static = cfg.policy(STATIC)
        adaptive = cfg.policy(DE_ADAPTIVE)
        assert static.schedule is None
        assert adaptive.review_period == 3
        assert adaptive.schedule.k == pytest.approx(10 / 90)
        assert adaptive.schedule.t0 == pytest.approx(30.0)

    def test_schedule_override(self):
        adaptive = ScenarioConfig(k=0.5, t0=4).policy(DE_ADAPTIVE)
        assert (adaptive.schedule.k, adaptive.schedule.t0) == (0.5, 4)
