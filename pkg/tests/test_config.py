"""Configuration parsing, validation messages and round-tripping."""

from __future__ import annotations

import json

import pytest

from lisa_pointing.config import ConfigError, RunConfig, parse_config


class TestDefaults:
    def test_no_sources_gives_defaults(self):
        cfg = parse_config()
        assert cfg == RunConfig()
        assert cfg.n_realizations == 1000
        assert cfg.iterations == 5000
        assert cfg.rho == 0.93
        assert cfg.b == 4.5
        assert cfg.threshold_murad == 1.0

    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{}")
        assert parse_config(path) == RunConfig()

    def test_resolved_weight_and_b0(self):
        cfg = parse_config()
        assert cfg.game_config().weight == pytest.approx(1.0 / 81.0)
        assert cfg.use_b0_rule
        assert not parse_config(overrides={"b0": 0.25}).use_b0_rule


class TestValidation:
    def test_rho_out_of_range(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"rho": 1.2}))
        with pytest.raises(ConfigError, match=r"rho must lie in \[0,1\)"):
            parse_config(path)

    def test_unknown_key_named(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"momentum": 0.9}))
        with pytest.raises(ConfigError, match="unknown config key: momentum"):
            parse_config(path)

    def test_missing_file(self):
        with pytest.raises(ConfigError, match="not found"):
            parse_config("/nonexistent/cfg.json")

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="not valid JSON"):
            parse_config(path)

    @pytest.mark.parametrize(
        "key,value,fragment",
        [
            ("gamma_eta", 0, "gamma_eta must be positive"),
            ("beta", 1.0, "beta must lie in"),
            ("n_realizations", 0, "n_realizations"),
            ("iterations", 0, "iterations"),
            ("worker_count", 0, "worker_count"),
            ("threshold_murad", 0, "threshold_murad"),
            ("tau_c", 0.5, "tau_g/tau_c"),
            ("variant", "fast", "variant"),
            ("iterations", 2.5, "iterations must be an integer"),
            ("ideal_tracking", "sometimes", "ideal_tracking must be a boolean"),
        ],
    )
    def test_field_specific_messages(self, tmp_path, key, value, fragment):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({key: value}))
        with pytest.raises(ConfigError, match=fragment):
            parse_config(path)


class TestPrecedence:
    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"iterations": 5000, "base_seed": 1}))
        cfg = parse_config(path, overrides={"iterations": 100})
        assert cfg.iterations == 100
        assert cfg.base_seed == 1

    def test_none_overrides_are_ignored(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"iterations": 123}))
        cfg = parse_config(path, overrides={"iterations": None, "base_seed": None})
        assert cfg.iterations == 123
        assert cfg.base_seed == RunConfig().base_seed


class TestRoundTrip:
    def test_echo_reparses_identically(self, tmp_path):
        original = parse_config(
            overrides={"iterations": 321, "rho": 0.5, "variant": "baseline"}
        )
        echo = tmp_path / "echo.json"
        echo.write_text(json.dumps(original.to_dict()))
        assert parse_config(echo) == original

    def test_defaults_round_trip_through_json(self, tmp_path):
        cfg = RunConfig()
        echo = tmp_path / "echo.json"
        echo.write_text(json.dumps(cfg.to_dict()))
        assert parse_config(echo) == cfg
