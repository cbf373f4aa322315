"""Serialization: trace rows, precision, fingerprints, table shape."""

from __future__ import annotations

import json

import numpy as np
import pytest

from lisa_pointing import GameConfig, PlantParams, SeekerParams, run_realization, summarize
from lisa_pointing.config import RunConfig, parse_config
from lisa_pointing.reporting import (
    fingerprint,
    summary_to_dict,
    write_summary_json,
    write_table1_csv,
    write_traces_csv,
)

PARAMS, GAME, PLANT = SeekerParams(), GameConfig(), PlantParams()


class TestTracesCsv:
    def test_single_realization_three_iterations_three_rows(self, tmp_path):
        res = run_realization(1, PARAMS, GAME, PLANT, 3)
        path = write_traces_csv(tmp_path / "traces.csv", [res])
        lines = path.read_text().splitlines()
        assert lines[0] == "realization,iteration,y12,y13,y23,h1,h2,h3"
        assert len(lines) == 4

    def test_rewrite_is_byte_identical(self, tmp_path):
        res = run_realization(2, PARAMS, GAME, PLANT, 50)
        a = write_traces_csv(tmp_path / "a.csv", [res]).read_bytes()
        b = write_traces_csv(tmp_path / "b.csv", [res]).read_bytes()
        assert a == b

    def test_floats_round_trip_losslessly(self, tmp_path):
        res = run_realization(3, PARAMS, GAME, PLANT, 20)
        path = write_traces_csv(tmp_path / "traces.csv", [res])
        rows = [line.split(",") for line in path.read_text().splitlines()[1:]]
        for k, row in enumerate(rows):
            assert int(row[0]) == 0
            assert int(row[1]) == k + 1
            for p in range(3):
                assert float(row[2 + p]) == res.y_traces[k, p]
                assert float(row[5 + p]) == res.h_traces[k, p]


class TestSummaryJson:
    def test_schema_keys_fixed(self, tmp_path):
        res = run_realization(4, PARAMS, GAME, PLANT, 120)
        summary = summarize([res], res.converged_iter)
        doc = summary_to_dict(summary, RunConfig().to_dict())
        assert set(doc) == {
            "schema_version", "fingerprint", "config", "n_realizations",
            "iterations", "threshold_murad", "t_star_iter", "t_star_minutes",
            "t_star_source", "mean_y_at_t_star", "percentiles", "histogram",
            "unconverged_seeds",
        }
        assert set(doc["percentiles"]) == {"p10", "p50", "p90"}
        assert set(doc["percentiles"]["p50"]) == {"y12", "y13", "y23"}
        assert len(doc["histogram"]["edges"]) == len(doc["histogram"]["counts"]["y12"]) + 1

    def test_config_echo_reparses_to_same_config(self, tmp_path):
        cfg = parse_config(overrides={"iterations": 200, "n_realizations": 2})
        res = run_realization(5, PARAMS, GAME, PLANT, 200)
        summary = summarize([res], res.converged_iter)
        path = write_summary_json(tmp_path / "summary.json", summary, cfg.to_dict())
        echo = json.loads(path.read_text())["config"]
        echo_path = tmp_path / "echo.json"
        echo_path.write_text(json.dumps(echo))
        assert parse_config(echo_path) == cfg


class TestFingerprint:
    def test_stable_for_identical_config(self):
        cfg = RunConfig().to_dict()
        assert fingerprint(cfg) == fingerprint(dict(cfg))

    def test_sensitive_to_config_changes(self):
        a = fingerprint(RunConfig().to_dict())
        b = fingerprint(RunConfig(base_seed=8).to_dict())
        assert a != b


class TestTable1Csv:
    def test_shape_and_precision(self, tmp_path):
        res_full = run_realization(6, PARAMS, GAME, PLANT, 200)
        res_base = run_realization(6, SeekerParams(variant="baseline"), GAME, PLANT, 200)
        t_star = res_full.converged_iter
        full = summarize([res_full], t_star)
        base = summarize([res_base], t_star, t_star_source="full")
        path = write_table1_csv(tmp_path / "table1.csv", full, base)
        lines = path.read_text().splitlines()
        assert lines[0] == "pair,full_mean_murad,baseline_mean_murad"
        assert len(lines) == 4
        first = lines[1].split(",")
        assert first[0] == "y12"
        assert float(first[1]) == full.mean_y_at_t_star[0]
        assert float(first[2]) == base.mean_y_at_t_star[0]
