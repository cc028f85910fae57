# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Configuration tests."""

import json

import pytest

from med_magma.config import (
    BenchConfig,
    FitConfig,
    SolverConfig,
    SweepConfig,
    load_config,
)
from med_magma.errors import InputError


def test_defaults():
    """Documented default settings."""
    cfg = FitConfig()
    assert cfg.em_tol == 1e-4
    assert cfg.em_max_iters == 50
    assert cfg.correction_enabled
    assert cfg.solver == SolverConfig(tol=1e-6, max_iters=2000, eig_floor=1e-8)
    sweep = SweepConfig()
    assert sweep.k_values == tuple(range(1, 41))
    assert len(sweep.resolutions) == 12
    assert sweep.resolutions[0] == pytest.approx(0.02)
    assert sweep.resolutions[-1] == pytest.approx(2.0)


def test_nested_from_dict():
    """Nested sections become nested configs."""
    cfg = FitConfig.from_dict({"em_tol": 1e-3, "solver": {"tol": 1e-8}})
    assert cfg.em_tol == 1e-3
    assert cfg.solver.tol == 1e-8
    assert cfg.to_dict()["solver"]["max_iters"] == 2000


def test_unknown_keys_are_rejected():
    """Typos in config files are errors."""
    with pytest.raises(InputError, match="em_tolerance"):
        FitConfig.from_dict({"em_tolerance": 1e-3})


def test_invalid_values_are_rejected():
    """Out-of-range values fail validation."""
    with pytest.raises(InputError):
        SolverConfig(tol=0)
    with pytest.raises(InputError):
        BenchConfig(jobs=0)
    with pytest.raises(InputError):
        SweepConfig(k_values=(0, 1))


def test_load_config(tmp_path):
    """Files are read as JSON; no path gives the defaults."""
    assert load_config(None, BenchConfig) == BenchConfig()
    path = tmp_path / "bench.json"
    path.write_text(json.dumps({"replicates": 3, "alphas": [0.25]}))
    cfg = load_config(path, BenchConfig)
    assert cfg.replicates == 3
    assert cfg.alphas == (0.25,)
    assert cfg.synth_config(0.25).alpha == 0.25
    path.write_text("{not json")
    with pytest.raises(InputError):
        load_config(path, BenchConfig)
