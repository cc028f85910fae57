# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Benchmark tests."""

import math

import numpy as np
import pytest

from med_magma import bench
from med_magma.config import METHODS, BenchConfig, FitConfig, SweepConfig
from med_magma.errors import BenchmarkError, ConvergenceError, InputError
from med_magma.load import BenchRow


def _config(**kwargs):
    return BenchConfig(
        d_rows=6,
        d_cols=7,
        m=2,
        alphas=(0.0, 1.0),
        replicates=1,
        seed=2,
        fit=FitConfig(em_max_iters=2),
        sweep=SweepConfig(k_values=(1, 2), resolutions=(1.0,)),
        **kwargs,
    )


def test_single_axis_precision(rng):
    """Per-axis inverse Grams."""
    matrix = rng.standard_normal((3, 5))
    fp = bench.single_axis_precision(matrix)
    np.testing.assert_allclose(fp.psi_rows @ (matrix @ matrix.T), np.eye(3), atol=1e-8)
    assert fp.psi_cols.shape == (5, 5)


@pytest.mark.slow
def test_benchmark_table():
    """One scored row per method, alpha and replicate."""
    rows = bench.run_benchmark(_config())
    assert len(rows) == 3 * 2
    assert {row.method for row in rows} == set(METHODS)
    for row in rows:
        if row.status == "ok":
            assert 0.0 <= row.aupr_rows <= 1.0
            assert -1.0 <= row.best_ami <= 1.0
    summary = bench.summarize(rows)
    assert ("med-magma", 0.0) in summary


@pytest.mark.slow
def test_noise_strength_leaves_the_fit_unchanged():
    """Median edge AUPR of the corrected fit is flat across noise strengths."""
    cfg = BenchConfig(
        d_rows=30,
        d_cols=40,
        m=2,
        alphas=(0.0, 0.5, 1.0),
        replicates=10,
        methods=("med-magma",),
        fit=FitConfig(em_max_iters=10),
        sweep=SweepConfig(k_values=(1, 2), resolutions=(1.0,)),
    )
    rows = bench.run_benchmark(cfg)
    assert all(row.status == "ok" for row in rows)
    medians = [scores["aupr_rows"] for scores in bench.summarize(rows).values()]
    assert len(medians) == 3
    assert max(medians) - min(medians) < 0.05


def test_failed_cells_are_recorded(monkeypatch):
    """A failing method yields a NaN row; all failing is an error."""
    original = bench.fit_method

    def failing(method, observed, cfg):
        if method == "gmgm-raw":
            raise ConvergenceError("no luck")
        return original(method, observed, cfg)

    monkeypatch.setattr(bench, "fit_method", failing)
    cfg = _config(methods=("gmgm-raw", "single-axis-baseline"))
    rows = bench.run_benchmark(cfg)
    failed = [row for row in rows if row.method == "gmgm-raw"]
    assert all(row.status.startswith("failed") for row in failed)
    assert all(math.isnan(row.aupr_rows) for row in failed)

    cfg = _config(methods=("gmgm-raw",))
    with pytest.raises(BenchmarkError):
        bench.run_benchmark(cfg)


def test_summarize_takes_medians():
    """Failed cells are left out of the medians."""
    nan = float("nan")
    rows = [
        BenchRow("med-magma", 0.5, 0, 0.2, 0.4, 0.1, 0.5, "ok"),
        BenchRow("med-magma", 0.5, 1, 0.4, 0.6, 0.3, 0.7, "ok"),
        BenchRow("med-magma", 0.5, 2, nan, nan, nan, nan, "failed: x"),
    ]
    summary = bench.summarize(rows)
    assert summary[("med-magma", 0.5)]["aupr_rows"] == pytest.approx(0.3)
    assert summary[("med-magma", 0.5)]["best_ami"] == pytest.approx(0.6)


def test_unknown_methods_are_rejected():
    """Only the three benchmark methods exist."""
    with pytest.raises(InputError):
        _config(methods=("lasso",))
