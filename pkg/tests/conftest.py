# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Pytest configuration."""

import numpy as np
import pytest

from med_magma.config import SynthConfig
from med_magma.model import FactorPrecision
from med_magma.synth import generate_experiment


def _random_spd(rng, size):
    base = rng.standard_normal((size, size))
    return base @ base.T / size + np.eye(size)


@pytest.fixture()
def rng():
    """Seeded random generator."""
    return np.random.default_rng(20261019)


@pytest.fixture()
def make_precision(rng):
    """Factory of random positive definite factor pairs."""

    def _make(d_rows, d_cols):
        return FactorPrecision(_random_spd(rng, d_rows), _random_spd(rng, d_cols))

    return _make


@pytest.fixture()
def positive_matrix(rng):
    """Strictly positive 5 x 4 matrix."""
    return rng.uniform(0.5, 3.0, size=(5, 4))


@pytest.fixture(scope="module")
def small_bundle():
    """One small synthetic replicate with moderate noise."""
    cfg = SynthConfig(d_rows=8, d_cols=10, m=2, alpha=0.5, replicates=1, seed=3)
    return generate_experiment(cfg)[0]


@pytest.fixture()
def dense_csv(tmp_path):
    """Dense CSV with names and a label column."""
    path = tmp_path / "counts.csv"
    path.write_text(
        ",g1,g2,g3,label\n"
        "c1,1.0,2.0,0.5,a\n"
        "c2,3.0,4.0,1.5,b\n"
        "c3,2.0,1.0,2.5,a\n",
        encoding="utf-8",
    )
    return path
