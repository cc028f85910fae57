# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Synthetic Kronecker-sum datasets under multiplicative noise."""

import logging
from dataclasses import dataclass

import numpy as np

from ..config import SynthConfig
from ..errors import InputError
from ..metrics import community_detect
from ..model.kroncore import FactorPrecision, sample_latent
from ..model.latentpoint import NoiseFactors, scale
from .graphs import barabasi_albert, graph_to_precision

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SynthBundle:
    """One replicate of the synthetic protocol."""

    truth_rows: np.ndarray
    truth_cols: np.ndarray
    precision: FactorPrecision
    labels_rows: np.ndarray
    labels_cols: np.ndarray
    latent: np.ndarray
    observed: np.ndarray
    noise: NoiseFactors


def _noise_draws(rng, size, alpha):
    values = rng.chisquare(1, size) ** alpha
    # a zero draw underflows the factor; redraw it
    while not np.all(values > 0):
        bad = ~(values > 0)
        values[bad] = rng.chisquare(1, int(bad.sum())) ** alpha
    return values


def corrupt(latent, alpha, seed=None):
    """Multiply rows and columns by ``chi2(1) ** alpha`` draws."""
    if not 0.0 <= alpha <= 1.0:
        raise InputError(f"alpha must lie in [0, 1], got {alpha!r}")
    latent = np.asarray(latent, dtype=float)
    rng = np.random.default_rng(seed)
    d_rows, d_cols = latent.shape
    noise = NoiseFactors(
        _noise_draws(rng, d_rows, alpha), _noise_draws(rng, d_cols, alpha)
    )
    return scale(latent, noise), noise


def make_truth_labels(adjacency, resolution=1.0, seed=0):
    """Ground-truth categories: communities of the truth graph."""
    return community_detect(adjacency, resolution=resolution, seed=seed)


def _int_seed(seed_sequence):
    return int(seed_sequence.generate_state(1)[0])


def generate_replicate(cfg, seed_sequence):
    """Draw one bundle; every random step gets its own spawned stream."""
    graph_rows, graph_cols, latent_seed, noise_seed, label_seed = seed_sequence.spawn(5)
    truth_rows = barabasi_albert(cfg.d_rows, cfg.m, graph_rows)
    truth_cols = barabasi_albert(cfg.d_cols, cfg.m, graph_cols)
    precision = FactorPrecision(
        graph_to_precision(truth_rows, cfg.pd_margin),
        graph_to_precision(truth_cols, cfg.pd_margin),
    )
    latent = sample_latent(precision.eigen, latent_seed)
    observed, noise = corrupt(latent, cfg.alpha, noise_seed)
    label_seed = _int_seed(label_seed)
    return SynthBundle(
        truth_rows=truth_rows,
        truth_cols=truth_cols,
        precision=precision,
        labels_rows=make_truth_labels(truth_rows, seed=label_seed),
        labels_cols=make_truth_labels(truth_cols, seed=label_seed),
        latent=latent,
        observed=observed,
        noise=noise,
    )


def generate_experiment(cfg=None):
    """Generate ``cfg.replicates`` independent bundles from ``cfg.seed``.

    Streams depend only on the seed and the replicate index, so runs that
    differ only in ``alpha`` share graphs, latent samples and raw draws.
    """
    cfg = cfg or SynthConfig()
    root = np.random.SeedSequence(cfg.seed)
    bundles = []
    for replicate, child in enumerate(root.spawn(cfg.replicates)):
        bundles.append(generate_replicate(cfg, child))
        logger.debug("generated replicate %d", replicate)
    return bundles
