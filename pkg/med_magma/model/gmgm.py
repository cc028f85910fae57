# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Unregularized Kronecker-sum Gaussian MLE on sufficient statistics.

The likelihood only sees the data through the row and column Gram matrices.
Its minimizer shares eigenvectors with them, so the solver works on the
``d_rows + d_cols`` eigenvalues of the factors in the statistics' eigenbasis.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..config import SolverConfig
from ..errors import ConvergenceError, DimensionError, InputError
from .kroncore import (
    PAIR_SUM_FLOOR,
    EigenFactor,
    kron_sum_logdet,
    partial_trace_inverse,
    symmetrize,
)

logger = logging.getLogger(__name__)

ARMIJO = 1e-4
MAX_BACKTRACKS = 60


@dataclass(frozen=True, eq=False)
class SufficientStats:
    """Row and column Gram statistics."""

    s_rows: np.ndarray
    s_cols: np.ndarray

    def __post_init__(self):
        """Symmetrize and freeze."""
        for name in ("s_rows", "s_cols"):
            value = symmetrize(getattr(self, name))
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def shape(self):
        """Shape ``(d_rows, d_cols)`` of the underlying matrix."""
        return self.s_rows.shape[0], self.s_cols.shape[0]

    @property
    def scale(self):
        """Largest absolute entry of either statistic."""
        return float(max(np.max(np.abs(self.s_rows)), np.max(np.abs(self.s_cols))))

    @property
    def trace_gap(self):
        """``tr(s_rows) - tr(s_cols)``."""
        return float(np.trace(self.s_rows) - np.trace(self.s_cols))


def gram_stats(matrix):
    """Uncorrected Gram statistics ``(X X^T, X^T X)``."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {matrix.shape}")
    return SufficientStats(matrix @ matrix.T, matrix.T @ matrix)


def _check_conforming(fp, stats):
    if fp.shape != stats.shape:
        raise DimensionError(
            f"precision of shape {fp.shape} does not conform to stats {stats.shape}"
        )


def nll(fp, stats):
    """Negative log-likelihood up to additive constants."""
    _check_conforming(fp, stats)
    fit = np.sum(fp.psi_rows * stats.s_rows) + np.sum(fp.psi_cols * stats.s_cols)
    return float(0.5 * fit - 0.5 * kron_sum_logdet(fp.eigen))


def grad_nll(fp, stats):
    """Gradients of :func:`nll` with respect to both factors."""
    _check_conforming(fp, stats)
    ef = fp.eigen
    return (
        0.5 * (stats.s_rows - partial_trace_inverse(ef, "rows")),
        0.5 * (stats.s_cols - partial_trace_inverse(ef, "cols")),
    )


def floor_spectrum(values, rel_floor):
    """Raise eigenvalues below ``rel_floor * max(values)`` to that floor."""
    largest = np.max(values)
    if not largest > 0:
        raise InputError("statistics have no positive eigenvalue")
    floor = rel_floor * largest
    return np.maximum(values, floor), int(np.sum(values < floor))


class _SpectralProblem:
    """Objective in the eigenvalues ``lam`` (rows) and ``mu`` (cols)."""

    def __init__(self, s, t):
        self.s = s
        self.t = t
        self.d_rows = s.size

    def split(self, x):
        return x[: self.d_rows], x[self.d_rows :]

    def sums(self, x):
        lam, mu = self.split(x)
        return lam[:, None] + mu[None, :]

    def feasible(self, x):
        sums = self.sums(x)
        return np.min(sums) > PAIR_SUM_FLOOR * np.max(np.abs(sums))

    def value(self, x):
        lam, mu = self.split(x)
        return 0.5 * (lam @ self.s + mu @ self.t) - 0.5 * np.sum(np.log(self.sums(x)))

    def gradient(self, x):
        inverse = 1.0 / self.sums(x)
        return 0.5 * np.concatenate(
            (self.s - inverse.sum(axis=1), self.t - inverse.sum(axis=0))
        )

    def hessian(self, x):
        weights = 1.0 / self.sums(x) ** 2
        return 0.5 * np.block(
            [
                [np.diag(weights.sum(axis=1)), weights],
                [weights.T, np.diag(weights.sum(axis=0))],
            ]
        )

    def newton_direction(self, x, gradient):
        """Newton step, regularized along the unidentifiable shift."""
        hessian = self.hessian(x)
        shift = np.concatenate((np.ones(self.d_rows), -np.ones(self.t.size)))
        shift /= np.linalg.norm(shift)
        hessian += np.mean(np.diag(hessian)) * np.outer(shift, shift)
        try:
            direction = scipy.linalg.solve(hessian, -gradient, assume_a="pos")
        except (np.linalg.LinAlgError, ValueError):
            direction = -gradient
        if not direction @ gradient < 0:
            direction = -gradient
        return direction


def _balanced_spectra(stats, eig_floor):
    """Floored eigen-pairs of both statistics with equalized traces."""
    s, vectors_rows = scipy.linalg.eigh(stats.s_rows)
    t, vectors_cols = scipy.linalg.eigh(stats.s_cols)
    s, floored_rows = floor_spectrum(s, eig_floor)
    t, floored_cols = floor_spectrum(t, eig_floor)
    if floored_rows or floored_cols:
        logger.debug(
            "eigenvalue floor active on %d row and %d col directions",
            floored_rows,
            floored_cols,
        )
    # only the common trace is identifiable; move the mismatch onto identities
    gap = s.sum() - t.sum()
    if abs(gap) > 1e-6 * max(s.sum(), t.sum()):
        logger.warning("statistics traces differ by %.3e", gap)
    s = s - gap / (2 * s.size)
    t = t + gap / (2 * t.size)
    if np.min(s) <= 0 or np.min(t) <= 0:
        raise InputError("statistics traces are inconsistent")
    return s, vectors_rows, t, vectors_cols


def gmgm_fit(stats, cfg=None):
    """Fit the factor precisions maximizing the Kronecker-sum likelihood."""
    cfg = cfg or SolverConfig()
    scale = stats.scale
    if not scale > 0:
        raise InputError("statistics are identically zero")
    s, vectors_rows, t, vectors_cols = _balanced_spectra(stats, cfg.eig_floor)
    problem = _SpectralProblem(s, t)

    d_rows, d_cols = s.size, t.size
    start = d_rows * d_cols / (2 * s.sum())
    x = np.full(d_rows + d_cols, start)
    value = problem.value(x)
    gradient = problem.gradient(x)
    gradient_norm = np.max(np.abs(gradient))

    for iteration in range(cfg.max_iters):
        if gradient_norm < cfg.tol * scale:
            break
        direction = problem.newton_direction(x, gradient)
        slope = direction @ gradient
        step = 1.0
        for _ in range(MAX_BACKTRACKS):
            candidate = x + step * direction
            if problem.feasible(candidate):
                candidate_value = problem.value(candidate)
                if candidate_value <= value + ARMIJO * step * slope:
                    break
            step /= 2
        else:
            # roundoff floor: take the full step if it still shrinks the gradient
            candidate = x + direction
            if not problem.feasible(candidate):
                raise ConvergenceError(
                    "line search failed to find a feasible step",
                    last_iterate=_factors(vectors_rows, vectors_cols, problem, x),
                    gradient_norm=float(gradient_norm),
                )
            candidate_value = problem.value(candidate)
            candidate_gradient = problem.gradient(candidate)
            if np.max(np.abs(candidate_gradient)) >= gradient_norm:
                raise ConvergenceError(
                    "line search stalled",
                    last_iterate=_factors(vectors_rows, vectors_cols, problem, x),
                    gradient_norm=float(gradient_norm),
                )
            logger.debug("accepting full step below roundoff at %d", iteration)
        x, value = candidate, candidate_value
        gradient = problem.gradient(x)
        gradient_norm = np.max(np.abs(gradient))
    else:
        if not gradient_norm < cfg.tol * scale:
            raise ConvergenceError(
                f"no convergence after {cfg.max_iters} iterations",
                last_iterate=_factors(vectors_rows, vectors_cols, problem, x),
                gradient_norm=float(gradient_norm),
            )

    logger.debug(
        "gmgm converged after %d iterations (gradient %.3e)", iteration, gradient_norm
    )
    return _factors(vectors_rows, vectors_cols, problem, x)


def _factors(vectors_rows, vectors_cols, problem, x):
    lam, mu = problem.split(x)
    ef = EigenFactor(vectors_rows, lam, vectors_cols, mu)
    return ef.to_factors().trace_normalized()
