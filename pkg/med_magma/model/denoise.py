# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Removal of the directions corrupted by multiplicative noise.

Per-row and per-column scale factors are additive in log space, so they are
removed by double-centering ``log|X|``. Zeros are skipped: the means are
taken over the nonzero entries only and the zero pattern is kept.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import DimensionError, PreprocessingError

logger = logging.getLogger(__name__)

ZERO_THRESHOLD = 1e-300
CENTERING_TOL = 1e-12
CENTERING_MAX_SWEEPS = 500


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """Observed matrix, possibly with exact zeros."""

    entries: np.ndarray

    def __post_init__(self):
        """Copy, flush denormal entries to zero and freeze."""
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2:
            raise DimensionError(f"expected a matrix, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise DimensionError("matrix contains non-finite entries")
        entries[np.abs(entries) < ZERO_THRESHOLD] = 0.0
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def shape(self):
        """Shape ``(d_rows, d_cols)``."""
        return self.entries.shape

    @cached_property
    def mask(self):
        """Boolean nonzero pattern."""
        return self.entries != 0

    @property
    def nnz_total(self):
        """Number of nonzero entries."""
        return int(self.mask.sum())

    @property
    def nnz_row(self):
        """Nonzero count of every row."""
        return self.mask.sum(axis=1)

    @property
    def nnz_col(self):
        """Nonzero count of every column."""
        return self.mask.sum(axis=0)

    def check_no_empty_lines(self):
        """Raise if a row or a column has no nonzero entry."""
        empty_rows = np.flatnonzero(self.nnz_row == 0)
        empty_cols = np.flatnonzero(self.nnz_col == 0)
        if empty_rows.size or empty_cols.size:
            raise PreprocessingError(
                f"all-zero rows {empty_rows.tolist()} and columns "
                f"{empty_cols.tolist()}; filter them before denoising"
            )


def _masked_means(values, mask, axis):
    return values.sum(axis=axis) / mask.sum(axis=axis)


def log_double_center(logs, mask=None):
    """Double-center a log-magnitude matrix over the entries in ``mask``.

    The dense case is ``(I - 11^T/d_r) L (I - 11^T/d_c)``. With a mask the
    masked row, column and grand means are subtracted first, then masked row
    and column centering alternate until both sets of masked means vanish.
    Entries outside the mask are returned as zero.
    """
    logs = np.asarray(logs, dtype=float)
    if logs.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {logs.shape}")
    if mask is None or np.all(mask):
        return (
            logs
            - logs.mean(axis=1, keepdims=True)
            - logs.mean(axis=0, keepdims=True)
            + logs.mean()
        )

    mask = np.asarray(mask, dtype=bool)
    if mask.shape != logs.shape:
        raise DimensionError(f"mask shape {mask.shape} != matrix shape {logs.shape}")
    if np.any(mask.sum(axis=1) == 0) or np.any(mask.sum(axis=0) == 0):
        raise PreprocessingError("mask has an empty row or column")

    values = np.where(mask, logs, 0.0)
    row_means = _masked_means(values, mask, 1)
    col_means = _masked_means(values, mask, 0)
    grand_mean = values.sum() / mask.sum()
    centered = np.where(
        mask, values - row_means[:, None] - col_means[None, :] + grand_mean, 0.0
    )

    tol = CENTERING_TOL * max(1.0, np.max(np.abs(centered)))
    for sweep in range(CENTERING_MAX_SWEEPS):
        row_means = _masked_means(centered, mask, 1)
        col_means = _masked_means(centered, mask, 0)
        if max(np.max(np.abs(row_means)), np.max(np.abs(col_means))) <= tol:
            break
        centered = np.where(mask, centered - row_means[:, None], 0.0)
        col_means = _masked_means(centered, mask, 0)
        centered = np.where(mask, centered - col_means[None, :], 0.0)
    else:
        logger.warning("masked centering stopped after %d sweeps", CENTERING_MAX_SWEEPS)
    logger.debug("masked centering converged after %d sweeps", sweep)
    return centered


def denoise(data):
    """Map a matrix to the representative of its noise fiber."""
    if not isinstance(data, DataMatrix):
        data = DataMatrix(data)
    data.check_no_empty_lines()
    mask = data.mask
    magnitudes = np.abs(data.entries)
    logs = np.log(magnitudes, out=np.zeros_like(magnitudes), where=mask)
    centered = log_double_center(logs, mask)
    image = np.where(mask, np.sign(data.entries) * np.exp(centered), 0.0)
    return DataMatrix(image)


def centering_residuals(data):
    """Largest masked row and column mean of ``log|Y|``."""
    mask = data.mask
    magnitudes = np.abs(data.entries)
    logs = np.log(magnitudes, out=np.zeros_like(magnitudes), where=mask)
    return {
        "row": float(np.max(np.abs(_masked_means(logs, mask, 1)))),
        "col": float(np.max(np.abs(_masked_means(logs, mask, 0)))),
    }
