# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Gene selection for expression matrices."""

import logging

import numpy as np

from ..errors import PreprocessingError
from .base import Transform

logger = logging.getLogger(__name__)

SPARSITY_PERCENTS = range(1, 101)


def select_variable_genes(dataset, n=2000):
    """Keep the ``n`` columns with the largest variance, lower index on ties.

    Variance is the population variance of the raw values.
    """
    variance = np.var(dataset.matrix.entries, axis=0)
    d_cols = variance.size
    if d_cols <= n:
        keep = np.arange(d_cols)
    else:
        keep = np.argsort(-variance, kind="stable")[:n]
    logger.info("kept %d of %d most variable columns", min(n, d_cols), d_cols)
    return dataset.select_columns(
        keep, "select_variable_genes", n=n, variance="population, raw values"
    )


def sparsity_sweep(nnz_col, d_rows):
    """Kept column count for every sparsity percentage ``s``.

    A column survives at ``s`` when it has at least ``s% * d_rows`` nonzeros.
    """
    nnz_col = np.asarray(nnz_col)
    return {
        percent: np.flatnonzero(nnz_col * 100 >= percent * d_rows)
        for percent in SPARSITY_PERCENTS
    }


def squarify_by_sparsity(dataset):
    """Keep the columns of the sparsity cut that makes the matrix most square.

    Ties go to the smaller percentage; empty cuts are never chosen.
    """
    d_rows = dataset.shape[0]
    best = None
    for percent, keep in sparsity_sweep(dataset.matrix.nnz_col, d_rows).items():
        if keep.size == 0:
            continue
        gap = abs(d_rows - keep.size)
        if best is None or gap < best[0]:
            best = (gap, percent, keep)
    if best is None:
        raise PreprocessingError("every sparsity cut keeps no column")
    _, percent, keep = best
    logger.info("sparsity cut at %d%% keeps %d columns", percent, keep.size)
    return dataset.select_columns(
        keep, "squarify_by_sparsity", percent=percent, threshold="fraction of rows"
    )


class PreprocessTransform(Transform):
    """Variable-gene selection followed by the sparsity squarifying cut."""

    def __init__(self, n_genes=2000, squarify=True):
        """Constructor."""
        self.n_genes = n_genes
        self.squarify = squarify

    def _transform(self, entry):
        """Transform entry."""
        dataset = select_variable_genes(entry, self.n_genes)
        if self.squarify:
            dataset = squarify_by_sparsity(dataset)
        return dataset
