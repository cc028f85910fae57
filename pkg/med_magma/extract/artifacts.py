# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Readers for the artifacts written by earlier runs."""

import numpy as np
import pandas as pd

from ..errors import InputError


def _read(path, **kwargs):
    try:
        return pd.read_csv(path, **kwargs)
    except (OSError, ValueError) as err:
        raise InputError(f"cannot read {path}: {err}") from err


def read_factor(path):
    """Square precision factor written with row and column names."""
    frame = _read(path, index_col=0)
    matrix = frame.to_numpy(dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InputError(f"{path}: precision factor is not square")
    return matrix


def read_labels(path):
    """Label vector from a one-column CSV with a ``label`` header."""
    frame = _read(path, dtype=str, keep_default_na=False)
    if "label" not in frame.columns:
        raise InputError(f"{path}: no 'label' column")
    return frame["label"].to_numpy()


def read_edges(path, size):
    """Symmetric 0/1 adjacency from an ``i, j, weight`` edge list."""
    frame = _read(path, sep="\t")
    if not {"i", "j"} <= set(frame.columns):
        raise InputError(f"{path}: edge list needs 'i' and 'j' columns")
    i, j = frame["i"].to_numpy(dtype=int), frame["j"].to_numpy(dtype=int)
    if i.size and (min(i.min(), j.min()) < 0 or max(i.max(), j.max()) >= size):
        raise InputError(f"{path}: vertex index outside 0..{size - 1}")
    adjacency = np.zeros((size, size), dtype=int)
    adjacency[i, j] = 1
    adjacency[j, i] = 1
    np.fill_diagonal(adjacency, 0)
    return adjacency
