# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Ground-truth graphs and their precision matrices."""

import numpy as np
import scipy.linalg

from ..errors import InputError


def barabasi_albert(n, m, seed=None):
    """Preferential attachment graph as a 0/1 adjacency matrix.

    Starts from a clique of ``m`` nodes; every new node attaches to ``m``
    distinct existing nodes with probability proportional to their degree.
    The result has ``m (n - m) + m (m - 1) / 2`` edges.
    """
    if not n > m >= 1:
        raise InputError(f"need n > m >= 1, got n={n}, m={m}")
    rng = np.random.default_rng(seed)

    adjacency = np.zeros((n, n), dtype=int)
    adjacency[:m, :m] = 1 - np.eye(m, dtype=int)
    degree = adjacency.sum(axis=1).astype(float)

    for new_node in range(m, n):
        weights = degree[:new_node]
        total = weights.sum()
        # a single seed node has no degree yet
        p = weights / total if total > 0 else None
        targets = rng.choice(new_node, size=m, replace=False, p=p)
        adjacency[new_node, targets] = 1
        adjacency[targets, new_node] = 1
        degree[targets] += 1
        degree[new_node] += m

    return adjacency


def _check_adjacency(adjacency):
    adjacency = np.asarray(adjacency)
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
        raise InputError(f"adjacency must be square, got shape {adjacency.shape}")
    if not np.array_equal(adjacency, adjacency.T):
        raise InputError("adjacency must be symmetric")
    if not np.all(np.isin(adjacency, (0, 1))):
        raise InputError("adjacency must be 0/1")
    if np.any(np.diag(adjacency)):
        raise InputError("adjacency must have a zero diagonal")
    return adjacency.astype(float)


def graph_to_precision(adjacency, pd_margin=0.1):
    """``I + A / (lambda_max(A) + pd_margin)``, positive definite.

    >>> graph_to_precision(np.zeros((2, 2)))
    array([[1., 0.],
           [0., 1.]])
    """
    if not pd_margin > 0:
        raise InputError("pd_margin must be positive")
    adjacency = _check_adjacency(adjacency)
    size = adjacency.shape[0]
    largest = scipy.linalg.eigvalsh(adjacency)[-1] if size else 0.0
    return np.eye(size) + adjacency / (max(largest, 0.0) + pd_margin)
