# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Edge ranking metrics."""

import numpy as np
from sklearn.metrics import average_precision_score, precision_recall_curve

from ..errors import DimensionError, InputError


def edge_scores(psi):
    """Absolute off-diagonal entries of a precision factor."""
    psi = np.asarray(psi, dtype=float)
    if psi.ndim != 2 or psi.shape[0] != psi.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {psi.shape}")
    scores = np.abs(psi)
    np.fill_diagonal(scores, 0.0)
    return scores


def threshold_topk(scores, k):
    """Keep each vertex's ``k`` strongest positive edges, union-symmetrized.

    Ties go to the lower vertex index.

    >>> threshold_topk(np.array([[0, 3, 1], [3, 0, 2], [1, 2, 0]]), 1)
    array([[0, 1, 0],
           [1, 0, 1],
           [0, 1, 0]])
    """
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    scores = np.asarray(scores, dtype=float)
    if scores.ndim != 2 or scores.shape[0] != scores.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {scores.shape}")
    size = scores.shape[0]
    adjacency = np.zeros((size, size), dtype=int)
    for vertex in range(size):
        order = np.argsort(-scores[vertex], kind="stable")
        order = order[(order != vertex) & (scores[vertex, order] > 0)]
        adjacency[vertex, order[:k]] = 1
    return np.maximum(adjacency, adjacency.T)


def pr_curve_aupr(scores, truth):
    """Precision-recall curve and average precision over vertex pairs.

    Every unordered pair is ranked by score; the area is the step-wise sum
    of precision over recall increments.
    """
    scores = np.asarray(scores, dtype=float)
    truth = np.asarray(truth)
    if scores.shape != truth.shape or scores.ndim != 2:
        raise DimensionError(
            f"scores {scores.shape} and truth {truth.shape} do not conform"
        )
    upper = np.triu_indices(scores.shape[0], k=1)
    labels = truth[upper] != 0
    if labels.all() or not labels.any():
        raise InputError("truth needs at least one edge and one non-edge")
    ranked = scores[upper]
    precision, recall, thresholds = precision_recall_curve(labels, ranked)
    curve = {"precision": precision, "recall": recall, "thresholds": thresholds}
    return curve, float(average_precision_score(labels, ranked))
