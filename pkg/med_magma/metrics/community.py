# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Community structure metrics of learned graphs."""

import logging
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from sklearn.metrics import adjusted_mutual_info_score

from ..config import SweepConfig
from ..errors import DimensionError, InputError
from ..load.models import SweepRow
from .scoring import edge_scores, pr_curve_aupr, threshold_topk

logger = logging.getLogger(__name__)

AMI_AVERAGE_METHOD = "arithmetic"


def _to_graph(adjacency):
    adjacency = np.asarray(adjacency, dtype=float)
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {adjacency.shape}")
    graph = nx.from_numpy_array(adjacency)
    graph.remove_edges_from(nx.selfloop_edges(graph))
    return graph


def community_detect(adjacency, resolution=1.0, seed=0):
    """Louvain partition as a label vector, clusters numbered by first vertex.

    >>> community_detect(np.zeros((1, 1)))
    array([0])
    """
    graph = _to_graph(adjacency)
    communities = nx.community.louvain_communities(
        graph, weight="weight", resolution=resolution, seed=seed
    )
    labels = np.empty(graph.number_of_nodes(), dtype=int)
    for label, members in enumerate(sorted(communities, key=min)):
        labels[sorted(members)] = label
    return labels


def modularity(adjacency, labels, resolution=1.0):
    """Modularity of a label vector."""
    graph = _to_graph(adjacency)
    groups = {}
    for vertex, label in enumerate(np.asarray(labels).tolist()):
        groups.setdefault(label, set()).add(vertex)
    return float(nx.community.modularity(graph, groups.values(), resolution=resolution))


def assortativity(adjacency, labels):
    """Newman's categorical assortativity coefficient."""
    graph = _to_graph(adjacency)
    labels = np.asarray(labels)
    if labels.shape != (graph.number_of_nodes(),):
        raise DimensionError(
            f"{labels.size} labels for {graph.number_of_nodes()} vertices"
        )
    if graph.number_of_edges() == 0:
        raise InputError("assortativity is undefined on a graph without edges")
    nx.set_node_attributes(graph, dict(enumerate(labels.tolist())), "label")
    return float(nx.attribute_assortativity_coefficient(graph, "label"))


def ami(labels_a, labels_b):
    """Adjusted mutual information with arithmetic-mean normalization."""
    labels_a, labels_b = np.asarray(labels_a), np.asarray(labels_b)
    if labels_a.shape != labels_b.shape:
        raise DimensionError(f"partitions of sizes {labels_a.size} and {labels_b.size}")
    return float(
        adjusted_mutual_info_score(
            labels_a, labels_b, average_method=AMI_AVERAGE_METHOD
        )
    )


def sweep_table(scores, labels, k_range, resolution_range, seed=0):
    """AMI and assortativity for every ``(k, resolution)`` grid point."""
    k_range, resolution_range = list(k_range), list(resolution_range)
    if not k_range or not resolution_range:
        raise InputError("sweep ranges must be non-empty")
    rows, clusterings = [], []
    for k in k_range:
        adjacency = threshold_topk(scores, k)
        try:
            assort = assortativity(adjacency, labels)
        except InputError:
            assort = float("nan")
        for resolution in resolution_range:
            partition = community_detect(adjacency, resolution, seed)
            clusterings.append((resolution, k, partition))
            rows.append(
                SweepRow(
                    k=int(k),
                    resolution=float(resolution),
                    n_clusters=int(partition.max() + 1),
                    ami=ami(labels, partition),
                    assortativity=assort,
                )
            )
    return rows, clusterings


def best_ami_sweep(scores, labels, k_range, resolution_range, seed=0):
    """Best AMI over the grid and the first grid point reaching it."""
    rows, _ = sweep_table(scores, labels, k_range, resolution_range, seed)
    best = max(rows, key=lambda row: row.ami)
    return best.ami, best


@dataclass(eq=False)
class GraphEval:
    """Evaluation of one learned graph against ground-truth labels."""

    scores: np.ndarray
    adjacency: np.ndarray
    labels: np.ndarray
    clusterings: list = field(default_factory=list)
    table: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)

    def to_dict(self):
        """JSON-ready metrics and sweep table."""
        return {
            "metrics": self.metrics,
            "sweep": [vars(row) for row in self.table],
        }


def evaluate_graph(psi, labels, sweep=None, truth=None):
    """Score a learned precision factor.

    Reports the AUPR against ``truth`` when given, the best assortativity
    across the sweep's ``k`` values and the best AMI across the whole grid.
    """
    sweep = sweep or SweepConfig()
    scores = edge_scores(psi)
    labels = np.asarray(labels)
    table, clusterings = sweep_table(
        scores, labels, sweep.k_values, sweep.resolutions, sweep.seed
    )
    best = max(table, key=lambda row: row.ami)
    assortativities = [row.assortativity for row in table]
    finite = [value for value in assortativities if np.isfinite(value)]

    metrics = {
        "best_ami": best.ami,
        "best_k": best.k,
        "best_resolution": best.resolution,
        "assortativity": max(finite) if finite else float("nan"),
        "ami_average_method": AMI_AVERAGE_METHOD,
    }
    if truth is not None:
        _, metrics["aupr"] = pr_curve_aupr(scores, truth)
    return GraphEval(
        scores=scores,
        adjacency=threshold_topk(scores, best.k),
        labels=labels,
        clusterings=clusterings,
        table=table,
        metrics=metrics,
    )
