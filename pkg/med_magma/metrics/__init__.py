# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Graph evaluation metrics."""

from .community import (
    GraphEval,
    ami,
    assortativity,
    best_ami_sweep,
    community_detect,
    evaluate_graph,
    modularity,
    sweep_table,
)
from .scoring import edge_scores, pr_curve_aupr, threshold_topk

__all__ = (
    "GraphEval",
    "ami",
    "assortativity",
    "best_ami_sweep",
    "community_detect",
    "edge_scores",
    "evaluate_graph",
    "modularity",
    "pr_curve_aupr",
    "sweep_table",
    "threshold_topk",
)
