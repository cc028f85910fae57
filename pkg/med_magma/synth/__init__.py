# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Synthetic ground truth and noisy observations."""

from .generator import (
    SynthBundle,
    corrupt,
    generate_experiment,
    generate_replicate,
    make_truth_labels,
)
from .graphs import barabasi_albert, graph_to_precision

__all__ = (
    "SynthBundle",
    "barabasi_albert",
    "corrupt",
    "generate_experiment",
    "generate_replicate",
    "graph_to_precision",
    "make_truth_labels",
)
