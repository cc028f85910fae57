# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Dataclasses models to generate table rows."""

from dataclasses import InitVar, dataclass


@dataclass
class EdgeRow:
    """Edge of a learned graph."""

    i: int
    j: int
    weight: float

    _table_name: InitVar[str] = "edges"


@dataclass
class SweepRow:
    """One grid point of the best-AMI sweep."""

    k: int
    resolution: float
    n_clusters: int
    ami: float
    assortativity: float

    _table_name: InitVar[str] = "sweep"


@dataclass
class BenchRow:
    """One (method, alpha, replicate) cell of the benchmark."""

    method: str
    alpha: float
    replicate: int
    aupr_rows: float
    aupr_cols: float
    assortativity: float
    best_ami: float
    status: str

    _table_name: InitVar[str] = "bench"
