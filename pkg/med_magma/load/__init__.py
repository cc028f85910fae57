# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Artifact loading into output directories."""

from .base import Load
from .files import (
    ArtifactWriter,
    BundleWriter,
    DatasetWriter,
    FileLoad,
    FitWriter,
    TableWriter,
    as_csv_row,
    atomic_open,
    edge_list,
    write_dense,
    write_json,
    write_matrixmarket,
    write_rows,
)
from .models import BenchRow, EdgeRow, SweepRow

__all__ = (
    "ArtifactWriter",
    "BenchRow",
    "BundleWriter",
    "DatasetWriter",
    "EdgeRow",
    "FileLoad",
    "FitWriter",
    "Load",
    "SweepRow",
    "TableWriter",
    "as_csv_row",
    "atomic_open",
    "edge_list",
    "write_dense",
    "write_json",
    "write_matrixmarket",
    "write_rows",
)
