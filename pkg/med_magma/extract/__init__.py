# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Dataset extraction."""

from .artifacts import read_edges, read_factor, read_labels
from .base import Extract, FileExtract, file_sha256
from .datasets import (
    Dataset,
    DenseExtract,
    DenseOptions,
    MatrixMarketExtract,
    dataset_extract,
    is_matrixmarket,
    load_dense,
    load_sparse_matrixmarket,
)

__all__ = (
    "Dataset",
    "DenseExtract",
    "DenseOptions",
    "Extract",
    "FileExtract",
    "MatrixMarketExtract",
    "dataset_extract",
    "file_sha256",
    "is_matrixmarket",
    "load_dense",
    "load_sparse_matrixmarket",
    "read_edges",
    "read_factor",
    "read_labels",
)
