# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Dataset transformations."""

from .base import Chain, Transform
from .pipeline import DenoiseTransform, FitResult, FitTransform
from .preprocess import (
    PreprocessTransform,
    select_variable_genes,
    sparsity_sweep,
    squarify_by_sparsity,
)

__all__ = (
    "Chain",
    "DenoiseTransform",
    "FitResult",
    "FitTransform",
    "PreprocessTransform",
    "Transform",
    "select_variable_genes",
    "sparsity_sweep",
    "squarify_by_sparsity",
)
