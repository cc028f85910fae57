# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Numerical core: Kronecker sums, denoising, latent points and EM."""

from .denoise import DataMatrix, centering_residuals, denoise, log_double_center
from .em import FitReport, IterationRecord, med_magma_fit
from .gmgm import SufficientStats, gmgm_fit, grad_nll, gram_stats, nll
from .kroncore import (
    EigenFactor,
    FactorPrecision,
    kron_sum_apply,
    kron_sum_dense,
    kron_sum_entry,
    kron_sum_logdet,
    partial_trace_inverse,
    quadratic_form,
    sample_latent,
)
from .laplace import (
    TangentProjector,
    build_projected_precision,
    correction_matrix,
    hessian_entry_form,
    psd_safeguard,
    pseudo_stats,
)
from .latentpoint import (
    FiberPoint,
    NoiseFactors,
    aggregate_quadratic,
    find_z_star,
    scale,
    solve_product_constrained_qp,
)

__all__ = (
    "DataMatrix",
    "EigenFactor",
    "FactorPrecision",
    "FiberPoint",
    "FitReport",
    "IterationRecord",
    "NoiseFactors",
    "SufficientStats",
    "TangentProjector",
    "aggregate_quadratic",
    "build_projected_precision",
    "centering_residuals",
    "correction_matrix",
    "denoise",
    "find_z_star",
    "gmgm_fit",
    "grad_nll",
    "gram_stats",
    "hessian_entry_form",
    "kron_sum_apply",
    "kron_sum_dense",
    "kron_sum_entry",
    "kron_sum_logdet",
    "log_double_center",
    "med_magma_fit",
    "nll",
    "partial_trace_inverse",
    "psd_safeguard",
    "pseudo_stats",
    "quadratic_form",
    "sample_latent",
    "scale",
    "solve_product_constrained_qp",
)
