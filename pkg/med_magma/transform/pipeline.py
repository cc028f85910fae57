# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Denoising and fitting steps of the pipeline."""

import logging
from dataclasses import dataclass

from .. import __version__
from ..config import FitConfig
from ..model.denoise import centering_residuals, denoise
from ..model.em import med_magma_fit
from .base import Transform

logger = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1


class DenoiseTransform(Transform):
    """Replace the matrix by the representative of its noise fiber."""

    def _transform(self, entry):
        """Transform entry."""
        denoised = denoise(entry.matrix)
        residuals = centering_residuals(denoised)
        logger.info(
            "denoised %d x %d matrix, %d nonzeros, residuals row %.3e col %.3e",
            *denoised.shape,
            denoised.nnz_total,
            residuals["row"],
            residuals["col"],
        )
        return entry.with_matrix(
            denoised.entries, "denoise", nnz=denoised.nnz_total, residuals=residuals
        )


@dataclass(frozen=True, eq=False)
class FitResult:
    """A dataset with the EM fit of its precision factors."""

    dataset: object
    report: object
    config: FitConfig

    def to_report(self):
        """Versioned JSON report; no timings so reruns are byte-identical."""
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "version": __version__,
            "method": "med-magma",
            "shape": list(self.dataset.shape),
            "config": self.config.to_dict(),
            "trace_convention": "equal mean diagonal",
            "provenance": self.dataset.provenance,
            **self.report.to_dict(include_timing=False),
        }


class FitTransform(Transform):
    """Fit the precision factors of a dataset."""

    def __init__(self, config=None):
        """Constructor."""
        self.config = config or FitConfig()

    def _transform(self, entry):
        """Transform entry."""
        report = med_magma_fit(entry.matrix, self.config)
        return FitResult(dataset=entry, report=report, config=self.config)
