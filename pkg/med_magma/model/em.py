# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""EM driver fitting the factor precisions of noisy data."""

import logging
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from ..config import FitConfig
from ..errors import ConvergenceError, FitError, MedMagmaError
from .denoise import denoise
from .gmgm import gmgm_fit, grad_nll
from .kroncore import FactorPrecision
from .laplace import pseudo_stats
from .latentpoint import find_z_star

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IterationRecord:
    """Diagnostics of one EM iteration."""

    iteration: int
    change_rows: float
    change_cols: float
    objective: float
    gradient_norm: float
    wall_time: float

    def to_dict(self, include_timing=True):
        """Plain dictionary, optionally without the wall time."""
        data = asdict(self)
        if not include_timing:
            data.pop("wall_time")
        return data


@dataclass(frozen=True, eq=False)
class FitReport:
    """Result of :func:`med_magma_fit`."""

    fitted: FactorPrecision
    iterations: int
    records: list = field(default_factory=list)
    converged: bool = False
    failure: str = None

    def __post_init__(self):
        """Check the record count."""
        if len(self.records) != self.iterations:
            raise ValueError("one record per iteration is required")

    def to_dict(self, include_timing=False):
        """JSON-ready summary of the fit (factors excluded)."""
        return {
            "iterations": self.iterations,
            "converged": self.converged,
            "failure": self.failure,
            "records": [r.to_dict(include_timing) for r in self.records],
        }


def relative_change(previous, current):
    """``max |dPsi|_inf / |Psi|_inf`` over both trace-normalized factors."""
    previous = previous.trace_normalized()
    current = current.trace_normalized()
    changes = []
    for old, new in (
        (previous.psi_rows, current.psi_rows),
        (previous.psi_cols, current.psi_cols),
    ):
        norm = max(np.max(np.abs(new)), np.finfo(float).tiny)
        changes.append(float(np.max(np.abs(new - old)) / norm))
    return tuple(changes)


def med_magma_fit(data, cfg=None):
    """Fit ``(psi_rows, psi_cols)`` from an observed matrix.

    The data are denoised once; each iteration then finds the fiber point
    under the current precision, builds the Laplace statistics and refits.
    A sub-solver running out of iterations ends the fit early with a
    non-converged report holding the last usable factors; any other
    sub-step error is raised as :class:`FitError`.
    """
    cfg = cfg or FitConfig()
    denoised = denoise(data)
    fp = FactorPrecision.identity(*denoised.shape)
    noise = None
    records = []
    converged = False
    failure = None

    for iteration in range(1, cfg.em_max_iters + 1):
        started = time.perf_counter()
        try:
            fpoint = find_z_star(denoised, fp, cfg.flipflop, init=noise)
            stats = pseudo_stats(fpoint, fp, cfg.correction_enabled)
            fitted = gmgm_fit(stats, cfg.solver)
            gradient_norm = max(
                float(np.max(np.abs(g))) for g in grad_nll(fitted, stats)
            )
        except ConvergenceError as err:
            failure = f"iteration {iteration}: {err}"
            logger.warning("EM stopped early, %s", failure)
            if isinstance(err.last_iterate, FactorPrecision):
                fp = err.last_iterate
            break
        except MedMagmaError as err:
            raise FitError(str(err), iteration=iteration, cause=err) from err

        change_rows, change_cols = relative_change(fp, fitted)
        records.append(
            IterationRecord(
                iteration=iteration,
                change_rows=change_rows,
                change_cols=change_cols,
                objective=fpoint.objective,
                gradient_norm=gradient_norm,
                wall_time=time.perf_counter() - started,
            )
        )
        logger.info(
            "EM iteration %d: change rows %.3e cols %.3e",
            iteration,
            change_rows,
            change_cols,
        )
        fp, noise = fitted, fpoint.factors
        if max(change_rows, change_cols) < cfg.em_tol:
            converged = True
            break

    if not converged and failure is None:
        logger.warning("EM stopped after %d iterations", cfg.em_max_iters)
    return FitReport(
        fitted=fp,
        iterations=len(records),
        records=records,
        converged=converged,
        failure=failure,
    )
