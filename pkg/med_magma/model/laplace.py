# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Pseudo-sufficient statistics from a Laplace expansion around the fiber point.

The fiber directions are spanned by the rows of
``P = [I_cols (x) 1_rows^T ; 1_cols^T (x) I_rows]`` with the last row dropped.
The curvature correction of the Gram entry ``(a, b)`` is
``1/2 tr[(P Omega P^T)^-1 P H_ab P^T]`` where ``H_ab`` is the Hessian of that
entry. Both ``P Omega P^T`` and the correction matrices have closed forms in
the factors, so no ``d_rows * d_cols`` sized object is ever built.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import LinearOperator

from ..errors import IndexRangeError, NumericalRankError
from .gmgm import SufficientStats
from .kroncore import check_axis, symmetrize, unvec, vec

logger = logging.getLogger(__name__)

SAFEGUARD_FLOOR = 1e-8
ROUNDING_SLACK = 100


def tangent_basis(d_rows, d_cols):
    """Dense fiber basis ``P`` with its last row dropped (small problems only)."""
    basis = np.vstack(
        (
            np.kron(np.eye(d_cols), np.ones((1, d_rows))),
            np.kron(np.ones((1, d_cols)), np.eye(d_rows)),
        )
    )
    return basis[:-1]


@dataclass(frozen=True, eq=False)
class TangentProjector:
    """Projected precision ``P Omega P^T`` and its inverse."""

    dims: tuple
    projected_precision: np.ndarray
    inverse: np.ndarray

    def embedded_inverse(self):
        """Blocks ``(K11, K12, K22)`` of the inverse padded at the dropped index.

        ``K11`` is ``d_cols x d_cols``, ``K12`` is ``d_cols x d_rows`` and
        ``K22`` is ``d_rows x d_rows``; the last row and column of ``K22`` and
        the last column of ``K12`` are zero.
        """
        d_rows, d_cols = self.dims
        size = d_rows + d_cols
        padded = np.zeros((size, size))
        padded[: size - 1, : size - 1] = self.inverse
        return (
            padded[:d_cols, :d_cols],
            padded[:d_cols, d_cols:],
            padded[d_cols:, d_cols:],
        )


def _cholesky(matrix, what):
    try:
        return scipy.linalg.cho_factor(matrix)
    except np.linalg.LinAlgError as err:
        raise NumericalRankError(f"{what} is not positive definite") from err


def build_projected_precision(fp):
    """Assemble ``P Omega P^T`` in closed form and invert it blockwise."""
    psi_rows, psi_cols = fp.psi_rows, fp.psi_cols
    d_rows, d_cols = fp.shape
    row_sums_rows = psi_rows.sum(axis=1)
    row_sums_cols = psi_cols.sum(axis=1)

    top_left = d_rows * psi_cols + row_sums_rows.sum() * np.eye(d_cols)
    top_right = np.add.outer(row_sums_cols, row_sums_rows)[:, : d_rows - 1]
    bottom_right = (d_cols * psi_rows + row_sums_cols.sum() * np.eye(d_rows))[
        : d_rows - 1, : d_rows - 1
    ]
    projected = np.block([[top_left, top_right], [top_right.T, bottom_right]])

    # Schur complement of the cols block
    top_factor = _cholesky(top_left, "projected precision")
    if d_rows == 1:
        inverse = scipy.linalg.cho_solve(top_factor, np.eye(d_cols))
    else:
        solved = scipy.linalg.cho_solve(top_factor, top_right)
        schur = bottom_right - top_right.T @ solved
        schur_inverse = scipy.linalg.cho_solve(
            _cholesky(schur, "projected precision Schur complement"),
            np.eye(d_rows - 1),
        )
        upper = -solved @ schur_inverse
        inverse = np.block(
            [
                [
                    scipy.linalg.cho_solve(top_factor, np.eye(d_cols))
                    - upper @ solved.T,
                    upper,
                ],
                [upper.T, schur_inverse],
            ]
        )
    return TangentProjector(
        dims=(d_rows, d_cols),
        projected_precision=projected,
        inverse=symmetrize(inverse),
    )


def hessian_entry_form(axis, entry, dims):
    """Hessian of one Gram entry as an operator on ``vec(Z)``.

    For the rows Gram ``(Z Z^T)_ab`` it is ``I_cols (x) (J_ab + J_ba)``,
    for the cols Gram ``(Z^T Z)_ab`` it is ``(J_ab + J_ba) (x) I_rows``.
    """
    check_axis(axis)
    d_rows, d_cols = dims
    a, b = entry
    bound = d_rows if axis == "rows" else d_cols
    for index in (a, b):
        if not 0 <= index < bound:
            raise IndexRangeError(f"index {index} out of range for size {bound}")

    def matvec(vector):
        matrix = unvec(np.ravel(vector), dims)
        out = np.zeros(dims)
        if axis == "rows":
            out[a] += matrix[b]
            out[b] += matrix[a]
        else:
            out[:, a] += matrix[:, b]
            out[:, b] += matrix[:, a]
        return vec(out)

    size = d_rows * d_cols
    return LinearOperator((size, size), matvec=matvec, rmatvec=matvec, dtype=float)


def correction_matrix(tp, axis):
    """Half-trace curvature correction for every entry of one Gram matrix."""
    check_axis(axis)
    d_rows, d_cols = tp.dims
    k11, k12, k22 = tp.embedded_inverse()
    if axis == "rows":
        cross = k12.sum(axis=0)
        correction = np.trace(k11) + np.add.outer(cross, cross) + d_cols * k22
    else:
        cross = k12.sum(axis=1)
        correction = d_rows * k11 + np.add.outer(cross, cross) + np.trace(k22)
    return symmetrize(correction)


def psd_safeguard(matrix, rel_floor=SAFEGUARD_FLOOR):
    """Floor the spectrum at ``rel_floor * lambda_max`` if it has a negative part.

    PSD input is returned unchanged, including eigenvalues that are negative
    only at rounding level ``100 n eps lambda_max``.
    """
    matrix = symmetrize(matrix)
    values, vectors = scipy.linalg.eigh(matrix)
    largest = max(values[-1], 0.0)
    rounding = ROUNDING_SLACK * matrix.shape[0] * np.finfo(float).eps * largest
    if values[0] >= -rounding:
        return matrix
    floor = rel_floor * largest
    if values[0] < -floor:
        logger.warning("PSD safeguard raised eigenvalue %.3e to %.3e", values[0], floor)
    return symmetrize((vectors * np.maximum(values, floor)) @ vectors.T)


def pseudo_stats(fpoint, fp, correction_enabled=True):
    """Laplace statistics: Grams of ``z*`` plus the curvature corrections."""
    z_star = np.asarray(fpoint.z_star, dtype=float)
    s_rows = z_star @ z_star.T
    s_cols = z_star.T @ z_star
    if correction_enabled:
        tp = build_projected_precision(fp)
        s_rows = s_rows + correction_matrix(tp, "rows")
        s_cols = s_cols + correction_matrix(tp, "cols")
    return SufficientStats(psd_safeguard(s_rows), psd_safeguard(s_cols))
