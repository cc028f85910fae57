# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Kronecker-sum linear algebra.

A precision matrix over the entries of a ``d_rows x d_cols`` matrix is kept
as the pair of factors ``(psi_rows, psi_cols)`` with
``Omega = psi_cols (x) I + I (x) psi_rows`` acting on column-major
vectorizations. Nothing here ever builds ``Omega`` except the dense helpers
used as oracles.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

from ..errors import DefinitenessError, DimensionError, IndexRangeError

AXES = ("rows", "cols")
PAIR_SUM_FLOOR = 1e-10


def symmetrize(matrix):
    """Average a matrix with its transpose."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {matrix.shape}")
    return (matrix + matrix.T) / 2


def check_axis(axis):
    """Reject anything but ``rows`` or ``cols``."""
    if axis not in AXES:
        raise DimensionError(f"axis must be one of {AXES}, got {axis!r}")


@dataclass(frozen=True, eq=False)
class FactorPrecision:
    """The pair of factors whose Kronecker sum is the precision matrix."""

    psi_rows: np.ndarray
    psi_cols: np.ndarray

    def __post_init__(self):
        """Symmetrize and freeze both factors."""
        for name in ("psi_rows", "psi_cols"):
            value = symmetrize(getattr(self, name))
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls, d_rows, d_cols):
        """Identity factors, the initial point of the EM loop."""
        return cls(np.eye(d_rows), np.eye(d_cols))

    @property
    def shape(self):
        """Shape ``(d_rows, d_cols)`` of the matrices this precision acts on."""
        return self.psi_rows.shape[0], self.psi_cols.shape[0]

    @cached_property
    def eigen(self):
        """Cached eigendecomposition of both factors."""
        return EigenFactor.from_factors(self)

    def shifted(self, c):
        """Move ``c`` from the cols factor to the rows factor."""
        d_rows, d_cols = self.shape
        return FactorPrecision(
            self.psi_rows + c * np.eye(d_rows), self.psi_cols - c * np.eye(d_cols)
        )

    def trace_normalized(self):
        """Shift so both factors have the same mean diagonal."""
        d_rows, d_cols = self.shape
        mean_rows = np.trace(self.psi_rows) / d_rows
        mean_cols = np.trace(self.psi_cols) / d_cols
        return self.shifted((mean_cols - mean_rows) / 2)

    def factor(self, axis):
        """Return the factor of one axis."""
        check_axis(axis)
        return self.psi_rows if axis == "rows" else self.psi_cols

    def swapped(self):
        """Exchange the roles of rows and columns."""
        return FactorPrecision(self.psi_cols, self.psi_rows)


@dataclass(frozen=True, eq=False)
class EigenFactor:
    """Eigendecompositions of both factors of a Kronecker sum."""

    vectors_rows: np.ndarray
    values_rows: np.ndarray
    vectors_cols: np.ndarray
    values_cols: np.ndarray

    @classmethod
    def from_factors(cls, fp):
        """Decompose the factors of ``fp``."""
        values_rows, vectors_rows = scipy.linalg.eigh(fp.psi_rows)
        values_cols, vectors_cols = scipy.linalg.eigh(fp.psi_cols)
        return cls(vectors_rows, values_rows, vectors_cols, values_cols)

    @classmethod
    def from_values(cls, values_rows, values_cols):
        """Diagonal factors with the given eigenvalues."""
        values_rows = np.asarray(values_rows, dtype=float)
        values_cols = np.asarray(values_cols, dtype=float)
        return cls(
            np.eye(values_rows.size), values_rows, np.eye(values_cols.size), values_cols
        )

    @property
    def shape(self):
        """Shape ``(d_rows, d_cols)``."""
        return self.values_rows.size, self.values_cols.size

    @cached_property
    def pair_sums(self):
        """Matrix of eigenvalue pair sums ``lambda_i + mu_j``."""
        return self.values_rows[:, None] + self.values_cols[None, :]

    def check_definite(self):
        """Raise unless every pair sum exceeds the relative floor."""
        sums = self.pair_sums
        largest = np.max(np.abs(sums))
        smallest = np.min(sums)
        if not smallest > PAIR_SUM_FLOOR * largest:
            raise DefinitenessError(
                f"Kronecker sum is not positive definite "
                f"(min pair sum {smallest:.3e}, max {largest:.3e})"
            )
        return sums

    def to_factors(self):
        """Reassemble the factor matrices."""
        return FactorPrecision(
            (self.vectors_rows * self.values_rows) @ self.vectors_rows.T,
            (self.vectors_cols * self.values_cols) @ self.vectors_cols.T,
        )


def kron_sum_apply(fp, matrix):
    """Apply the Kronecker sum to a matrix: ``psi_rows M + M psi_cols``."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != fp.shape:
        raise DimensionError(
            f"matrix of shape {matrix.shape} does not conform to {fp.shape}"
        )
    return fp.psi_rows @ matrix + matrix @ fp.psi_cols


def kron_sum_entry(fp, row_pair, col_pair):
    """Entry ``Omega[(i, j), (k, l)]`` for row pair ``(i, k)``, col pair ``(j, l)``."""
    d_rows, d_cols = fp.shape
    i, k = row_pair
    j, l = col_pair
    for index, bound in ((i, d_rows), (k, d_rows), (j, d_cols), (l, d_cols)):
        if not 0 <= index < bound:
            raise IndexRangeError(f"index {index} out of range for size {bound}")
    value = 0.0
    if j == l:
        value += fp.psi_rows[i, k]
    if i == k:
        value += fp.psi_cols[j, l]
    return float(value)


def kron_sum_dense(fp):
    """Assemble the dense Kronecker sum (small problems and tests only)."""
    d_rows, d_cols = fp.shape
    return np.kron(fp.psi_cols, np.eye(d_rows)) + np.kron(np.eye(d_cols), fp.psi_rows)


def vec(matrix):
    """Column-major vectorization."""
    return np.asarray(matrix).reshape(-1, order="F")


def unvec(vector, shape):
    """Inverse of :func:`vec`."""
    return np.asarray(vector).reshape(shape, order="F")


def kron_sum_logdet(ef):
    """Log-determinant of the Kronecker sum from eigenvalue pair sums."""
    return float(np.sum(np.log(ef.check_definite())))


def partial_trace_inverse(ef, axis):
    """Partial trace of the inverse Kronecker sum over the other axis.

    For ``axis="rows"`` entry ``(a, b)`` is ``tr[Omega^-1 (I (x) J_ab)]``,
    i.e. ``V_r diag_i(sum_j 1 / (lambda_i + mu_j)) V_r^T``.
    """
    check_axis(axis)
    inverse_sums = 1.0 / ef.check_definite()
    if axis == "rows":
        vectors, weights = ef.vectors_rows, inverse_sums.sum(axis=1)
    else:
        vectors, weights = ef.vectors_cols, inverse_sums.sum(axis=0)
    return symmetrize((vectors * weights) @ vectors.T)


def sample_latent(ef, seed):
    """Draw ``Z`` with ``vec(Z) ~ N(0, Omega^-1)``."""
    sums = ef.check_definite()
    rng = np.random.default_rng(seed)
    gaussian = rng.standard_normal(ef.shape)
    return ef.vectors_rows @ (gaussian / np.sqrt(sums)) @ ef.vectors_cols.T


def quadratic_form(fp, matrix):
    """``vec(M)^T Omega vec(M)``."""
    matrix = np.asarray(matrix, dtype=float)
    return float(np.sum(matrix * kron_sum_apply(fp, matrix)))
