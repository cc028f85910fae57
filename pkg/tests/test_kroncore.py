# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Kronecker-sum algebra tests."""

import numpy as np
import pytest

from med_magma.errors import DefinitenessError, DimensionError, IndexRangeError
from med_magma.model.kroncore import (
    EigenFactor,
    FactorPrecision,
    kron_sum_apply,
    kron_sum_dense,
    kron_sum_entry,
    kron_sum_logdet,
    partial_trace_inverse,
    quadratic_form,
    sample_latent,
    unvec,
    vec,
)


def test_vec_is_column_major():
    """Columns are stacked one after the other."""
    matrix = np.array([[1, 2], [3, 4]])
    np.testing.assert_array_equal(vec(matrix), [1, 3, 2, 4])
    np.testing.assert_array_equal(unvec(vec(matrix), (2, 2)), matrix)


def test_apply_matches_dense(make_precision, rng):
    """Factored product equals the dense Kronecker sum product."""
    fp = make_precision(3, 4)
    matrix = rng.standard_normal((3, 4))
    expected = kron_sum_dense(fp) @ vec(matrix)
    np.testing.assert_allclose(vec(kron_sum_apply(fp, matrix)), expected)


def test_apply_rejects_wrong_shape(make_precision):
    """Operands must conform."""
    with pytest.raises(DimensionError):
        kron_sum_apply(make_precision(3, 4), np.ones((4, 3)))


def test_entry_matches_dense(make_precision):
    """Single entries agree with the dense oracle."""
    fp = make_precision(3, 2)
    dense = kron_sum_dense(fp)
    d_rows = 3
    for i, j, k, l in [(0, 0, 0, 0), (1, 0, 2, 0), (2, 1, 2, 0), (0, 1, 2, 0)]:
        expected = dense[i + j * d_rows, k + l * d_rows]
        assert kron_sum_entry(fp, (i, k), (j, l)) == pytest.approx(expected)


def test_entry_index_out_of_range(make_precision):
    """Indices outside the factors raise."""
    with pytest.raises(IndexRangeError):
        kron_sum_entry(make_precision(3, 2), (0, 3), (0, 0))


def test_logdet_matches_dense(make_precision):
    """Log-determinant from pair sums equals the dense one."""
    fp = make_precision(3, 4)
    sign, expected = np.linalg.slogdet(kron_sum_dense(fp))
    assert sign > 0
    assert kron_sum_logdet(fp.eigen) == pytest.approx(expected)


def test_partial_traces_match_dense(make_precision):
    """Partial traces of the inverse agree with the dense inverse."""
    fp = make_precision(3, 4)
    inverse = np.linalg.inv(kron_sum_dense(fp)).reshape(4, 3, 4, 3)
    rows = np.einsum("jajb->ab", inverse)
    cols = np.einsum("ajbj->ab", inverse)
    np.testing.assert_allclose(partial_trace_inverse(fp.eigen, "rows"), rows)
    np.testing.assert_allclose(partial_trace_inverse(fp.eigen, "cols"), cols)


def test_partial_trace_rejects_axis(make_precision):
    """Only rows and cols are axes."""
    with pytest.raises(DimensionError):
        partial_trace_inverse(make_precision(2, 2).eigen, "depth")


def test_indefinite_sum_raises():
    """A pair sum below the floor is not positive definite."""
    ef = EigenFactor.from_values([-2.0, 1.0], [1.0, 3.0])
    with pytest.raises(DefinitenessError):
        ef.check_definite()


def test_trace_normalization_keeps_the_sum(make_precision):
    """Normalizing moves trace between factors without changing Omega."""
    fp = make_precision(3, 5).shifted(2.5)
    normalized = fp.trace_normalized()
    assert np.trace(normalized.psi_rows) / 3 == pytest.approx(
        np.trace(normalized.psi_cols) / 5
    )
    np.testing.assert_allclose(kron_sum_dense(normalized), kron_sum_dense(fp))


def test_eigen_roundtrip(make_precision):
    """Eigenfactors reassemble the factors."""
    fp = make_precision(4, 3)
    back = fp.eigen.to_factors()
    np.testing.assert_allclose(back.psi_rows, fp.psi_rows, atol=1e-12)
    np.testing.assert_allclose(back.psi_cols, fp.psi_cols, atol=1e-12)


def test_factors_are_frozen_and_symmetric():
    """Factors are symmetrized copies that cannot be written."""
    fp = FactorPrecision(np.array([[2.0, 1.0], [0.0, 2.0]]), np.eye(2))
    np.testing.assert_array_equal(fp.psi_rows, [[2.0, 0.5], [0.5, 2.0]])
    with pytest.raises(ValueError):
        fp.psi_rows[0, 0] = 1.0


def test_quadratic_form_matches_dense(make_precision, rng):
    """``vec(M)^T Omega vec(M)`` from the factors."""
    fp = make_precision(3, 4)
    matrix = rng.standard_normal((3, 4))
    expected = vec(matrix) @ kron_sum_dense(fp) @ vec(matrix)
    assert quadratic_form(fp, matrix) == pytest.approx(expected)


def test_sample_latent_is_seeded(make_precision):
    """The same seed draws the same sample."""
    ef = make_precision(3, 4).eigen
    first = sample_latent(ef, np.random.SeedSequence(7))
    second = sample_latent(ef, np.random.SeedSequence(7))
    assert first.shape == (3, 4)
    np.testing.assert_array_equal(first, second)


def test_sample_latent_covariance():
    """Sample second moments approach the inverse Kronecker sum."""
    fp = FactorPrecision(np.array([[2.0, 0.5], [0.5, 1.0]]), np.array([[1.5]]))
    seeds = np.random.SeedSequence(11).spawn(4000)
    samples = np.array([vec(sample_latent(fp.eigen, seed)) for seed in seeds])
    expected = np.linalg.inv(kron_sum_dense(fp))
    np.testing.assert_allclose(samples.T @ samples / len(seeds), expected, atol=0.04)
