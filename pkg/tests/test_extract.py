# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Extract and preprocessing tests."""

import hashlib
from fractions import Fraction

import numpy as np
import pytest

from med_magma.errors import InputError, PreprocessingError
from med_magma.extract import (
    Dataset,
    DenseExtract,
    DenseOptions,
    MatrixMarketExtract,
    dataset_extract,
    file_sha256,
    load_dense,
    load_sparse_matrixmarket,
    read_edges,
    read_labels,
)
from med_magma.transform import (
    PreprocessTransform,
    select_variable_genes,
    sparsity_sweep,
    squarify_by_sparsity,
)

MATRIX_MARKET = """%%MatrixMarket matrix coordinate real general
% counts
3 2 3
1 1 2.5
2 2 1.0
3 1 4.0
"""


def test_dense_with_labels(dense_csv):
    """Names, values and the label column are separated."""
    dataset = load_dense(dense_csv, DenseOptions(label_column="label"))
    assert dataset.row_names == ("c1", "c2", "c3")
    assert dataset.col_names == ("g1", "g2", "g3")
    np.testing.assert_array_equal(dataset.row_labels, ["a", "b", "a"])
    np.testing.assert_array_equal(dataset.matrix.entries[1], [3.0, 4.0, 1.5])
    assert dataset.provenance[0]["step"] == "load_dense"


def test_dense_without_header_or_index(tmp_path):
    """Bare numbers get default names."""
    path = tmp_path / "bare.tsv"
    path.write_text("1\t2\n3\t4\n", encoding="utf-8")
    dataset = load_dense(path, DenseOptions(delimiter="\t", header=False, index=False))
    assert dataset.shape == (2, 2)
    assert dataset.row_names == ("r0", "r1")
    assert dataset.col_names == ("c0", "c1")


@pytest.mark.parametrize(
    "content",
    [
        ",g1,g2\nc1,1.0,x\nc2,2.0,3.0\n",
        ",g1,g2\nc1,1.0,2.0\nc2,2.0,3.0,4.0\n",
        ",g1,g2\nc1,1.0,inf\nc2,2.0,3.0\n",
        ",g1,g2\nc1,1.0,2.0\nc1,2.0,3.0\n",
    ],
    ids=["non-numeric", "ragged", "non-finite", "duplicate-names"],
)
def test_malformed_dense_input(tmp_path, content):
    """Malformed files are input errors."""
    path = tmp_path / "bad.csv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(InputError):
        load_dense(path)


def test_missing_label_column(dense_csv):
    """A named label column must exist."""
    with pytest.raises(InputError):
        load_dense(dense_csv, DenseOptions(label_column="cell_type"))


def test_matrixmarket(tmp_path):
    """Absent coordinates are zeros."""
    path = tmp_path / "counts.mtx"
    path.write_text(MATRIX_MARKET, encoding="utf-8")
    dataset = load_sparse_matrixmarket(path)
    np.testing.assert_array_equal(
        dataset.matrix.entries, [[2.5, 0.0], [0.0, 1.0], [4.0, 0.0]]
    )
    assert dataset.matrix.nnz_total == 3


@pytest.mark.parametrize(
    "body",
    ["3 2 3\n1 1 2.5\n2 2 1.0\n", "3 2 3\n1 1 2.5\n2 2 1.0\n4 1 4.0\n"],
    ids=["missing-entry", "out-of-range"],
)
def test_malformed_matrixmarket(tmp_path, body):
    """Entry counts and indices are checked."""
    path = tmp_path / "bad.mtx"
    path.write_text("%%MatrixMarket matrix coordinate real general\n" + body)
    with pytest.raises(InputError):
        load_sparse_matrixmarket(path)


def test_extract_picks_reader(tmp_path, dense_csv):
    """The suffix selects the reader; missing files are input errors."""
    assert isinstance(dataset_extract(tmp_path / "x.mtx"), MatrixMarketExtract)
    extract = dataset_extract(dense_csv, DenseOptions(label_column="label"))
    assert isinstance(extract, DenseExtract)
    assert len(list(extract.run())) == 1
    digest = hashlib.sha256(dense_csv.read_bytes()).hexdigest()
    assert file_sha256(dense_csv) == digest
    with pytest.raises(InputError):
        list(dataset_extract(tmp_path / "missing.csv").run())


def test_variable_gene_selection():
    """Highest variance columns are kept in their original order."""
    matrix = np.array([[1.0, 0.0, 5.0, 2.0], [1.0, 4.0, 1.0, 2.0]])
    dataset = select_variable_genes(Dataset(matrix), n=2)
    assert dataset.col_names == ("c1", "c2")
    assert dataset.provenance[-1]["variance"] == "population, raw values"
    assert select_variable_genes(Dataset(matrix), n=10).shape == (2, 4)


def test_sparsity_sweep():
    """A column survives while its nonzero fraction reaches the cut."""
    sweep = sparsity_sweep([4, 2, 1], d_rows=4)
    np.testing.assert_array_equal(sweep[25], [0, 1, 2])
    np.testing.assert_array_equal(sweep[50], [0, 1])
    np.testing.assert_array_equal(sweep[51], [0])
    np.testing.assert_array_equal(sweep[100], [0])


def test_squarify():
    """The kept column count is closest to the row count."""
    matrix = np.array(
        [
            [1.0, 1.0, 1.0, 1.0, 0.0],
            [1.0, 1.0, 1.0, 0.0, 1.0],
            [1.0, 1.0, 1.0, 0.0, 0.0],
        ]
    )
    dataset = squarify_by_sparsity(Dataset(matrix))
    assert dataset.col_names == ("c0", "c1", "c2")
    assert dataset.provenance[-1]["percent"] == 34


def test_squarify_needs_nonzeros():
    """A matrix without nonzeros has no cut."""
    with pytest.raises(PreprocessingError):
        squarify_by_sparsity(Dataset(np.zeros((2, 3))))


def _brute_force_cut(matrix):
    """Most square sparsity cut by direct counting with exact fractions."""
    d_rows, d_cols = matrix.shape
    counts = [int(np.count_nonzero(matrix[:, j])) for j in range(d_cols)]
    best = None
    for percent in range(1, 101):
        threshold = Fraction(percent, 100) * d_rows
        kept = [j for j in range(d_cols) if counts[j] >= threshold]
        if kept and (best is None or abs(d_rows - len(kept)) < best[0]):
            best = (abs(d_rows - len(kept)), percent, kept)
    return best[1], best[2]


@pytest.mark.parametrize("seed", range(20))
def test_squarify_matches_brute_force(seed):
    """The chosen cut equals an exhaustive count over all percentages."""
    rng = np.random.default_rng(seed)
    d_rows, d_cols = rng.integers(5, 31), rng.integers(5, 61)
    density = rng.uniform(0.0, 1.0, d_cols)
    matrix = rng.uniform(0.5, 2.0, (d_rows, d_cols))
    matrix = matrix * (rng.uniform(size=(d_rows, d_cols)) < density[None, :])
    matrix[0, 0] = 1.0
    percent, kept = _brute_force_cut(matrix)
    dataset = squarify_by_sparsity(Dataset(matrix))
    assert dataset.provenance[-1]["percent"] == percent
    assert dataset.col_names == tuple(f"c{j}" for j in kept)


def test_preprocess_transform():
    """Gene selection then squarifying."""
    matrix = np.arange(1.0, 13.0).reshape(3, 4)
    transform = PreprocessTransform(n_genes=3)
    (dataset,) = transform.run([Dataset(matrix)])
    steps = [step["step"] for step in dataset.provenance]
    assert steps == ["select_variable_genes", "squarify_by_sparsity"]
    assert dataset.shape == (3, 3)


def test_artifact_readers(tmp_path):
    """Label and edge files written by earlier runs."""
    labels = tmp_path / "labels.csv"
    labels.write_text("label\nx\ny\n", encoding="utf-8")
    np.testing.assert_array_equal(read_labels(labels), ["x", "y"])
    edges = tmp_path / "edges.tsv"
    edges.write_text("i\tj\tweight\n0\t2\t0.5\n", encoding="utf-8")
    adjacency = read_edges(edges, 3)
    np.testing.assert_array_equal(adjacency, [[0, 0, 1], [0, 0, 0], [1, 0, 0]])
    with pytest.raises(InputError):
        read_edges(edges, 2)
