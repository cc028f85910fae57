# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Load, stream and manifest tests."""

import json

import numpy as np
import pytest

from med_magma.config import FitConfig
from med_magma.errors import InputError
from med_magma.extract import (
    Dataset,
    DenseOptions,
    dataset_extract,
    load_dense,
    read_factor,
)
from med_magma.load import (
    BundleWriter,
    DatasetWriter,
    EdgeRow,
    FileLoad,
    FitWriter,
    SweepRow,
    TableWriter,
    as_csv_row,
    atomic_open,
    edge_list,
)
from med_magma.manifest import RunManifest
from med_magma.streams import Stream
from med_magma.transform import Chain, DenoiseTransform, FitTransform


def test_as_csv_row():
    """Floats keep full precision and numpy scalars become plain values."""
    row = SweepRow(
        k=np.int64(2), resolution=0.1, n_clusters=3, ami=1 / 3, assortativity=0.5
    )
    assert as_csv_row(row) == [2, "0.1", 3, repr(1 / 3), "0.5"]


def test_edge_list():
    """Upper-triangle nonzeros with absolute weights."""
    psi = np.array([[1.0, -0.5, 0.0], [-0.5, 1.0, 0.2], [0.0, 0.2, 1.0]])
    assert edge_list(psi) == [EdgeRow(0, 1, 0.5), EdgeRow(1, 2, 0.2)]


def test_atomic_open_leaves_nothing_on_failure(tmp_path):
    """An interrupted write leaves neither the file nor its temporary."""
    target = tmp_path / "out.txt"
    with pytest.raises(RuntimeError):
        with atomic_open(target) as fp:
            fp.write("partial")
            raise RuntimeError("interrupted")
    assert list(tmp_path.iterdir()) == []


def test_dataset_roundtrip(tmp_path, dense_csv):
    """Written datasets read back with names, values and labels."""
    options = DenseOptions(label_column="label")
    dataset = load_dense(dense_csv, options)
    written = FileLoad(tmp_path / "out", [DatasetWriter("copy.csv")]).run([dataset])
    again = load_dense(written[0], options)
    assert again.row_names == dataset.row_names
    assert again.col_names == dataset.col_names
    np.testing.assert_array_equal(again.row_labels, dataset.row_labels)
    np.testing.assert_array_equal(again.matrix.entries, dataset.matrix.entries)


def test_matrixmarket_roundtrip(tmp_path):
    """Sparse output keeps the nonzero pattern."""
    matrix = np.array([[0.0, 1.5], [2.25, 0.0]])
    written = FileLoad(tmp_path, [DatasetWriter("m.mtx")]).run([Dataset(matrix)])
    again = next(dataset_extract(written[0]).run())
    np.testing.assert_array_equal(again.matrix.entries, matrix)


def test_table_writer(tmp_path):
    """Rows go to a CSV named after their table."""
    rows = [SweepRow(1, 0.5, 2, 1.0, 0.25), SweepRow(2, 0.5, 2, 0.5, 0.1)]
    (path,) = FileLoad(tmp_path, [TableWriter()]).run([rows])
    assert path.name == "sweep.csv"
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "k,resolution,n_clusters,ami,assortativity"
    assert len(lines) == 3


def test_bundle_writer(tmp_path, small_bundle):
    """Every replicate file lands under its own directory."""
    written = FileLoad(tmp_path, [BundleWriter()]).run([(0, small_bundle)])
    names = {str(path.relative_to(tmp_path)) for path in written}
    assert "rep_000/observed.csv" in names
    assert "rep_000/truth_cols.tsv" in names
    assert "rep_000/noise_rows.csv" in names
    psi = read_factor(tmp_path / "rep_000" / "psi_rows.csv")
    np.testing.assert_allclose(psi, small_bundle.precision.psi_rows, rtol=1e-15)


def test_fit_stream(tmp_path, small_bundle):
    """Extract, fit and artifact writing in one stream."""
    source = tmp_path / "observed.csv"
    FileLoad(tmp_path, [DatasetWriter(source.name)]).run(
        [Dataset(small_bundle.observed)]
    )
    stream = Stream(
        dataset_extract(source),
        Chain(FitTransform(FitConfig(em_max_iters=2))),
        FileLoad(tmp_path / "fit", [FitWriter()]),
        name="fit",
    )
    written = stream.run(cleanup=True)
    assert {path.name for path in written} == {
        "psi_rows.csv",
        "psi_cols.csv",
        "edges_rows.tsv",
        "edges_cols.tsv",
        "report.json",
    }
    report = json.loads((tmp_path / "fit" / "report.json").read_text())
    assert report["schema_version"] == 1
    assert report["shape"] == [8, 10]
    assert report["config"]["em_max_iters"] == 2
    assert stream.elapsed is not None


def test_denoise_transform_records_provenance(positive_matrix):
    """Denoising adds one provenance step with its diagnostics."""
    (dataset,) = DenoiseTransform().run([Dataset(positive_matrix)])
    step = dataset.provenance[-1]
    assert step["step"] == "denoise"
    assert step["nnz"] == positive_matrix.size
    assert step["residuals"]["row"] < 1e-10


def test_manifest_roundtrip(tmp_path, dense_csv):
    """Manifests record input hashes and replay with a new output."""
    manifest = RunManifest.for_inputs(
        "fit", ["fit", str(dense_csv), "--outdir", "a"], [dense_csv, None]
    )
    path = manifest.write(tmp_path / "manifest.json")
    again = RunManifest.read(path)
    assert again.input_hashes == manifest.input_hashes
    again.verify_inputs()
    assert again.replay_argv("b") == ["fit", str(dense_csv), "--outdir", "b"]

    dense_csv.write_text("changed", encoding="utf-8")
    with pytest.raises(InputError):
        again.verify_inputs()


def test_manifest_rejects_other_json(tmp_path):
    """Arbitrary JSON is not a manifest."""
    path = tmp_path / "other.json"
    path.write_text('{"a": 1}', encoding="utf-8")
    with pytest.raises(InputError):
        RunManifest.read(path)
