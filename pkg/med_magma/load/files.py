# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""File load module: every artifact is written atomically."""

import contextlib
import csv
import json
import logging
import os
from abc import ABC, abstractmethod
from dataclasses import fields
from functools import partial
from pathlib import Path

import numpy as np
import pandas as pd
import scipy.io
import scipy.sparse

from .base import Load
from .models import EdgeRow

logger = logging.getLogger(__name__)

TMP_PREFIX = ".tmp-"


@contextlib.contextmanager
def atomic_path(path):
    """Yield a temporary sibling of ``path`` and move it into place on success."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f"{TMP_PREFIX}{path.name}")
    try:
        yield tmp
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()
    logger.debug("wrote %s", path)


@contextlib.contextmanager
def atomic_open(path, mode="w", **kwargs):
    """Open a file whose content only appears once it is complete."""
    with atomic_path(path) as tmp:
        with open(tmp, mode, **kwargs) as fp:
            yield fp


def _plain(value):
    if isinstance(value, np.generic):
        return value.item()
    return value


def as_csv_row(dc):
    """Serialize a dataclass instance as a CSV-writable row."""
    row = []
    for f in fields(dc):
        val = _plain(getattr(dc, f.name))
        if isinstance(val, float):
            val = repr(val)
        elif isinstance(val, (dict, list)):
            val = json.dumps(val)
        row.append(val)
    return row


def write_rows(path, rows, row_type=None, delimiter=","):
    """Write dataclass rows, with a header, to a delimited file."""
    rows = list(rows)
    row_type = row_type or type(rows[0])
    with atomic_open(path, "w", newline="", encoding="utf-8") as fp:
        writer = csv.writer(fp, delimiter=delimiter, lineterminator="\n")
        writer.writerow([f.name for f in fields(row_type)])
        for row in rows:
            writer.writerow(as_csv_row(row))
    return Path(path)


def write_json(path, data):
    """Write a JSON document with sorted keys."""
    with atomic_open(path, "w", encoding="utf-8") as fp:
        json.dump(data, fp, indent=2, sort_keys=True)
        fp.write("\n")
    return Path(path)


def write_frame(path, frame, delimiter=",", index=True):
    """Write a labelled matrix as delimited text with full float precision."""
    with atomic_open(path, "w", newline="", encoding="utf-8") as fp:
        frame.to_csv(
            fp, sep=delimiter, index=index, float_format="%.17g", lineterminator="\n"
        )
    return Path(path)


def write_dense(dataset, path, delimiter=","):
    """Write a dataset as delimited text with row and column names.

    Row labels, when present, go to a trailing ``label`` column.
    """
    frame = pd.DataFrame(
        dataset.matrix.entries,
        index=pd.Index(dataset.row_names, name=""),
        columns=list(dataset.col_names),
    )
    if dataset.row_labels is not None:
        frame["label"] = dataset.row_labels
    return write_frame(path, frame, delimiter)


def write_matrixmarket(dataset, path):
    """Write a dataset as a coordinate MatrixMarket file."""
    sparse = scipy.sparse.coo_matrix(dataset.matrix.entries)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f"{TMP_PREFIX}{path.stem}.mtx")
    try:
        scipy.io.mmwrite(str(tmp), sparse, field="real", precision=17)
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()
    return path


def _matrix_frame(matrix, row_prefix="r", col_prefix="c"):
    d_rows, d_cols = matrix.shape
    return pd.DataFrame(
        matrix,
        index=pd.Index([f"{row_prefix}{i}" for i in range(d_rows)], name=""),
        columns=[f"{col_prefix}{j}" for j in range(d_cols)],
    )


def edge_list(psi):
    """Rows ``(i, j, |psi_ij|)`` for every pair ``i < j`` with a nonzero entry."""
    psi = np.asarray(psi, dtype=float)
    rows, cols = np.triu_indices(psi.shape[0], k=1)
    return [
        EdgeRow(i=int(i), j=int(j), weight=float(abs(psi[i, j])))
        for i, j in zip(rows, cols)
        if psi[i, j] != 0
    ]


class ArtifactWriter(ABC):
    """Write the files derived from one entry into an output directory."""

    @abstractmethod
    def _generate_artifacts(self, entry):
        """Yield ``(relative path, write function)`` pairs."""
        pass

    def prepare(self, output_dir, entry):
        """Write every artifact of ``entry`` and return the paths."""
        written = []
        for relative, write in self._generate_artifacts(entry):
            path = Path(output_dir) / relative
            write(path)
            written.append(path)
        return written


class DatasetWriter(ArtifactWriter):
    """A dataset as MatrixMarket or delimited text.

    Without an explicit ``matrixmarket`` flag the file name decides.
    """

    def __init__(self, name, delimiter=",", matrixmarket=None):
        """Constructor."""
        self.name = name
        self.delimiter = delimiter
        if matrixmarket is None:
            matrixmarket = Path(name).suffix.lower() == ".mtx"
        self.matrixmarket = matrixmarket

    def _generate_artifacts(self, dataset):
        """Yield the single dataset file."""
        if self.matrixmarket:
            yield self.name, partial(write_matrixmarket, dataset)
        else:
            yield self.name, partial(write_dense, dataset, delimiter=self.delimiter)


class FitWriter(ArtifactWriter):
    """Fitted factors, their edge lists and the fit report."""

    def _generate_artifacts(self, result):
        """Yield factor, edge and report files."""
        dataset, fitted = result.dataset, result.report.fitted
        for axis, psi, names in (
            ("rows", fitted.psi_rows, dataset.row_names),
            ("cols", fitted.psi_cols, dataset.col_names),
        ):
            frame = pd.DataFrame(psi, index=pd.Index(names, name=""), columns=names)
            yield f"psi_{axis}.csv", partial(write_frame, frame=frame)
            yield f"edges_{axis}.tsv", partial(
                write_rows, rows=edge_list(psi), row_type=EdgeRow, delimiter="\t"
            )
        yield "report.json", partial(write_json, data=result.to_report())


class BundleWriter(ArtifactWriter):
    """One synthetic replicate under its own ``rep_NNN`` directory."""

    def _generate_artifacts(self, entry):
        """Yield matrices, truth graphs, labels and noise factors."""
        replicate, bundle = entry
        folder = Path(f"rep_{replicate:03d}")
        for name in ("latent", "observed"):
            frame = _matrix_frame(getattr(bundle, name))
            yield folder / f"{name}.csv", partial(write_frame, frame=frame)
        for axis in ("rows", "cols"):
            prefix = axis[0]
            precision = _matrix_frame(bundle.precision.factor(axis), prefix, prefix)
            truth = getattr(bundle, f"truth_{axis}")
            labels = getattr(bundle, f"labels_{axis}")
            noise = getattr(bundle.noise, f"r_{axis}")
            yield folder / f"psi_{axis}.csv", partial(write_frame, frame=precision)
            yield folder / f"truth_{axis}.tsv", partial(
                write_rows, rows=edge_list(truth), row_type=EdgeRow, delimiter="\t"
            )
            yield folder / f"labels_{axis}.csv", partial(
                write_frame, frame=pd.DataFrame({"label": labels}), index=False
            )
            yield folder / f"noise_{axis}.csv", partial(
                write_frame, frame=pd.DataFrame({"r": noise}), index=False
            )


class TableWriter(ArtifactWriter):
    """A list of dataclass rows as one CSV table named after the row type."""

    def __init__(self, name=None, delimiter=","):
        """Constructor."""
        self.name = name
        self.delimiter = delimiter

    def _generate_artifacts(self, rows):
        """Yield the table file."""
        rows = list(rows)
        if not rows:
            return
        name = self.name or f"{rows[0]._table_name}.csv"
        yield name, partial(write_rows, rows=rows, delimiter=self.delimiter)


class FileLoad(Load):
    """Write entries into an output directory through artifact writers."""

    def __init__(self, output_dir, writers):
        """Constructor."""
        self.output_dir = Path(output_dir)
        self.writers = writers

    def _validate(self, entry):
        """Skip empty entries."""
        return entry is not None

    def _prepare(self, entry):
        """Create the output directory."""
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def _load(self, entry):
        """Run every writer on the entry."""
        written = []
        for writer in self.writers:
            written.extend(writer.prepare(self.output_dir, entry))
        for path in written:
            logger.info("wrote %s", path)
        return written

    def _cleanup(self):
        """Remove temporary files left by interrupted writes."""
        for tmp in self.output_dir.rglob(f"{TMP_PREFIX}*"):
            tmp.unlink()
