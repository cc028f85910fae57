# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Dense CSV and MatrixMarket readers."""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
import pandas as pd
import scipy.io

from ..errors import InputError
from ..model.denoise import DataMatrix
from .base import FileExtract

logger = logging.getLogger(__name__)


def _default_names(prefix, size):
    return tuple(f"{prefix}{index}" for index in range(size))


def _check_unique(kind, names):
    duplicates = sorted(name for name, count in Counter(names).items() if count > 1)
    if duplicates:
        raise InputError(f"duplicate {kind} names: {', '.join(duplicates)}")


@dataclass(frozen=True, eq=False)
class Dataset:
    """Observed matrix (rows are cells, columns genes) with its metadata."""

    matrix: DataMatrix
    row_names: tuple = None
    col_names: tuple = None
    row_labels: np.ndarray = None
    provenance: list = field(default_factory=list)

    def __post_init__(self):
        """Fill default names and validate."""
        if not isinstance(self.matrix, DataMatrix):
            object.__setattr__(self, "matrix", DataMatrix(self.matrix))
        d_rows, d_cols = self.matrix.shape
        row_names = self.row_names or _default_names("r", d_rows)
        col_names = self.col_names or _default_names("c", d_cols)
        row_names = tuple(str(name) for name in row_names)
        col_names = tuple(str(name) for name in col_names)
        if len(row_names) != d_rows or len(col_names) != d_cols:
            raise InputError("name counts do not match the matrix shape")
        _check_unique("row", row_names)
        _check_unique("column", col_names)
        object.__setattr__(self, "row_names", row_names)
        object.__setattr__(self, "col_names", col_names)
        if self.row_labels is not None:
            labels = np.asarray(self.row_labels)
            if labels.shape != (d_rows,):
                raise InputError(f"{labels.size} labels for {d_rows} rows")
            object.__setattr__(self, "row_labels", labels)

    @property
    def shape(self):
        """Matrix shape."""
        return self.matrix.shape

    def with_matrix(self, matrix, step, **params):
        """Same rows and columns, new entries, one more provenance step."""
        return replace(
            self,
            matrix=DataMatrix(matrix),
            provenance=[*self.provenance, {"step": step, **params}],
        )

    def select_columns(self, keep, step, **params):
        """Keep the given column indices, in their original order."""
        keep = np.sort(np.asarray(keep, dtype=int))
        return replace(
            self,
            matrix=DataMatrix(self.matrix.entries[:, keep]),
            col_names=tuple(self.col_names[index] for index in keep),
            provenance=[*self.provenance, {"step": step, **params}],
        )


@dataclass(frozen=True)
class DenseOptions:
    """Layout of a delimited text file."""

    delimiter: str = ","
    header: bool = True
    index: bool = True
    label_column: str = None


def _label_position(label_column, col_names, header):
    if header:
        if label_column not in col_names:
            raise InputError(f"label column {label_column!r} not found")
        return col_names.index(label_column)
    try:
        return int(label_column)
    except ValueError as err:
        raise InputError(
            "without a header the label column must be a position"
        ) from err


def load_dense(path, options=None):
    """Read a delimited text matrix, optionally with names and a label column."""
    options = options or DenseOptions()
    try:
        frame = pd.read_csv(
            path,
            sep=options.delimiter,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
        )
    except (OSError, ValueError, pd.errors.ParserError) as err:
        raise InputError(f"cannot parse {path}: {err}") from err
    if frame.isna().to_numpy().any():
        raise InputError(f"{path}: inconsistent row lengths")

    cells = frame.to_numpy(dtype=object)
    col_names = None
    if options.header:
        col_names, cells = [str(name) for name in cells[0]], cells[1:]
    row_names = None
    if options.index:
        row_names, cells = tuple(cells[:, 0]), cells[:, 1:]
        if col_names is not None:
            col_names = col_names[1:]

    labels = None
    if options.label_column is not None:
        names = col_names or list(_default_names("c", cells.shape[1]))
        position = _label_position(options.label_column, names, options.header)
        if not 0 <= position < cells.shape[1]:
            raise InputError(f"label column {position} out of range")
        labels = np.asarray(cells[:, position], dtype=str)
        cells = np.delete(cells, position, axis=1)
        if col_names is not None:
            del col_names[position]

    try:
        values = np.asarray(cells, dtype=float)
    except ValueError as err:
        raise InputError(f"{path}: non-numeric entry ({err})") from err
    if values.size == 0:
        raise InputError(f"{path}: no data")
    if not np.all(np.isfinite(values)):
        raise InputError(f"{path}: non-finite entries")

    logger.info("read %d x %d dense matrix from %s", *values.shape, path)
    return Dataset(
        matrix=DataMatrix(values),
        row_names=row_names,
        col_names=tuple(col_names) if col_names is not None else None,
        row_labels=labels,
        provenance=[{"step": "load_dense", "source": str(path)}],
    )


def _scan_coordinates(path, rows, cols, entries):
    """Check the entry count and index ranges of a coordinate file."""
    with open(path, encoding="utf-8") as fp:
        lines = (line.strip() for line in fp)
        body = [line for line in lines if line and not line.startswith("%")]
    data = body[1:]
    if len(data) != entries:
        raise InputError(
            f"{path}: header declares {entries} entries, found {len(data)}"
        )
    for line in data:
        fields = line.split()
        try:
            i, j = int(fields[0]), int(fields[1])
        except (IndexError, ValueError) as err:
            raise InputError(f"{path}: malformed entry {line!r}") from err
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise InputError(f"{path}: index ({i}, {j}) outside {rows} x {cols}")


def load_sparse_matrixmarket(path):
    """Read a coordinate MatrixMarket file; absent entries are zeros."""
    try:
        rows, cols, entries, layout, _, _ = scipy.io.mminfo(path)
    except (OSError, ValueError) as err:
        raise InputError(f"cannot parse {path}: {err}") from err
    if layout != "coordinate":
        raise InputError(f"{path}: expected coordinate format, got {layout}")
    _scan_coordinates(path, rows, cols, entries)
    try:
        matrix = scipy.io.mmread(path)
    except (ValueError, IndexError) as err:
        raise InputError(f"cannot parse {path}: {err}") from err

    values = np.asarray(matrix.toarray(), dtype=float)
    logger.info(
        "read %d x %d sparse matrix with %d entries from %s", rows, cols, entries, path
    )
    return Dataset(
        matrix=DataMatrix(values),
        provenance=[{"step": "load_sparse_matrixmarket", "source": str(path)}],
    )


class DenseExtract(FileExtract):
    """Dense delimited text input."""

    def __init__(self, path, options=None):
        """Constructor."""
        super().__init__(path)
        self.options = options or DenseOptions()

    def _read(self):
        """Parse the file."""
        return load_dense(self.path, self.options)


class MatrixMarketExtract(FileExtract):
    """Coordinate MatrixMarket input."""

    def _read(self):
        """Parse the file."""
        return load_sparse_matrixmarket(self.path)


def is_matrixmarket(path):
    """Whether a path names a MatrixMarket file."""
    return Path(path).suffix.lower() == ".mtx"


def dataset_extract(path, options=None):
    """Pick the reader matching the file suffix."""
    if is_matrixmarket(path):
        return MatrixMarketExtract(path)
    return DenseExtract(path, options)
