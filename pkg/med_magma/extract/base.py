# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Extract interfaces."""

import hashlib
from abc import ABC, abstractmethod
from pathlib import Path

from ..errors import InputError


def file_sha256(path):
    """Hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as fp:
        for block in iter(lambda: fp.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


class Extract(ABC):
    """Base class for data extraction."""

    @abstractmethod
    def run(self):
        """Yield one element at a time."""
        pass


class FileExtract(Extract):
    """Extraction of a single dataset from one input file."""

    def __init__(self, path):
        """Constructor."""
        self.path = Path(path)

    @abstractmethod
    def _read(self):
        """Parse the file."""
        pass

    def run(self):
        """Yield the dataset read from the file."""
        if not self.path.is_file():
            raise InputError(f"input file {self.path} does not exist")
        yield self._read()
