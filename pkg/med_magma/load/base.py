# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Load interfaces."""

from abc import ABC, abstractmethod


class Load(ABC):
    """Base class for data loading."""

    @abstractmethod
    def _validate(self, entry):
        """Validate an entry before loading."""
        pass

    @abstractmethod
    def _prepare(self, entry):
        """Prepare the destination of an entry."""
        pass

    @abstractmethod
    def _load(self, entry):
        """Load an entry, returning what was written."""
        pass

    @abstractmethod
    def _cleanup(self):
        """Cleanup after loading."""
        pass

    def run(self, entries, cleanup=False):
        """Load entries and return the written artifacts."""
        written = []
        for entry in entries:
            if self._validate(entry):
                self._prepare(entry)
                written.extend(self._load(entry))

        if cleanup:
            self._cleanup()
        return written
