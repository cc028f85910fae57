# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Run manifests: what was run, on which inputs, with which settings."""

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from . import __version__
from .errors import InputError
from .extract.base import file_sha256
from .load.files import write_json

MANIFEST_NAME = "manifest.json"


@dataclass
class RunManifest:
    """Everything needed to re-run a command."""

    command: str
    argv: list
    config: dict = field(default_factory=dict)
    seed: int = None
    input_hashes: dict = field(default_factory=dict)
    version: str = __version__
    timings: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)

    @classmethod
    def for_inputs(cls, command, argv, paths, **kwargs):
        """Manifest hashing every existing input path."""
        hashes = {str(path): file_sha256(path) for path in paths if path}
        return cls(command=command, argv=list(argv), input_hashes=hashes, **kwargs)

    def write(self, path):
        """Write the manifest as JSON."""
        return write_json(path, asdict(self))

    @classmethod
    def read(cls, path):
        """Read a manifest written by :meth:`write`."""
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as err:
            raise InputError(f"cannot read manifest {path}: {err}") from err
        known = {f.name for f in fields(cls)}
        if not isinstance(data, dict) or not {"command", "argv"} <= set(data):
            raise InputError(f"{path} is not a run manifest")
        return cls(**{key: value for key, value in data.items() if key in known})

    def verify_inputs(self):
        """Raise if an input changed since the manifest was written."""
        for path, digest in self.input_hashes.items():
            if not Path(path).is_file():
                raise InputError(f"input {path} is missing")
            if file_sha256(path) != digest:
                raise InputError(f"input {path} changed since the recorded run")

    def replay_argv(self, outdir=None):
        """Recorded arguments, optionally redirected to another output."""
        argv = list(self.argv)
        if outdir is None:
            return argv
        if "--outdir" in argv:
            position = argv.index("--outdir")
            del argv[position : position + 2]
        return [*argv, "--outdir", str(outdir)]
