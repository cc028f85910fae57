# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Configuration dataclasses."""

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .errors import InputError

METHODS = ("med-magma", "gmgm-raw", "single-axis-baseline")


def _check_positive(name, value):
    if not value > 0:
        raise InputError(f"{name} must be positive, got {value!r}")


class _FromDict:
    """Mixin building a config from a plain dictionary."""

    _nested = {}

    @classmethod
    def from_dict(cls, data):
        """Build the config, rejecting unknown keys."""
        data = dict(data or {})
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InputError(
                f"unknown {cls.__name__} keys: {', '.join(sorted(unknown))}"
            )
        for key, nested_cls in cls._nested.items():
            if key in data and isinstance(data[key], dict):
                data[key] = nested_cls.from_dict(data[key])
        try:
            return cls(**data)
        except TypeError as err:
            raise InputError(str(err)) from err

    def to_dict(self):
        """Plain dictionary snapshot."""
        return asdict(self)


@dataclass(frozen=True)
class SolverConfig(_FromDict):
    """Settings of the Kronecker-sum MLE solver."""

    tol: float = 1e-6
    max_iters: int = 2000
    eig_floor: float = 1e-8

    def __post_init__(self):
        """Validate."""
        _check_positive("tol", self.tol)
        _check_positive("eig_floor", self.eig_floor)
        if self.max_iters < 1:
            raise InputError("max_iters must be at least 1")


@dataclass(frozen=True)
class FlipFlopConfig(_FromDict):
    """Settings of the fiber point search."""

    tol: float = 1e-8
    max_sweeps: int = 100
    qp_tol: float = 1e-12
    qp_max_iters: int = 200

    def __post_init__(self):
        """Validate."""
        _check_positive("tol", self.tol)
        _check_positive("qp_tol", self.qp_tol)
        if self.max_sweeps < 1 or self.qp_max_iters < 1:
            raise InputError("max_sweeps and qp_max_iters must be at least 1")


@dataclass(frozen=True)
class FitConfig(_FromDict):
    """Settings of the EM driver."""

    em_tol: float = 1e-4
    em_max_iters: int = 50
    correction_enabled: bool = True
    seed: int = 0
    solver: SolverConfig = field(default_factory=SolverConfig)
    flipflop: FlipFlopConfig = field(default_factory=FlipFlopConfig)

    _nested = {"solver": SolverConfig, "flipflop": FlipFlopConfig}

    def __post_init__(self):
        """Validate."""
        _check_positive("em_tol", self.em_tol)
        if self.em_max_iters < 1:
            raise InputError("em_max_iters must be at least 1")


@dataclass(frozen=True)
class SynthConfig(_FromDict):
    """Settings of the synthetic protocol."""

    d_rows: int = 30
    d_cols: int = 40
    m: int = 2
    alpha: float = 0.0
    replicates: int = 1
    seed: int = 0
    pd_margin: float = 0.1

    def __post_init__(self):
        """Validate."""
        if not 0.0 <= self.alpha <= 1.0:
            raise InputError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        if self.m < 1:
            raise InputError("m must be at least 1")
        if self.d_rows < 2 or self.d_cols < 2:
            raise InputError("d_rows and d_cols must be at least 2")
        if self.m >= min(self.d_rows, self.d_cols):
            raise InputError("m must be smaller than both dimensions")
        if self.replicates < 1:
            raise InputError("replicates must be at least 1")
        _check_positive("pd_margin", self.pd_margin)


def _default_resolutions():
    return tuple(float(r) for r in np.geomspace(0.02, 2.0, 12))


@dataclass(frozen=True)
class SweepConfig(_FromDict):
    """Grid of the best-AMI sweep."""

    k_values: tuple = tuple(range(1, 41))
    resolutions: tuple = field(default_factory=_default_resolutions)
    seed: int = 0

    def __post_init__(self):
        """Validate."""
        object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        object.__setattr__(
            self, "resolutions", tuple(float(r) for r in self.resolutions)
        )
        if not self.k_values or not self.resolutions:
            raise InputError("sweep ranges must be non-empty")
        if min(self.k_values) < 1:
            raise InputError("k values must be at least 1")


@dataclass(frozen=True)
class BenchConfig(_FromDict):
    """Settings of the paired noise-strength benchmark."""

    d_rows: int = 30
    d_cols: int = 40
    m: int = 2
    alphas: tuple = (0.0, 0.5, 1.0)
    replicates: int = 10
    seed: int = 0
    pd_margin: float = 0.1
    methods: tuple = METHODS
    jobs: int = 1
    fit: FitConfig = field(default_factory=FitConfig)
    sweep: SweepConfig = field(
        default_factory=lambda: SweepConfig(k_values=tuple(range(1, 11)))
    )

    _nested = {"fit": FitConfig, "sweep": SweepConfig}

    def __post_init__(self):
        """Validate."""
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        object.__setattr__(self, "methods", tuple(self.methods))
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise InputError(f"unknown methods: {', '.join(sorted(unknown))}")
        if not self.alphas or not self.methods:
            raise InputError("alphas and methods must be non-empty")
        if self.jobs < 1:
            raise InputError("jobs must be at least 1")
        # delegate the remaining checks
        for alpha in self.alphas:
            self.synth_config(alpha)

    def synth_config(self, alpha=0.0):
        """Synthetic protocol settings at one noise strength."""
        return SynthConfig(
            d_rows=self.d_rows,
            d_cols=self.d_cols,
            m=self.m,
            alpha=alpha,
            replicates=self.replicates,
            seed=self.seed,
            pd_margin=self.pd_margin,
        )


def load_config(path, cls):
    """Read a JSON config file into ``cls``."""
    if path is None:
        return cls()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as err:
        raise InputError(f"cannot read config {path}: {err}") from err
    return cls.from_dict(data)
