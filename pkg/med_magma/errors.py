# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""MED-MAGMA errors."""


class MedMagmaError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class InputError(MedMagmaError):
    """Malformed input file or invalid configuration."""

    exit_code = 2


class DimensionError(InputError, ValueError):
    """Operands do not conform."""


class IndexRangeError(InputError, IndexError):
    """An index lies outside the matrix."""


class PreprocessingError(MedMagmaError):
    """The data cannot enter the pipeline without further filtering."""

    exit_code = 3


class ConvergenceError(MedMagmaError):
    """An iterative solver ran out of iterations."""

    exit_code = 4

    def __init__(self, message, last_iterate=None, gradient_norm=None):
        """Constructor."""
        super().__init__(message)
        self.last_iterate = last_iterate
        self.gradient_norm = gradient_norm


class DefinitenessError(MedMagmaError):
    """A Kronecker sum is not positive definite."""

    exit_code = 4


class NumericalRankError(MedMagmaError):
    """A matrix that must be invertible is numerically singular."""

    exit_code = 4


class BenchmarkError(MedMagmaError):
    """Every benchmark cell failed."""

    exit_code = 5


class FitError(MedMagmaError):
    """A sub-step of the EM loop failed.

    Keeps the exit code of the wrapped error and records the iteration at
    which it happened.
    """

    def __init__(self, message, iteration, cause):
        """Constructor."""
        super().__init__(f"iteration {iteration}: {message}")
        self.iteration = iteration
        self.exit_code = getattr(cause, "exit_code", MedMagmaError.exit_code)
