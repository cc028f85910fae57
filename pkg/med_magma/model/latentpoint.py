# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Most likely latent point of a noise fiber.

For fixed column factors the Kronecker-sum quadratic form of
``diag(r_rows) Y diag(r_cols)`` is a quadratic in ``r_rows`` alone, and vice
versa. The two product-constrained quadratic programs are solved in turn.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ..config import FlipFlopConfig
from ..errors import ConvergenceError, DimensionError, InputError
from .denoise import DataMatrix
from .kroncore import check_axis, quadratic_form, symmetrize

logger = logging.getLogger(__name__)

ARMIJO = 1e-4
MAX_BACKTRACKS = 60
UNIT_PRODUCT_TOL = 1e-10
ROUNDOFF_STEPS = 8


def _positive_vector(name, values):
    values = np.asarray(values, dtype=float)
    if values.ndim != 1:
        raise DimensionError(f"{name} must be a vector, got shape {values.shape}")
    if not np.all(values > 0) or not np.all(np.isfinite(values)):
        raise InputError(f"{name} must be strictly positive and finite")
    return values


@dataclass(frozen=True, eq=False)
class NoiseFactors:
    """Positive per-row and per-column scale factors."""

    r_rows: np.ndarray
    r_cols: np.ndarray

    def __post_init__(self):
        """Validate and freeze."""
        for name in ("r_rows", "r_cols"):
            value = np.array(_positive_vector(name, getattr(self, name)))
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @classmethod
    def ones(cls, d_rows, d_cols):
        """The fiber basepoint."""
        return cls(np.ones(d_rows), np.ones(d_cols))

    @property
    def shape(self):
        """Lengths ``(d_rows, d_cols)``."""
        return self.r_rows.size, self.r_cols.size

    def normalized(self):
        """Divide each vector by its geometric mean."""
        return NoiseFactors(
            self.r_rows / np.exp(np.mean(np.log(self.r_rows))),
            self.r_cols / np.exp(np.mean(np.log(self.r_cols))),
        )

    def has_unit_product(self, tol=UNIT_PRODUCT_TOL):
        """Whether both products equal one within ``tol``."""
        return bool(
            abs(np.prod(self.r_rows) - 1) <= tol
            and abs(np.prod(self.r_cols) - 1) <= tol
        )


@dataclass(frozen=True, eq=False)
class FiberPoint:
    """Minimizer of the quadratic form over a noise fiber."""

    z_star: np.ndarray
    factors: NoiseFactors
    objective: float
    history: list = field(default_factory=list)


def scale(matrix, noise):
    """Apply ``diag(r_rows) M diag(r_cols)``."""
    if isinstance(matrix, DataMatrix):
        matrix = matrix.entries
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != noise.shape:
        raise DimensionError(
            f"noise of shape {noise.shape} does not conform to {matrix.shape}"
        )
    return matrix * noise.r_rows[:, None] * noise.r_cols[None, :]


def _entries(data):
    if isinstance(data, DataMatrix):
        return data.entries
    return np.asarray(data, dtype=float)


def aggregate_quadratic(data, fp, fixed, axis):
    """Matrix of the quadratic form in one axis's factors.

    For ``axis="rows"`` and ``D = diag(fixed)`` this is
    ``psi_rows * (Y D^2 Y^T) + Diag(diag(Y D psi_cols D Y^T))``.
    """
    check_axis(axis)
    matrix = _entries(data)
    if matrix.shape != fp.shape:
        raise DimensionError(
            f"matrix of shape {matrix.shape} does not conform to {fp.shape}"
        )
    if axis == "cols":
        return aggregate_quadratic(matrix.T, fp.swapped(), fixed, "rows")

    fixed = _positive_vector("fixed", fixed)
    if fixed.size != matrix.shape[1]:
        raise DimensionError(
            f"fixed factors of length {fixed.size} for {matrix.shape[1]} columns"
        )
    weighted = matrix * fixed[None, :]
    gram = weighted @ weighted.T
    cross = np.einsum("ij,jk,ik->i", weighted, fp.psi_cols, weighted)
    return symmetrize(fp.psi_rows * gram + np.diag(cross))


def _projected_newton_direction(hessian, projected_gradient, scale):
    size = projected_gradient.size
    projector = np.eye(size) - 1.0 / size
    reduced = projector @ hessian @ projector
    values, vectors = scipy.linalg.eigh(reduced)
    # discard the constraint normal, keep the tangent spectrum positive
    normal = np.abs(vectors.sum(axis=0)) / np.sqrt(size) > 1 - 1e-8
    floor = 1e-10 * max(scale, np.max(np.abs(values)))
    values = np.where(normal, np.inf, np.maximum(values, floor))
    direction = -(vectors @ ((vectors.T @ projected_gradient) / values))
    return direction - direction.mean()


def solve_product_constrained_qp(omega_tilde, cfg=None, init=None):
    """Minimize ``r^T A r`` over positive ``r`` with unit product.

    Solved as a smooth problem in ``u = log r`` on the hyperplane
    ``sum(u) = 0`` by projected Newton with backtracking. Rows and columns
    of ``A`` that are entirely zero do not affect the objective and keep
    ``r = 1``.

    >>> solve_product_constrained_qp(np.eye(3))
    array([1., 1., 1.])
    """
    cfg = cfg or FlipFlopConfig()
    omega = symmetrize(omega_tilde)
    size = omega.shape[0]
    u = np.zeros(size)
    if init is not None:
        init = _positive_vector("init", init)
        if init.size != size:
            raise DimensionError(f"initial point of length {init.size} for {size}")
        u = np.log(init)

    active = np.flatnonzero(np.any(omega != 0, axis=1))
    inactive = np.setdiff1d(np.arange(size), active)
    u[inactive] = 0.0
    if active.size <= 1:
        return np.ones(size)

    block = omega[np.ix_(active, active)]
    magnitude = np.abs(block)
    v = u[active] - u[active].mean()

    def objective(point):
        r = np.exp(point)
        return float(r @ block @ r)

    eps = np.finfo(float).eps
    value = objective(v)
    for iteration in range(cfg.qp_max_iters):
        r = np.exp(v)
        product = block @ r
        gradient = 2 * r * product
        projected = gradient - gradient.mean()
        # size of the terms the gradient and objective are summed from
        gradient_scale = max(float(np.max(2 * r * (magnitude @ r))), eps)
        value_scale = max(float(r @ magnitude @ r), eps)
        if np.max(np.abs(projected)) <= cfg.qp_tol * gradient_scale:
            break
        hessian = 2 * r[:, None] * block * r[None, :] + np.diag(gradient)
        direction = _projected_newton_direction(hessian, projected, value_scale)
        slope = direction @ projected
        if not slope < 0:
            direction = -projected
            slope = direction @ projected
        step = 1.0
        for _ in range(MAX_BACKTRACKS):
            candidate = v + step * direction
            candidate_value = objective(candidate)
            if candidate_value <= value + ARMIJO * step * slope:
                break
            step /= 2
        else:
            logger.debug("QP line search stalled at iteration %d", iteration)
            break
        decrease = value - candidate_value
        v = candidate - candidate.mean()
        value = objective(v)
        if decrease <= ROUNDOFF_STEPS * eps * value_scale:
            logger.debug("QP decrease at roundoff level at iteration %d", iteration)
            break
    else:
        u[active] = v
        raise ConvergenceError(
            f"product-constrained QP did not converge in {cfg.qp_max_iters} "
            "iterations",
            last_iterate=np.exp(u),
        )

    u[active] = v
    return np.exp(u)


def find_z_star(data, fp, cfg=None, init=None):
    """Flip-flop between the row and column factor programs, rows first."""
    cfg = cfg or FlipFlopConfig()
    matrix = _entries(data)
    if matrix.shape != fp.shape:
        raise DimensionError(
            f"matrix of shape {matrix.shape} does not conform to {fp.shape}"
        )
    noise = init if init is not None else NoiseFactors.ones(*matrix.shape)
    r_rows, r_cols = np.array(noise.r_rows), np.array(noise.r_cols)

    def current_objective():
        return quadratic_form(fp, scale(matrix, NoiseFactors(r_rows, r_cols)))

    objective = current_objective()
    history = [objective]
    for sweep in range(cfg.max_sweeps):
        start = objective
        omega_rows = aggregate_quadratic(matrix, fp, r_cols, "rows")
        r_rows = solve_product_constrained_qp(omega_rows, cfg, init=r_rows)
        history.append(current_objective())
        omega_cols = aggregate_quadratic(matrix, fp, r_rows, "cols")
        r_cols = solve_product_constrained_qp(omega_cols, cfg, init=r_cols)
        objective = current_objective()
        history.append(objective)
        logger.debug("flip-flop sweep %d objective %.12g", sweep, objective)
        if start - objective <= cfg.tol * max(abs(start), np.finfo(float).tiny):
            break

    factors = NoiseFactors(r_rows, r_cols)
    return FiberPoint(
        z_star=scale(matrix, factors),
        factors=factors,
        objective=objective,
        history=history,
    )
