"""
Explicit Euler steps of the forward and backward Fokker-Planck equations

    forward:  drho/dt = -div[(b + v) rho] + beta lap(rho)
    backward: drho/dt = -div[(b* + v) rho] - beta lap(rho)

The backward equation is anti-diffusive. It is only stepped once at a time for round trip checks.
"""
import logging
from numbers import Number
from typing import Tuple

import numpy as np

from qsframework.core.exceptions import NegativeDensityException, OutOfRangeException, StabilityBoundException
from qsframework.fields.field import ScalarField
from .constants import FPConstants
from .state import FPState

logger = logging.getLogger(__name__)


def stability_bound(state: FPState, safety_factor: Number = 0.9) -> float:
    """
    safety_factor * min(h^2 / (2 dim beta), h / max|drift|) with the smallest spacing h.
    Radial grids count as three dimensional.

    :return: The largest admissible time step, inf without diffusion and drift.
    """
    grid = state.grid
    h = min(grid.spacing)
    dim = 3 if grid.is_radial else grid.ndim
    diffusive = h * h / (2.0 * dim * state.beta) if state.beta > 0 else np.inf
    speed = float(np.max(np.linalg.norm(state.drift.values, axis=-1)))
    advective = h / speed if speed > 0 else np.inf
    return safety_factor * min(diffusive, advective)


def _clip(values: np.ndarray, state: FPState, limit: float) -> Tuple[np.ndarray, int]:
    negative = values < 0
    count = int(np.count_nonzero(negative))
    if count == 0:
        return values, 0
    grid = state.grid
    clipped = float(grid.integrate(np.where(negative, -values, 0.0)))
    total = float(grid.integrate(np.where(negative, 0.0, values)))
    if clipped > limit * total:
        raise NegativeDensityException(clipped / total if total > 0 else np.inf, limit)
    logger.info("clipped %d negative nodes holding %.3g of the probability at t = %g", count, clipped, state.t)
    return np.where(negative, 0.0, values), count


def _step(state: FPState, dt: Number, sign: float, constants: FPConstants) -> FPState:
    if not dt > 0:
        raise OutOfRangeException(0.0, np.inf, dt)
    bound = stability_bound(state, constants.safety_factor)
    if dt > bound:
        raise StabilityBoundException(dt, bound)

    grid = state.grid
    rate = constants.discretization.rhs(state.rho.values, state.drift.values, sign * state.beta, grid)
    values, clipped = _clip(state.rho.values + dt * rate, state, constants.clip_limit)
    return FPState(ScalarField(grid, values, 'rho'), state.drift, state.beta, state.t + dt, clipped)


def fp_forward_step(state: FPState, dt: Number, constants: FPConstants = None) -> FPState:
    """
    :param state: Density with the forward drift b + v.
    :param dt: Time step within stability_bound.
    :param constants: Step constants, defaults if None.
    :return: The state at t + dt.
    :raises:
        StabilityBoundException: If dt exceeds the stability bound.
        NegativeDensityException: If clipping would remove more than the allowed probability.
    """
    return _step(state, dt, 1.0, FPConstants() if constants is None else constants)


def fp_backward_step(state: FPState, dt: Number, constants: FPConstants = None) -> FPState:
    """
    :param state: Density with the backward drift b* + v.
    :param dt: Time step within stability_bound.
    :param constants: Step constants, defaults if None.
    :return: The state at t + dt.
    :raises:
        StabilityBoundException: If dt exceeds the stability bound.
        NegativeDensityException: If clipping would remove more than the allowed probability.
    """
    return _step(state, dt, -1.0, FPConstants() if constants is None else constants)
