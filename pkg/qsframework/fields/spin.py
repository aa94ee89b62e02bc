from numbers import Number
from typing import Tuple

import numpy as np

from qsframework.core.exceptions import DimensionException, OutOfRangeException
from .differencing import gradient
from .field import ScalarField, VectorField
from .velocities import DENSITY_FLOOR, _floored

# tolerance of |s| = 1
UNIT_TOLERANCE = 1e-12


class SpinAxis:
    """
    Direction of the internal spinning motion, a uniform unit 3-vector.
    """

    def __init__(self, direction, normalize: bool = False):
        """
        :param direction: A 3-vector.
        :param normalize: Whether direction is rescaled to unit length first.
        :raises:
            OutOfRangeException: If direction is not a unit 3-vector.
        """
        direction = np.array(direction, dtype=float)
        if direction.shape != (3,):
            raise OutOfRangeException(3, 3, direction.size)
        norm = np.linalg.norm(direction)
        if normalize and norm > 0:
            direction = direction / norm
            norm = np.linalg.norm(direction)
        if abs(norm - 1.0) > UNIT_TOLERANCE:
            raise OutOfRangeException(1.0 - UNIT_TOLERANCE, 1.0 + UNIT_TOLERANCE, norm)
        direction.flags.writeable = False
        self._direction = direction

    @property
    def direction(self) -> np.ndarray:
        return self._direction

    def __neg__(self) -> 'SpinAxis':
        return SpinAxis(-self._direction)


def _log_gradient(rho: ScalarField, floor: float) -> np.ndarray:
    if rho.grid.ndim != 3:
        raise DimensionException(3, rho.grid.ndim)
    return gradient(rho.values, rho.grid) / _floored(rho.values, floor)[..., np.newaxis]


def spin_drift(rho: ScalarField,
               axis: SpinAxis,
               m: Number,
               hbar: Number,
               beta: Number = None,
               floor: float = DENSITY_FLOOR) -> Tuple[VectorField, VectorField]:
    """
    b = beta (grad rho / rho) x s and b* = beta (grad rho / rho) x (-s).

    :param rho: Density on a 3-D grid.
    :param axis: Spin direction s.
    :param m: Mass.
    :param hbar: Reduced Planck constant.
    :param beta: Prefactor, hbar/2m if None.
    :param floor: Relative density floor.
    :return: The spin drifts b and b*.
    :raises:
        DimensionException: If the grid is not 3-D.
    """
    beta = hbar / (2.0 * m) if beta is None else beta
    forward = beta * np.cross(_log_gradient(rho, floor), axis.direction)
    return VectorField(rho.grid, forward, 'b'), VectorField(rho.grid, -forward, 'b*')


def spin_current_density(rho: ScalarField,
                         axis: SpinAxis,
                         v: VectorField,
                         m: Number,
                         hbar: Number,
                         sign: int = 1,
                         floor: float = DENSITY_FLOOR) -> VectorField:
    """
    J = [sign (grad rho / (m rho)) x s + v] rho with s = (hbar/2) axis.

    :param sign: +1 or -1.
    :raises:
        DimensionException: If the grid is not 3-D.
        OutOfRangeException: If sign is not +1 or -1.
    """
    if sign not in (1, -1):
        raise OutOfRangeException(-1, 1, sign)
    rho.check_grid(v, 'v')
    spin = 0.5 * hbar * axis.direction
    velocity = sign * np.cross(_log_gradient(rho, floor) / m, spin) + v.values
    return VectorField(rho.grid, velocity * rho.values[..., np.newaxis], 'J')


def clifford_identity_residual(g, s) -> float:
    """
    :return: |(g x s)^2 - g^2 s^2|, zero whenever g and s are perpendicular.
    """
    g = np.asarray(g, dtype=float)
    s = np.asarray(s, dtype=float)
    cross = np.cross(g, s)
    return float(abs(np.dot(cross, cross) - np.dot(g, g) * np.dot(s, s)))
