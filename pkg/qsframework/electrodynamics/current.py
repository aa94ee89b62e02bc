"""
Transition currents J = [2u + (v' - v)] rho_e of a particle moving between two states.
"""
from dataclasses import dataclass
from numbers import Number
from typing import Union

import numpy as np

from qsframework.core.exceptions import DimensionException, GridMismatchException, NormalizationException, \
    OutOfRangeException
from qsframework.fields.field import ScalarField, VectorField

# relative tolerance of the integrated charge
CHARGE_TOLERANCE = 1e-6


def _velocity_values(delta_v: Union[VectorField, np.ndarray], grid) -> np.ndarray:
    if isinstance(delta_v, VectorField):
        if delta_v.grid != grid:
            raise GridMismatchException('dv', 'rho_e')
        return delta_v.values
    vector = np.asarray(delta_v, dtype=float)
    if vector.shape != (grid.ndim,):
        raise DimensionException(grid.ndim, vector.size)
    return np.broadcast_to(vector, grid.shape + (grid.ndim,))


def transition_current(rho_e: ScalarField, u: VectorField, delta_v: Union[VectorField, np.ndarray]) -> VectorField:
    """
    :param rho_e: Charge density.
    :param u: Osmotic velocity.
    :param delta_v: Velocity change v' - v of the quantum-sized volume, a field or a uniform vector.
    :return: J = [2u + delta_v] rho_e.
    :raises:
        GridMismatchException: If the fields live on different grids.
        DimensionException: If a uniform delta_v has the wrong length.
    """
    rho_e.check_grid(u, 'u')
    velocity = 2.0 * u.values + _velocity_values(delta_v, rho_e.grid)
    return VectorField(rho_e.grid, velocity * rho_e.values[..., np.newaxis], 'J')


@dataclass(frozen=True)
class TransitionCurrent:
    rho_e: ScalarField
    delta_v: Union[VectorField, np.ndarray]
    u: VectorField

    def __post_init__(self):
        self.rho_e.check_grid(self.u, 'u')
        _velocity_values(self.delta_v, self.rho_e.grid)

    @property
    def charge(self) -> float:
        return float(self.rho_e.integral())

    def check_charge(self, q: Number, tolerance: float = CHARGE_TOLERANCE) -> None:
        """
        :raises:
            NormalizationException: If rho_e does not integrate to q.
        """
        if abs(self.charge - q) > tolerance * abs(q):
            raise NormalizationException(self.charge / q, tolerance)

    def density(self) -> VectorField:
        return transition_current(self.rho_e, self.u, self.delta_v)


def four_current(rho_e: ScalarField, current: VectorField, c: Number) -> VectorField:
    """
    :return: The four-current (c rho_e, J) as a field with ndim + 1 components.
    :raises:
        OutOfRangeException: If c is not positive.
    """
    if not c > 0:
        raise OutOfRangeException(0.0, np.inf, c)
    rho_e.check_grid(current, 'J')
    values = np.concatenate([c * rho_e.values[..., np.newaxis], current.values], axis=-1)
    return VectorField(rho_e.grid, values, 'J4')
