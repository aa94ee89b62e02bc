from abc import ABC, abstractmethod
from typing import Callable, Union

import numpy as np
from overrides import overrides
from scipy.interpolate import RegularGridInterpolator

from qsframework.core.exceptions import DimensionException, WrongSubTypeException
from qsframework.fields.field import VectorField


class IDrift(ABC):
    """
    Interface. An IDrift supplies the drift velocity of every path at a given time.
    """

    @abstractmethod
    def evaluate(self, positions: np.ndarray, t: float) -> np.ndarray:
        """
        :param positions: Path positions with shape (n, dim).
        :param t: Current time.
        :return: Drift velocities with shape (n, dim).
        """
        pass


class ZeroDrift(IDrift):
    """
    Free diffusion.
    """

    @overrides
    def evaluate(self, positions: np.ndarray, t: float) -> np.ndarray:
        return np.zeros_like(positions)


class CallableDrift(IDrift):
    """
    Wraps a function (positions, t) -> drift.
    """

    def __init__(self, function: Callable[[np.ndarray, float], np.ndarray]):
        self._function = function

    @overrides
    def evaluate(self, positions: np.ndarray, t: float) -> np.ndarray:
        return np.asarray(self._function(positions, t), dtype=float).reshape(positions.shape)


class FieldDrift(IDrift):
    """
    Linear interpolation of a static drift field on a cartesian grid.
    Positions outside the grid are extrapolated, periodic grids are wrapped.
    """

    def __init__(self, field: VectorField):
        """
        :raises:
            DimensionException: If the field is radial or its component count differs from the grid dimension.
        """
        grid = field.grid
        if grid.is_radial or field.components != grid.ndim:
            raise DimensionException(grid.ndim, field.components)
        axes = grid.axes()
        values = field.values
        if grid.is_periodic:
            # repeat the first node one period further so the seam is interpolated too
            axes = [np.append(axis, axis[0] + length) for axis, length in zip(axes, grid.lengths())]
            values = np.pad(values, [(0, 1)] * grid.ndim + [(0, 0)], mode='wrap')
        self._grid = grid
        self._interpolator = RegularGridInterpolator(axes, values, method='linear', bounds_error=False,
                                                     fill_value=None)

    @overrides
    def evaluate(self, positions: np.ndarray, t: float) -> np.ndarray:
        if self._grid.is_periodic:
            origin = np.asarray(self._grid.origin)
            positions = origin + np.mod(positions - origin, np.asarray(self._grid.lengths()))
        return self._interpolator(positions)


class ForcedDrift(IDrift):
    """
    Adds the external force contribution F / xi to another drift.
    """

    def __init__(self, drift: IDrift, force: Callable[[np.ndarray, float], np.ndarray], xi: float):
        self._drift = drift
        self._force = force
        self._xi = xi

    @overrides
    def evaluate(self, positions: np.ndarray, t: float) -> np.ndarray:
        force = np.asarray(self._force(positions, t), dtype=float).reshape(positions.shape)
        return self._drift.evaluate(positions, t) + force / self._xi


def as_drift(drift: Union[IDrift, VectorField, Callable, None]) -> IDrift:
    """
    :return: An IDrift for None, a VectorField, a callable or an IDrift.
    :raises:
        WrongSubTypeException: For any other type.
    """
    if drift is None:
        return ZeroDrift()
    if isinstance(drift, IDrift):
        return drift
    if isinstance(drift, VectorField):
        return FieldDrift(drift)
    if callable(drift):
        return CallableDrift(drift)
    raise WrongSubTypeException(IDrift.__name__, type(drift).__name__)
