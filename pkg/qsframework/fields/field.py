from dataclasses import dataclass
from numbers import Number
from typing import Union

import numpy as np

from qsframework.core.exceptions import GridMismatchException, NonFiniteValueException, OutOfRangeException, \
    WrongSubTypeException
from .grid import Grid


class Field:
    """
    Immutable node values on a grid. The leading axes of values have the grid shape.
    """

    def __init__(self, grid: Grid, values: np.ndarray, name: str = 'field'):
        if not isinstance(grid, Grid):
            raise WrongSubTypeException(Grid.__name__, type(grid).__name__)
        values = np.array(values, dtype=float)
        if values.shape[:grid.ndim] != grid.shape:
            raise OutOfRangeException(grid.shape, grid.shape, values.shape)
        non_finite = int(np.count_nonzero(~np.isfinite(values)))
        if non_finite > 0:
            raise NonFiniteValueException(name, non_finite)
        values.flags.writeable = False
        self._grid = grid
        self._values = values

    @property
    def grid(self) -> Grid:
        return self._grid

    @property
    def values(self) -> np.ndarray:
        return self._values

    def integral(self) -> Union[float, np.ndarray]:
        """
        :return: Weighted sum of the values over the grid.
        """
        return self._grid.integrate(self._values)

    def check_grid(self, other: 'Field', name: str = 'other') -> None:
        """
        :raises:
            GridMismatchException: If other lives on a different grid.
        """
        if self._grid != other.grid:
            raise GridMismatchException(type(self).__name__, name)

    def _new(self, values: np.ndarray) -> 'Field':
        return type(self)(self._grid, values)

    def _operand(self, other) -> np.ndarray:
        if isinstance(other, Field):
            self.check_grid(other)
            return other.values
        return other

    def __add__(self, other) -> 'Field':
        return self._new(self._values + self._operand(other))

    def __sub__(self, other) -> 'Field':
        return self._new(self._values - self._operand(other))

    def __mul__(self, other: Number) -> 'Field':
        return self._new(self._values * other)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> 'Field':
        return self._new(self._values / other)

    def __neg__(self) -> 'Field':
        return self._new(-self._values)


class ScalarField(Field):
    """
    One real number per node.
    """

    def __init__(self, grid: Grid, values: np.ndarray, name: str = 'scalar field'):
        super().__init__(grid, values, name)
        if self._values.shape != grid.shape:
            raise OutOfRangeException(grid.shape, grid.shape, self._values.shape)

    @classmethod
    def from_function(cls, grid: Grid, function) -> 'ScalarField':
        """
        :param function: Called with one coordinate array per axis.
        """
        return cls(grid, np.broadcast_to(function(*grid.mesh()), grid.shape))

    @classmethod
    def constant(cls, grid: Grid, value: Number) -> 'ScalarField':
        return cls(grid, np.full(grid.shape, float(value)))


class VectorField(Field):
    """
    One real vector per node. The component count defaults to the grid dimension.
    """

    def __init__(self, grid: Grid, values: np.ndarray, name: str = 'vector field'):
        super().__init__(grid, values, name)
        if self._values.ndim != grid.ndim + 1:
            raise OutOfRangeException(grid.ndim + 1, grid.ndim + 1, self._values.ndim)

    @property
    def components(self) -> int:
        return self._values.shape[-1]

    @classmethod
    def uniform(cls, grid: Grid, vector) -> 'VectorField':
        vector = np.asarray(vector, dtype=float)
        return cls(grid, np.broadcast_to(vector, grid.shape + vector.shape))

    @classmethod
    def zeros(cls, grid: Grid, components: int = None) -> 'VectorField':
        components = grid.ndim if components is None else components
        return cls(grid, np.zeros(grid.shape + (components,)))

    @classmethod
    def from_function(cls, grid: Grid, function) -> 'VectorField':
        """
        :param function: Called with one coordinate array per axis, returns one array per component.
        """
        return cls(grid, np.stack(np.broadcast_arrays(*function(*grid.mesh())), axis=-1))

    def magnitude(self) -> ScalarField:
        return ScalarField(self._grid, np.linalg.norm(self._values, axis=-1))

    def dot(self, other: 'VectorField') -> ScalarField:
        self.check_grid(other)
        return ScalarField(self._grid, np.sum(self._values * other.values, axis=-1))


@dataclass(frozen=True)
class FieldPair:
    """
    Two time slices of the same field, dt apart.
    A static pair holds the same slice twice and has a zero time derivative.
    """
    before: Field
    after: Field
    dt: float = 1.0

    def __post_init__(self):
        self.before.check_grid(self.after, 'after')
        if self.before.values.shape != self.after.values.shape:
            raise OutOfRangeException(self.before.values.shape, self.before.values.shape, self.after.values.shape)
        if not self.dt > 0:
            raise OutOfRangeException(0.0, np.inf, self.dt)

    @classmethod
    def static(cls, field: Field) -> 'FieldPair':
        return cls(field, field, 1.0)

    @classmethod
    def of(cls, field: Union[Field, 'FieldPair']) -> 'FieldPair':
        return field if isinstance(field, FieldPair) else cls.static(field)

    @property
    def grid(self) -> Grid:
        return self.before.grid

    def time_derivative(self) -> np.ndarray:
        return (self.after.values - self.before.values) / self.dt

    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.before.values + self.after.values)
