from numbers import Number

import numpy as np

from qsframework.core.exceptions import NormalizationException, NonFiniteValueException, OutOfRangeException, \
    WrongSubTypeException
from .grid import Grid

# tolerance of sum |psi|^2 w = 1
NORMALIZATION_TOLERANCE = 1e-9


class WaveFunction:
    """
    Complex amplitudes on a grid together with the particle mass and hbar.
    """

    def __init__(self, grid: Grid, amplitudes: np.ndarray, mass: Number, hbar: Number, check: bool = True):
        """
        :param grid: The grid.
        :param amplitudes: One complex amplitude per node.
        :param mass: Particle mass.
        :param hbar: Reduced Planck constant in the units of the grid.
        :param check: Whether the normalization is enforced.
        :raises:
            NormalizationException: If check is set and the amplitudes are not normalized.
            NonFiniteValueException: If an amplitude is not finite.
        """
        if not isinstance(grid, Grid):
            raise WrongSubTypeException(Grid.__name__, type(grid).__name__)
        amplitudes = np.array(amplitudes, dtype=complex)
        if amplitudes.shape != grid.shape:
            raise OutOfRangeException(grid.shape, grid.shape, amplitudes.shape)
        non_finite = int(np.count_nonzero(~np.isfinite(amplitudes)))
        if non_finite > 0:
            raise NonFiniteValueException('amplitudes', non_finite)
        if not mass > 0:
            raise OutOfRangeException(0.0, np.inf, mass)
        if not hbar > 0:
            raise OutOfRangeException(0.0, np.inf, hbar)
        amplitudes.flags.writeable = False

        self._grid = grid
        self._amplitudes = amplitudes
        self._mass = float(mass)
        self._hbar = float(hbar)
        if check:
            self.check_normalized()

    @classmethod
    def normalized(cls, grid: Grid, amplitudes: np.ndarray, mass: Number, hbar: Number) -> 'WaveFunction':
        """
        Rescales the amplitudes to unit norm.
        """
        amplitudes = np.asarray(amplitudes, dtype=complex)
        norm = np.sqrt(grid.integrate(np.abs(amplitudes) ** 2))
        return cls(grid, amplitudes / norm, mass, hbar)

    @classmethod
    def from_function(cls, grid: Grid, function, mass: Number, hbar: Number) -> 'WaveFunction':
        return cls.normalized(grid, np.broadcast_to(function(*grid.mesh()), grid.shape), mass, hbar)

    @property
    def grid(self) -> Grid:
        return self._grid

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    @property
    def mass(self) -> float:
        return self._mass

    @property
    def hbar(self) -> float:
        return self._hbar

    def norm(self) -> float:
        """
        :return: sum |psi|^2 w over the grid.
        """
        return float(self._grid.integrate(np.abs(self._amplitudes) ** 2))

    def check_normalized(self, tolerance: float = NORMALIZATION_TOLERANCE) -> None:
        """
        :raises:
            NormalizationException: If the norm differs from 1 by more than tolerance.
        """
        total = self.norm()
        if abs(total - 1.0) > tolerance:
            raise NormalizationException(total, tolerance)

    def inner(self, other: 'WaveFunction') -> complex:
        """
        :return: <self|other>.
        """
        return complex(self._grid.integrate(np.conj(self._amplitudes) * other.amplitudes))

    def with_amplitudes(self, amplitudes: np.ndarray, check: bool = False) -> 'WaveFunction':
        return WaveFunction(self._grid, amplitudes, self._mass, self._hbar, check=check)

    def expectation(self, operator) -> complex:
        """
        :param operator: A matrix acting on the flattened amplitudes, or a callable acting on the amplitude array.
        :return: <psi|O|psi>.
        """
        if callable(operator):
            applied = np.asarray(operator(self._amplitudes)).reshape(self._grid.shape)
        else:
            applied = (operator @ self._amplitudes.ravel()).reshape(self._grid.shape)
        return complex(self._grid.integrate(np.conj(self._amplitudes) * applied))
