from numbers import Number
from math import inf
from typing import Callable, Optional

import numpy as np

from qsframework.core.exceptions import OutOfRangeException, WrongStrictTypeException

# signature of an external force: (positions (n, dim), t) -> forces (n, dim)
ForceCallback = Callable[[np.ndarray, float], np.ndarray]

MAX_SEED = 2 ** 64 - 1


def _integer(value, min_val: int, max_val=inf) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise WrongStrictTypeException(int.__name__, type(value).__name__)
    if value < min_val or value > max_val:
        raise OutOfRangeException(min_val, max_val, value)
    return int(value)


def _number(value, min_val: float, strict: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, Number):
        raise WrongStrictTypeException(Number.__name__, type(value).__name__)
    if value < min_val or (strict and value == min_val):
        raise OutOfRangeException(min_val, inf, value)
    return float(value)


class StepperConfig:
    """
    Parameters of an Euler-Maruyama ensemble run.
    """

    def __init__(self,
                 dt: Number = 1e-3,
                 n_steps: int = 1000,
                 n_paths: int = 1000,
                 beta: Number = 0.5,
                 master_seed: int = 0,
                 mass: Number = 1.0,
                 xi: Number = 0.0,
                 dim: int = 1,
                 record_stride: int = 1,
                 external_force: Optional[ForceCallback] = None):
        """
        :param dt: Time step, positive.
        :param n_steps: Number of steps, zero keeps every path at its initial position.
        :param n_paths: Number of paths, at least 1.
        :param beta: Diffusion constant, the noise variance per axis and step is 2 beta dt.
        :param master_seed: 64-bit seed every path stream is derived from.
        :param mass: Particle mass.
        :param xi: Friction coefficient.
        :param dim: Spatial dimension of the paths, 1 to 3.
        :param record_stride: Positions are stored every record_stride steps.
        :param external_force: Optional force, enters the drift as F / xi and therefore requires xi > 0.
        """
        self.dt = dt
        self.n_steps = n_steps
        self.n_paths = n_paths
        self.beta = beta
        self.master_seed = master_seed
        self.mass = mass
        self.xi = xi
        self.dim = dim
        self.record_stride = record_stride
        self.external_force = external_force

    @property
    def dt(self) -> float:
        """
        :return: Time step.
        """
        return self._dt

    @dt.setter
    def dt(self, value: Number):
        """
        :param value: Float in range (0, inf].
        :raises:
            OutOfRangeException: If value is not positive.
        """
        self._dt = _number(value, 0.0, strict=True)

    @property
    def n_steps(self) -> int:
        return self._n_steps

    @n_steps.setter
    def n_steps(self, value: int):
        self._n_steps = _integer(value, 0)

    @property
    def n_paths(self) -> int:
        return self._n_paths

    @n_paths.setter
    def n_paths(self, value: int):
        self._n_paths = _integer(value, 1)

    @property
    def beta(self) -> float:
        """
        :return: Diffusion constant.
        """
        return self._beta

    @beta.setter
    def beta(self, value: Number):
        self._beta = _number(value, 0.0)

    @property
    def master_seed(self) -> int:
        return self._master_seed

    @master_seed.setter
    def master_seed(self, value: int):
        self._master_seed = _integer(value, 0, MAX_SEED)

    @property
    def mass(self) -> float:
        return self._mass

    @mass.setter
    def mass(self, value: Number):
        self._mass = _number(value, 0.0, strict=True)

    @property
    def xi(self) -> float:
        """
        :return: Friction coefficient.
        """
        return self._xi

    @xi.setter
    def xi(self, value: Number):
        self._xi = _number(value, 0.0)

    @property
    def dim(self) -> int:
        return self._dim

    @dim.setter
    def dim(self, value: int):
        self._dim = _integer(value, 1, 3)

    @property
    def record_stride(self) -> int:
        return self._record_stride

    @record_stride.setter
    def record_stride(self, value: int):
        self._record_stride = _integer(value, 1)

    @property
    def external_force(self) -> Optional[ForceCallback]:
        return self._external_force

    @external_force.setter
    def external_force(self, value: Optional[ForceCallback]):
        """
        :raises:
            WrongStrictTypeException: If value is neither None nor callable.
            OutOfRangeException: If a force is given while xi is zero.
        """
        if value is not None and not callable(value):
            raise WrongStrictTypeException('callable', type(value).__name__)
        if value is not None and not self._xi > 0:
            raise OutOfRangeException(0.0, inf, self._xi)
        self._external_force = value

    def sample_steps(self) -> np.ndarray:
        """
        :return: Indices of the recorded steps.
        """
        return np.arange(0, self._n_steps + 1, self._record_stride)

    def to_dict(self) -> dict:
        return {
            'dt': self._dt,
            'n_steps': self._n_steps,
            'n_paths': self._n_paths,
            'beta': self._beta,
            'master_seed': self._master_seed,
            'mass': self._mass,
            'xi': self._xi,
            'dim': self._dim,
            'record_stride': self._record_stride,
            'external_force': self._external_force is not None,
        }
