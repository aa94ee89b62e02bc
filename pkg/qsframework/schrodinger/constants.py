from enum import Enum
from math import inf
from numbers import Number

from qsframework.core.exceptions import OutOfRangeException, WrongStrictTypeException


def _count(value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise WrongStrictTypeException(int.__name__, type(value).__name__)
    if value < minimum:
        raise OutOfRangeException(minimum, inf, value)
    return value


def _tolerance(value) -> Number:
    if not isinstance(value, Number) or not 0.0 < value < 1.0:
        raise OutOfRangeException(0.0, 1.0, value)
    return value


class EigenConstants:
    def __init__(self,
                 residual_tolerance: Number = 1e-8,
                 max_iterations: int = 10000):
        """
        :param residual_tolerance: Largest accepted |H psi - E psi| / (|H| |psi|).
        :param max_iterations: Iteration cap of the sparse eigensolver.
        """
        self.residual_tolerance = residual_tolerance
        self.max_iterations = max_iterations

    @property
    def residual_tolerance(self) -> Number:
        """
        :return: Largest accepted relative eigen residual.
        """
        return self._residual_tolerance

    @residual_tolerance.setter
    def residual_tolerance(self, value: Number):
        """
        :param value: Float in range (0, 1).
        :raises:
            OutOfRangeException: If value is not in range (0, 1).
        """
        self._residual_tolerance = _tolerance(value)

    @property
    def max_iterations(self) -> int:
        return self._max_iterations

    @max_iterations.setter
    def max_iterations(self, value: int):
        self._max_iterations = _count(value, 1)


class EvolutionConstants:
    class Solver(Enum):
        ITERATIVE = "iterative"
        FACTORIZED = "factorized"

    def __init__(self,
                 solver: 'EvolutionConstants.Solver' = Solver.ITERATIVE,
                 solver_tolerance: Number = 1e-12,
                 max_iterations: int = 1000,
                 norm_tolerance: Number = 1e-6,
                 snapshot_stride: int = 1):
        """
        :param solver: Linear solver of the implicit step.
        :param solver_tolerance: Relative residual of every linear solve.
        :param max_iterations: Iteration cap of every iterative solve.
        :param norm_tolerance: Largest norm deviation from the initial state before the evolution aborts.
        :param snapshot_stride: Every snapshot_stride-th state is stored.
        """
        self.solver = solver
        self.solver_tolerance = solver_tolerance
        self.max_iterations = max_iterations
        self.norm_tolerance = norm_tolerance
        self.snapshot_stride = snapshot_stride

    @property
    def solver(self) -> 'EvolutionConstants.Solver':
        return self._solver

    @solver.setter
    def solver(self, value: 'EvolutionConstants.Solver'):
        if not isinstance(value, EvolutionConstants.Solver):
            raise WrongStrictTypeException(EvolutionConstants.Solver.__name__, type(value).__name__)
        self._solver = value

    @property
    def solver_tolerance(self) -> Number:
        """
        :return: Relative residual of every linear solve.
        """
        return self._solver_tolerance

    @solver_tolerance.setter
    def solver_tolerance(self, value: Number):
        self._solver_tolerance = _tolerance(value)

    @property
    def max_iterations(self) -> int:
        return self._max_iterations

    @max_iterations.setter
    def max_iterations(self, value: int):
        self._max_iterations = _count(value, 1)

    @property
    def norm_tolerance(self) -> Number:
        """
        :return: Norm deviation at which an evolution is declared unstable.
        """
        return self._norm_tolerance

    @norm_tolerance.setter
    def norm_tolerance(self, value: Number):
        self._norm_tolerance = _tolerance(value)

    @property
    def snapshot_stride(self) -> int:
        return self._snapshot_stride

    @snapshot_stride.setter
    def snapshot_stride(self, value: int):
        """
        :raises:
            WrongStrictTypeException: If value is not an int.
            OutOfRangeException: If value is smaller than 1.
        """
        self._snapshot_stride = _count(value, 1)
