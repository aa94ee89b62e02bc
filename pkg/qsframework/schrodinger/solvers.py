from abc import ABC, abstractmethod
from numbers import Number

import numpy as np
import scipy.sparse as sp
from overrides import overrides
from scipy.sparse.linalg import bicgstab, splu

from qsframework.core.exceptions import OutOfRangeException, SolverConvergenceException


class ILinearSolver(ABC):
    """
    Interface. An ILinearSolver solves A x = b for a matrix fixed by prepare.
    """

    @abstractmethod
    def prepare(self, matrix: sp.spmatrix) -> None:
        """
        :param matrix: The sparse system matrix used by the following solves.
        """
        pass

    @abstractmethod
    def solve(self, rhs: np.ndarray, guess: np.ndarray = None) -> np.ndarray:
        """
        :param rhs: Right-hand side.
        :param guess: Optional start vector.
        :return: The solution.
        :raises:
            SolverConvergenceException: If the solve does not reach its tolerance.
        """
        pass


class IterativeSolver(ILinearSolver):
    """
    BiCGSTAB with a relative residual tolerance.
    """

    def __init__(self, tolerance: Number = 1e-12, max_iterations: int = 1000):
        if not 0.0 < tolerance < 1.0:
            raise OutOfRangeException(0.0, 1.0, tolerance)
        if max_iterations < 1:
            raise OutOfRangeException(1, np.inf, max_iterations)
        self._tolerance = tolerance
        self._max_iterations = max_iterations
        self._matrix = None
        self.iterations = 0

    @overrides
    def prepare(self, matrix: sp.spmatrix) -> None:
        self._matrix = sp.csr_matrix(matrix)

    @overrides
    def solve(self, rhs: np.ndarray, guess: np.ndarray = None) -> np.ndarray:
        history = []
        scale = np.linalg.norm(rhs)
        if scale == 0.0:
            return np.zeros_like(rhs)

        def record(xk):
            history.append(float(np.linalg.norm(rhs - self._matrix @ xk) / scale))

        solution, info = bicgstab(self._matrix, rhs, x0=guess, rtol=self._tolerance, atol=0.0,
                                  maxiter=self._max_iterations, callback=record)
        self.iterations = len(history)
        if info != 0:
            raise SolverConvergenceException(f"bicgstab returned {info} after {len(history)} iterations", history)
        return solution


class FactorizedSolver(ILinearSolver):
    """
    Sparse LU factorization, computed once per prepare and reused by every solve.
    """

    def __init__(self):
        self._factorization = None

    @overrides
    def prepare(self, matrix: sp.spmatrix) -> None:
        self._factorization = splu(sp.csc_matrix(matrix))

    @overrides
    def solve(self, rhs: np.ndarray, guess: np.ndarray = None) -> np.ndarray:
        solution = self._factorization.solve(rhs)
        if not np.all(np.isfinite(solution)):
            raise SolverConvergenceException("factorized solve produced non-finite values")
        return solution
