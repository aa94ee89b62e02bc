import logging
from dataclasses import dataclass
from numbers import Number
from typing import List

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh_tridiagonal
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh, splu

from qsframework.core.exceptions import OutOfRangeException, SolverConvergenceException, WrongStrictTypeException
from qsframework.fields.wavefunction import WaveFunction
from .constants import EigenConstants
from .hamiltonian import Hamiltonian, HamiltonianSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EigenSolution:
    energy: float
    psi: WaveFunction
    iterations: int
    residual_norm: float


def _is_tridiagonal(hamiltonian: Hamiltonian) -> bool:
    grid = hamiltonian.grid
    return grid.ndim == 1 and not grid.is_periodic and hamiltonian.is_real


def _tridiagonal(hamiltonian: Hamiltonian, k: int):
    matrix = hamiltonian.matrix
    energies, vectors = eigh_tridiagonal(matrix.diagonal(), matrix.diagonal(1), select='i',
                                         select_range=(0, k - 1))
    return energies, vectors, 1


def _shift_invert(hamiltonian: Hamiltonian, k: int, constants: EigenConstants):
    """
    Lanczos iteration on (H - sigma)^-1 with sigma below the spectrum, so the largest eigenvalues of the
    inverse are the lowest of H.
    """
    matrix = hamiltonian.matrix
    grid = hamiltonian.grid
    kinetic_scale = hamiltonian.hbar ** 2 / (2.0 * hamiltonian.mass * min(grid.spacing) ** 2)
    lowest = float(np.min(hamiltonian.potential_diagonal)) + hamiltonian.shift
    sigma = lowest - 1e-2 * (abs(lowest) + kinetic_scale)

    factorization = splu(sp.csc_matrix(matrix - sigma * sp.identity(matrix.shape[0])))
    applications = [0]

    def solve(vector):
        applications[0] += 1
        return factorization.solve(np.asarray(vector, dtype=matrix.dtype).ravel())

    inverse = LinearOperator(matrix.shape, matvec=solve, dtype=matrix.dtype)
    try:
        energies, vectors = eigsh(matrix, k=k, sigma=sigma, OPinv=inverse, which='LM',
                                  maxiter=constants.max_iterations, tol=0.0)
    except ArpackNoConvergence as error:
        history = [float(np.linalg.norm(matrix @ v - e * v)) for e, v in zip(error.eigenvalues,
                                                                             error.eigenvectors.T)]
        raise SolverConvergenceException(f"eigsh found {len(error.eigenvalues)} of {k} eigenpairs", history)
    order = np.argsort(energies)
    return energies[order], vectors[:, order], applications[0]


def _phase_fixed(vector: np.ndarray) -> np.ndarray:
    # largest component real and positive
    peak = vector[np.argmax(np.abs(vector))]
    return vector * (abs(peak) / peak)


def solve_stationary(spec: HamiltonianSpec, mass: Number, hbar: Number, k: int = 1,
                     constants: EigenConstants = None) -> List[EigenSolution]:
    """
    Lowest k eigenpairs of H. Non-periodic 1-D and radial problems without a vector potential use a
    symmetric tridiagonal solver, all others shift-invert Lanczos iteration.

    :param spec: The Hamiltonian terms. E_k and the coupling integral are included in the energies.
    :param mass: Particle mass.
    :param hbar: Reduced Planck constant.
    :param k: Number of eigenpairs.
    :param constants: Solver constants, defaults if None.
    :return: Eigen solutions sorted by ascending energy.
    :raises:
        SolverConvergenceException: If the iteration does not converge or a residual exceeds its tolerance.
    """
    if isinstance(k, bool) or not isinstance(k, int):
        raise WrongStrictTypeException(int.__name__, type(k).__name__)
    constants = EigenConstants() if constants is None else constants
    hamiltonian = Hamiltonian(spec, mass, hbar)
    if not 1 <= k < spec.grid.size:
        raise OutOfRangeException(1, spec.grid.size - 1, k)

    if _is_tridiagonal(hamiltonian):
        energies, vectors, iterations = _tridiagonal(hamiltonian, k)
    else:
        energies, vectors, iterations = _shift_invert(hamiltonian, k, constants)

    matrix = hamiltonian.matrix
    scale = hamiltonian.infinity_norm()
    solutions, residuals = [], []
    for energy, vector in zip(energies, vectors.T):
        vector = _phase_fixed(vector)
        residual = float(np.linalg.norm(matrix @ vector - energy * vector) / (scale * np.linalg.norm(vector)))
        residuals.append(residual)
        psi = WaveFunction.normalized(spec.grid, hamiltonian.from_reduced(vector), mass, hbar)
        solutions.append(EigenSolution(float(energy), psi, iterations, residual))

    if max(residuals) > constants.residual_tolerance:
        raise SolverConvergenceException(f"eigen residual {max(residuals)!r} above "
                                         f"{constants.residual_tolerance!r}", residuals)
    logger.info("found %d eigenpairs after %d iterations, lowest energy %.12g", k, iterations, energies[0])
    return solutions
