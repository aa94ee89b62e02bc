"""
Finite-difference Hamiltonians

    H = (p - qA)^2 / 2m + V + q phi + E_k + J

with p = -i hbar grad. The vector potential enters through Peierls phases on the links between neighbouring
nodes, so H stays Hermitian for any A. E_k and the coupling integral J are uniform shifts.

Radial grids are reduced with chi = r psi, which turns the radial Laplacian into a plain second difference
with chi(0) = 0.
"""
from dataclasses import dataclass
from math import pi
from numbers import Number
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import norm as sparse_norm

from qsframework.core.exceptions import DimensionException, GridMismatchException, NoneValueException, \
    OutOfRangeException, WrongSubTypeException
from qsframework.fields.differencing import divergence, laplacian_matrix, second_difference_matrix
from qsframework.fields.field import ScalarField, VectorField
from qsframework.fields.grid import Grid
from qsframework.fields.velocities import current_velocity
from qsframework.fields.wavefunction import WaveFunction


@dataclass(frozen=True)
class HamiltonianSpec:
    """
    Terms of a single particle Hamiltonian. Optional terms are absent when None.

    volume_velocity carries the velocity v of the quantum-sized volume. When it is set, the coupling
    integral is recomputed from the current wave function on every evolution step and the static
    coupling_integral only serves as the value for stationary problems.
    """
    potential: ScalarField
    kinetic_energy: Optional[Number] = None
    coupling_integral: Optional[Number] = None
    volume_velocity: Optional[VectorField] = None
    vector_potential: Optional[VectorField] = None
    scalar_potential: Optional[ScalarField] = None
    charge: Optional[Number] = None

    def __post_init__(self):
        if not isinstance(self.potential, ScalarField):
            raise WrongSubTypeException(ScalarField.__name__, type(self.potential).__name__)
        grid = self.potential.grid
        for other, name in ((self.volume_velocity, 'v'), (self.vector_potential, 'A'),
                            (self.scalar_potential, 'phi')):
            if other is not None:
                self.potential.check_grid(other, name)
        for other, name in ((self.volume_velocity, 'v'), (self.vector_potential, 'A')):
            if other is not None and other.components != grid.ndim:
                raise GridMismatchException(name, 'V')
        if self.vector_potential is not None and grid.is_radial:
            raise DimensionException(3, 1)
        magnetic = self.vector_potential is not None or self.scalar_potential is not None
        if magnetic and self.charge is None:
            raise NoneValueException('charge')
        for value in (self.kinetic_energy, self.coupling_integral, self.charge):
            if value is not None and not np.isfinite(value):
                raise OutOfRangeException(-np.inf, np.inf, value)

    @property
    def grid(self) -> Grid:
        return self.potential.grid

    @property
    def is_magnetic(self) -> bool:
        return self.vector_potential is not None


def coupling_integral(psi: WaveFunction, v: VectorField) -> float:
    """
    Integral of m rho |upsilon| div(v) over the whole grid, with upsilon taken from the current of psi.

    The term enters the Hamiltonian as an energy, so the integrand is read as a density: it is weighted by
    rho and uses the speed |upsilon| in place of the vector upsilon. The unweighted vector form would not
    reduce to a number.
    """
    if psi.grid != v.grid:
        raise GridMismatchException('psi', 'v')
    upsilon = current_velocity(psi).values - v.values
    speed = np.linalg.norm(upsilon, axis=-1)
    rho = np.abs(psi.amplitudes) ** 2
    return float(psi.mass * psi.grid.integrate(rho * speed * divergence(v.values, v.grid)))


def _peierls_kinetic(grid: Grid, scale: float, vector_potential: np.ndarray, charge: float,
                     hbar: float) -> sp.csr_matrix:
    index = np.arange(grid.size).reshape(grid.shape)
    rows, cols, values = [], [], []
    diagonal = np.zeros(grid.shape)

    for axis, (n, h) in enumerate(zip(grid.dims, grid.spacing)):
        component = vector_potential[..., axis]
        if grid.is_periodic:
            left, right = index, np.roll(index, -1, axis=axis)
            face = 0.5 * (component + np.roll(component, -1, axis=axis))
        else:
            lower = [slice(None)] * grid.ndim
            upper = [slice(None)] * grid.ndim
            lower[axis], upper[axis] = slice(0, n - 1), slice(1, n)
            left, right = index[tuple(lower)], index[tuple(upper)]
            face = 0.5 * (component[tuple(lower)] + component[tuple(upper)])
        link = np.exp(-1j * charge * h * face / hbar)
        hop = -scale / h ** 2
        rows += [left.ravel(), right.ravel()]
        cols += [right.ravel(), left.ravel()]
        values += [hop * link.ravel(), hop * np.conj(link).ravel()]

        diagonal += 2.0 * scale / h ** 2
        if grid.boundary == Grid.Boundary.REFLECTING:
            edges = [slice(None)] * grid.ndim
            for end in (0, n - 1):
                edges[axis] = end
                diagonal[tuple(edges)] -= scale / h ** 2

    hopping = sp.coo_matrix((np.concatenate(values), (np.concatenate(rows), np.concatenate(cols))),
                            shape=(grid.size, grid.size))
    return (hopping.tocsr() + sp.diags(diagonal.ravel())).tocsr()


class Hamiltonian:
    """
    The sparse matrix of a HamiltonianSpec acting on reduced vectors: the flattened amplitudes on cartesian
    grids and chi = r psi on radial grids. In both cases the reduced inner product is a uniform weight times
    the plain dot product, so the matrix is Hermitian.
    """

    def __init__(self, spec: HamiltonianSpec, mass: Number, hbar: Number):
        if not mass > 0:
            raise OutOfRangeException(0.0, np.inf, mass)
        if not hbar > 0:
            raise OutOfRangeException(0.0, np.inf, hbar)
        self._spec = spec
        self._mass = float(mass)
        self._hbar = float(hbar)
        grid = spec.grid
        scale = self._hbar ** 2 / (2.0 * self._mass)

        if grid.is_radial:
            n, h = grid.dims[0], grid.spacing[0]
            second = second_difference_matrix(n, h, Grid.Boundary.DIRICHLET_ZERO).tolil()
            if grid.boundary == Grid.Boundary.REFLECTING:
                second[n - 1, n - 1] += 1.0 / h ** 2
            self._kinetic = (-scale * second).tocsr()
            self._radius = grid.axes()[0]
            self._weight = 4.0 * pi * h
        else:
            if spec.vector_potential is None:
                self._kinetic = (-scale * laplacian_matrix(grid)).tocsr()
            else:
                self._kinetic = _peierls_kinetic(grid, scale, spec.vector_potential.values,
                                                 float(spec.charge), self._hbar)
            self._radius = None
            self._weight = grid.cell_volume

        diagonal = np.array(spec.potential.values, dtype=float)
        if spec.scalar_potential is not None:
            diagonal = diagonal + spec.charge * spec.scalar_potential.values
        self._diagonal = diagonal.ravel()
        self._shift = float(spec.kinetic_energy or 0.0) + float(spec.coupling_integral or 0.0)
        self._local = (self._kinetic + sp.diags(self._diagonal)).tocsr()
        self._matrix = self.shifted(0.0)

    @property
    def spec(self) -> HamiltonianSpec:
        return self._spec

    @property
    def grid(self) -> Grid:
        return self._spec.grid

    @property
    def mass(self) -> float:
        return self._mass

    @property
    def hbar(self) -> float:
        return self._hbar

    @property
    def matrix(self) -> sp.csr_matrix:
        return self._matrix

    @property
    def kinetic(self) -> sp.csr_matrix:
        return self._kinetic

    @property
    def local_matrix(self) -> sp.csr_matrix:
        """
        :return: The matrix without the uniform shift E_k + J.
        """
        return self._local

    @property
    def potential_diagonal(self) -> np.ndarray:
        """
        :return: V + q phi per node, without the uniform shifts.
        """
        return self._diagonal

    @property
    def shift(self) -> float:
        """
        :return: The uniform energy E_k + J.
        """
        return self._shift

    @property
    def weight(self) -> float:
        """
        :return: Quadrature weight of the reduced inner product.
        """
        return self._weight

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self._kinetic.data)

    def shifted(self, coupling: Number) -> sp.csr_matrix:
        """
        :param coupling: Additional uniform energy, e.g. a recomputed coupling integral.
        :return: The matrix with the given extra diagonal shift.
        """
        return (self._local + (self._shift + coupling) * sp.identity(self._local.shape[0], format='csr')).tocsr()

    def infinity_norm(self) -> float:
        return float(sparse_norm(self._matrix, np.inf))

    def to_reduced(self, amplitudes: np.ndarray) -> np.ndarray:
        values = np.asarray(amplitudes).ravel()
        return values * self._radius if self._radius is not None else values.copy()

    def from_reduced(self, vector: np.ndarray) -> np.ndarray:
        values = vector / self._radius if self._radius is not None else vector
        return np.asarray(values).reshape(self.grid.shape)

    def apply(self, psi: WaveFunction) -> np.ndarray:
        """
        :return: H psi as an amplitude array of grid shape.
        """
        return self.from_reduced(self._matrix @ self.to_reduced(psi.amplitudes))

    def energy(self, psi: WaveFunction) -> float:
        """
        :return: <psi|H|psi>.
        """
        reduced = self.to_reduced(psi.amplitudes)
        return float(np.real(self._weight * np.vdot(reduced, self._matrix @ reduced)))


def hermiticity_defect(spec: HamiltonianSpec, mass: Number, hbar: Number, seed: int = 0, samples: int = 4) -> float:
    """
    Largest |<phi|H psi> - <H phi|psi>| / (|H| |phi| |psi|) over random complex pairs.

    :param spec: The Hamiltonian terms.
    :param mass: Particle mass.
    :param hbar: Reduced Planck constant.
    :param seed: Seed of the random pairs.
    :param samples: Number of pairs.
    """
    hamiltonian = Hamiltonian(spec, mass, hbar)
    matrix = hamiltonian.matrix
    rng = np.random.default_rng(seed)
    size = spec.grid.size
    scale = hamiltonian.infinity_norm()
    worst = 0.0
    for _ in range(samples):
        phi = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        psi = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        defect = abs(np.vdot(phi, matrix @ psi) - np.vdot(matrix @ phi, psi))
        worst = max(worst, defect / (scale * np.linalg.norm(phi) * np.linalg.norm(psi)))
    return float(worst)
