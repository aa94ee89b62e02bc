"""
Finite differences on uniform grids.

Node-wise operators use second-order central differences in the interior and first-order one-sided
differences on non-periodic boundaries. The second derivative on such a boundary is the second difference
of the three nodes nearest to it. The sparse matrices at the end of this module instead encode the physical
boundary condition through ghost nodes and are used by the PDE solvers.
"""
import numpy as np
import scipy.sparse as sp

from .grid import Grid


def _derivative(values: np.ndarray, grid: Grid, axis: int) -> np.ndarray:
    h = grid.spacing[axis]
    if grid.is_periodic:
        return (np.roll(values, -1, axis=axis) - np.roll(values, 1, axis=axis)) / (2.0 * h)
    return np.gradient(values, h, axis=axis, edge_order=1)


def _second_derivative(values: np.ndarray, grid: Grid, axis: int) -> np.ndarray:
    h2 = grid.spacing[axis] ** 2
    if grid.is_periodic:
        return (np.roll(values, -1, axis=axis) - 2.0 * values + np.roll(values, 1, axis=axis)) / h2

    moved = np.moveaxis(values, axis, 0)
    result = np.empty_like(moved)
    result[1:-1] = (moved[2:] - 2.0 * moved[1:-1] + moved[:-2]) / h2
    result[0] = (moved[0] - 2.0 * moved[1] + moved[2]) / h2
    result[-1] = (moved[-1] - 2.0 * moved[-2] + moved[-3]) / h2
    return np.moveaxis(result, 0, axis)


def _radius(grid: Grid, trailing: int = 0) -> np.ndarray:
    return grid.axes()[0].reshape((-1,) + (1,) * trailing)


def gradient(values: np.ndarray, grid: Grid) -> np.ndarray:
    """
    :param values: Scalar values of grid shape, or vector values with one trailing axis.
    :return: Derivatives stacked on a new last axis, one entry per grid axis.
    """
    return np.stack([_derivative(values, grid, axis) for axis in range(grid.ndim)], axis=-1)


def divergence(values: np.ndarray, grid: Grid) -> np.ndarray:
    """
    :param values: Vector values of shape (*dims, ndim).
    :return: Sum of the partial derivatives, (1/r^2) d(r^2 u)/dr on radial grids.
    """
    if grid.is_radial:
        r = _radius(grid, 1)
        return _derivative(r[:, 0] ** 2 * values[..., 0], grid, 0) / r[:, 0] ** 2
    return sum(_derivative(values[..., axis], grid, axis) for axis in range(grid.ndim))


def laplacian(values: np.ndarray, grid: Grid) -> np.ndarray:
    """
    :param values: Scalar values of grid shape, or vector values with one trailing axis.
    :return: Laplacian, f'' + (2/r) f' on radial grids.
    """
    result = sum(_second_derivative(values, grid, axis) for axis in range(grid.ndim))
    if grid.is_radial:
        r = _radius(grid, values.ndim - 1)
        result = result + 2.0 / r * _derivative(values, grid, 0)
    return result


def advect(drift: np.ndarray, values: np.ndarray, grid: Grid) -> np.ndarray:
    """
    :param drift: Vector values of shape (*dims, ndim).
    :param values: Scalar values, or vector values with one trailing component axis.
    :return: (b . grad) f, componentwise for vector f.
    """
    if values.ndim == grid.ndim:
        return np.sum(drift * gradient(values, grid), axis=-1)
    # gradient of a vector field has shape (*dims, components, ndim)
    return np.einsum('...a,...ka->...k', drift, gradient(values, grid))


def second_difference_matrix(points: int, spacing: float, boundary: Grid.Boundary) -> sp.csr_matrix:
    """
    Three point second difference on one axis with the boundary encoded by ghost nodes.
    Dirichlet ghosts are zero, reflecting ghosts mirror the boundary node and periodic axes wrap around.
    """
    main = np.full(points, -2.0)
    off = np.ones(points - 1)
    if boundary == Grid.Boundary.REFLECTING:
        main[0] = main[-1] = -1.0
    matrix = sp.diags([off, main, off], [-1, 0, 1], shape=(points, points), format='lil')
    if boundary == Grid.Boundary.PERIODIC:
        matrix[0, points - 1] = 1.0
        matrix[points - 1, 0] = 1.0
    return (matrix / spacing ** 2).tocsr()


def laplacian_matrix(grid: Grid) -> sp.csr_matrix:
    """
    :return: Sparse Laplacian of a cartesian grid in row-major node order.
    """
    identities = [sp.identity(n, format='csr') for n in grid.dims]
    result = sp.csr_matrix((grid.size, grid.size))
    for axis, (n, h) in enumerate(zip(grid.dims, grid.spacing)):
        factors = list(identities)
        factors[axis] = second_difference_matrix(n, h, grid.boundary)
        term = factors[0]
        for factor in factors[1:]:
            term = sp.kron(term, factor, format='csr')
        result = result + term
    return result.tocsr()
