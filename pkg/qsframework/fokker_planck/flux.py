"""
Discretizations of the two spatial terms of a Fokker-Planck right-hand side, div(drift rho) and lap(rho).
"""
from abc import ABC, abstractmethod
from typing import Callable, List

import numpy as np
from overrides import overrides

from qsframework.fields.differencing import divergence, gradient
from qsframework.fields.grid import Grid


class IFluxDiscretization(ABC):
    """
    Interface. An IFluxDiscretization evaluates the advective and diffusive terms on a grid.
    """

    @abstractmethod
    def flux_divergence(self, rho: np.ndarray, drift: np.ndarray, grid: Grid) -> np.ndarray:
        """
        :param rho: Density values of grid shape.
        :param drift: Drift values of shape (*dims, ndim).
        :param grid: The grid.
        :return: div(drift rho).
        """
        pass

    @abstractmethod
    def laplacian(self, rho: np.ndarray, grid: Grid) -> np.ndarray:
        """
        :param rho: Density values of grid shape.
        :param grid: The grid.
        :return: lap(rho).
        """
        pass

    def rhs(self, rho: np.ndarray, drift: np.ndarray, diffusion: float, grid: Grid) -> np.ndarray:
        """
        :param diffusion: Signed diffusion constant, negative for the anti-diffusive backward equation.
        :return: -div(drift rho) + diffusion lap(rho).
        """
        return -self.flux_divergence(rho, drift, grid) + diffusion * self.laplacian(rho, grid)


class ConservativeFaceFlux(IFluxDiscretization):
    """
    Finite volume form. Fluxes live on the faces between neighbouring nodes and every node changes by the
    difference of its two face fluxes, so the weighted total only changes through the outer faces.
    Reflecting walls carry no flux, periodic axes wrap and Dirichlet walls see a zero density ghost.
    """

    def __init__(self, upwind: bool = False):
        """
        :param upwind: Take the face density from the upstream node instead of the face average.
        """
        self._upwind = upwind

    @property
    def upwind(self) -> bool:
        return self._upwind

    @staticmethod
    def _difference(grid: Grid, axis: int, quantities: List[np.ndarray], edge_ghosts: List[bool],
                    face_flux: Callable) -> np.ndarray:
        """
        :param quantities: Node arrays of grid shape handed to face_flux.
        :param edge_ghosts: Per quantity, whether its ghost repeats the boundary node instead of being zero.
        :param face_flux: Maps the quantities left and right of every face to the face flux.
        :return: (flux on upper face - flux on lower face) / h at every node.
        """
        h = grid.spacing[axis]
        moved = [np.moveaxis(q, axis, 0) for q in quantities]
        if grid.is_periodic:
            upper = face_flux(moved, [np.roll(q, -1, axis=0) for q in moved])
            lower = np.roll(upper, 1, axis=0)
        else:
            pad = [(1, 1)] + [(0, 0)] * (grid.ndim - 1)
            padded = [np.pad(q, pad, mode='edge' if edge else 'constant') for q, edge in zip(moved, edge_ghosts)]
            faces = face_flux([q[:-1] for q in padded], [q[1:] for q in padded])
            if grid.boundary == Grid.Boundary.REFLECTING:
                faces[0] = 0.0
                faces[-1] = 0.0
            lower, upper = faces[:-1], faces[1:]
        if grid.is_radial:
            r = grid.axes()[0]
            lower = lower * (r - 0.5 * h) ** 2 / r ** 2
            upper = upper * (r + 0.5 * h) ** 2 / r ** 2
        return np.moveaxis((upper - lower) / h, 0, axis)

    def _advective(self, left: List[np.ndarray], right: List[np.ndarray]) -> np.ndarray:
        velocity = 0.5 * (left[0] + right[0])
        if self._upwind:
            return velocity * np.where(velocity > 0, left[1], right[1])
        return velocity * 0.5 * (left[1] + right[1])

    @overrides
    def flux_divergence(self, rho: np.ndarray, drift: np.ndarray, grid: Grid) -> np.ndarray:
        return sum(self._difference(grid, axis, [drift[..., axis], rho], [True, False], self._advective)
                   for axis in range(grid.ndim))

    @overrides
    def laplacian(self, rho: np.ndarray, grid: Grid) -> np.ndarray:
        result = np.zeros(grid.shape)
        for axis, h in enumerate(grid.spacing):
            result += self._difference(grid, axis, [rho], [False],
                                       lambda left, right, h=h: (right[0] - left[0]) / h)
        return result


class NodalDifferences(IFluxDiscretization):
    """
    Node-wise central differences. The Laplacian is the divergence of the gradient, so with
    u = beta grad(rho) / rho the terms div(u rho) and beta lap(rho) agree to rounding.
    """

    @overrides
    def flux_divergence(self, rho: np.ndarray, drift: np.ndarray, grid: Grid) -> np.ndarray:
        return divergence(drift * rho[..., np.newaxis], grid)

    @overrides
    def laplacian(self, rho: np.ndarray, grid: Grid) -> np.ndarray:
        return divergence(gradient(rho, grid), grid)
