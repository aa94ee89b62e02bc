"""
Residuals of the relations between densities and velocity fields. Each function returns left side minus
right side, so consistent field sets give zero up to discretization error.

Fields may be given as a FieldPair (two time slices) or as a static Field. Time derivatives come from the
pair, spatial terms are evaluated on its midpoint.
"""
from dataclasses import dataclass
from numbers import Number
from typing import Optional, Tuple, Union

import numpy as np

from qsframework.fields.differencing import advect, divergence, gradient, laplacian
from qsframework.fields.field import Field, FieldPair, ScalarField, VectorField
from qsframework.fields.grid import Grid
from .flux import IFluxDiscretization, NodalDifferences

FieldOrPair = Union[Field, FieldPair]


def _vector_laplacian(values: np.ndarray, grid: Grid) -> np.ndarray:
    # radial fields are irrotational, so lap u = grad div u
    if grid.is_radial:
        return gradient(divergence(values, grid), grid)
    return laplacian(values, grid)


def continuity_residual(rho: FieldOrPair, upsilon: FieldOrPair, v: FieldOrPair) -> ScalarField:
    """
    (rho(t + dt) - rho(t)) / dt + div[(upsilon + v) rho] on the time midpoint.

    :param rho: Two consecutive density slices.
    :param upsilon: Transition velocity.
    :param v: Velocity of the quantum-sized volume.
    """
    rho, upsilon, v = FieldPair.of(rho), FieldPair.of(upsilon), FieldPair.of(v)
    grid = rho.grid
    rho.before.check_grid(upsilon.before, 'upsilon')
    rho.before.check_grid(v.before, 'v')
    flux = (upsilon.midpoint() + v.midpoint()) * rho.midpoint()[..., np.newaxis]
    return ScalarField(grid, rho.time_derivative() + divergence(flux, grid), 'continuity residual')


def stationarity_residual(u: VectorField, potential: ScalarField, energy: Number, m: Number,
                          hbar: Number) -> ScalarField:
    """
    E0/m + (hbar/2m) div(u) + u^2/2 - V/m.

    :param u: Osmotic velocity of a stationary state.
    :param potential: The potential V.
    :param energy: The state energy E0.
    :param m: Mass.
    :param hbar: Reduced Planck constant.
    """
    u.check_grid(potential, 'V')
    grid = u.grid
    values = (energy / m + hbar / (2.0 * m) * divergence(u.values, grid)
              + 0.5 * np.sum(u.values ** 2, axis=-1) - potential.values / m)
    return ScalarField(grid, values, 'stationarity residual')


def coupled_field_residuals(u: FieldOrPair, upsilon: FieldOrPair, v: FieldOrPair, potential: FieldOrPair,
                            m: Number, hbar: Number,
                            external_force: Optional[FieldOrPair] = None) -> Tuple[VectorField, VectorField]:
    """
    Residuals of the coupled evolution of u and upsilon + v:

        du/dt + (hbar/2m) grad div(upsilon + v) + grad[u . (upsilon + v)]
        d(upsilon + v)/dt + (grad V - F)/m + (upsilon . grad)(upsilon + v) - (u . grad)u - (hbar/2m) lap u

    The stationary forms follow with upsilon = 0 and static pairs.

    :param u: Osmotic velocity.
    :param upsilon: Transition velocity.
    :param v: Velocity of the quantum-sized volume.
    :param potential: The potential V.
    :param m: Mass.
    :param hbar: Reduced Planck constant.
    :param external_force: External force, zero if None.
    :return: The osmotic and the current residual.
    """
    u, upsilon, v, potential = FieldPair.of(u), FieldPair.of(upsilon), FieldPair.of(v), FieldPair.of(potential)
    grid = u.grid
    for other, name in ((upsilon, 'upsilon'), (v, 'v'), (potential, 'V')):
        u.before.check_grid(other.before, name)
    beta = hbar / (2.0 * m)

    osmotic = u.midpoint()
    transition = upsilon.midpoint()
    current = transition + v.midpoint()
    force = np.zeros_like(osmotic) if external_force is None else FieldPair.of(external_force).midpoint()

    first = (u.time_derivative()
             + beta * gradient(divergence(current, grid), grid)
             + gradient(np.sum(osmotic * current, axis=-1), grid))
    second = (upsilon.time_derivative() + v.time_derivative()
              + (gradient(potential.midpoint(), grid) - force) / m
              + advect(transition, current, grid)
              - advect(osmotic, osmotic, grid)
              - beta * _vector_laplacian(osmotic, grid))
    return VectorField(grid, first, 'osmotic residual'), VectorField(grid, second, 'current residual')


@dataclass(frozen=True)
class StationaryResiduals:
    """
    momentum:  a + (u . grad)u + beta lap u
    potential: a + grad(u^2)/2 + beta grad div u
    volume:    beta lap v + grad(u . v)
    """
    momentum: VectorField
    potential: VectorField
    volume: VectorField


def stationary_residuals(u: VectorField, v: VectorField, a: VectorField, beta: Number) -> StationaryResiduals:
    """
    :param u: Osmotic velocity.
    :param v: Velocity of the quantum-sized volume.
    :param a: Acceleration, -grad(V)/m for a force-free stationary state.
    :param beta: Diffusion constant.
    """
    u.check_grid(v, 'v')
    u.check_grid(a, 'a')
    grid = u.grid
    momentum = a.values + advect(u.values, u.values, grid) + beta * _vector_laplacian(u.values, grid)
    potential = (a.values + 0.5 * gradient(np.sum(u.values ** 2, axis=-1), grid)
                 + beta * gradient(divergence(u.values, grid), grid))
    volume = beta * _vector_laplacian(v.values, grid) + gradient(np.sum(u.values * v.values, axis=-1), grid)
    return StationaryResiduals(VectorField(grid, momentum, 'momentum residual'),
                               VectorField(grid, potential, 'potential residual'),
                               VectorField(grid, volume, 'volume residual'))


def _rhs_pair(rho: ScalarField, b: VectorField, b_star: VectorField, v: VectorField, beta: Number,
              discretization: IFluxDiscretization) -> Tuple[np.ndarray, np.ndarray]:
    rho.check_grid(b, 'b')
    rho.check_grid(b_star, 'b*')
    rho.check_grid(v, 'v')
    grid = rho.grid
    forward = discretization.rhs(rho.values, b.values + v.values, beta, grid)
    backward = discretization.rhs(rho.values, b_star.values + v.values, -beta, grid)
    return forward, backward


def half_sum_residual(rho: ScalarField, b: VectorField, b_star: VectorField, v: VectorField, beta: Number,
                      discretization: IFluxDiscretization = None) -> ScalarField:
    """
    Half the sum of both Fokker-Planck right-hand sides plus div[(upsilon + v) rho] with upsilon = (b + b*)/2.
    Zero for any fields, because the diffusion terms cancel.
    """
    discretization = NodalDifferences() if discretization is None else discretization
    forward, backward = _rhs_pair(rho, b, b_star, v, beta, discretization)
    upsilon = 0.5 * (b.values + b_star.values)
    values = 0.5 * (forward + backward) + discretization.flux_divergence(rho.values, upsilon + v.values, rho.grid)
    return ScalarField(rho.grid, values, 'half sum residual')


def half_difference_residual(rho: ScalarField, b: VectorField, b_star: VectorField, v: VectorField, beta: Number,
                             discretization: IFluxDiscretization = None) -> ScalarField:
    """
    Half the difference of both Fokker-Planck right-hand sides, beta lap(rho) - div(u rho) with u = (b - b*)/2.
    Zero when u is the osmotic velocity beta grad(rho)/rho.
    """
    discretization = NodalDifferences() if discretization is None else discretization
    forward, backward = _rhs_pair(rho, b, b_star, v, beta, discretization)
    return ScalarField(rho.grid, 0.5 * (forward - backward), 'half difference residual')
