"""
Mean forward and backward time derivatives acting on fields.

    D f  = df/dt + b . grad f + beta lap f
    D* f = df/dt + b* . grad f - beta lap f

Fields are passed as FieldPair (two time slices) or as a single static Field. Spatial terms are evaluated
on the midpoint of the two slices.
"""
from numbers import Number
from typing import Union

import numpy as np

from qsframework.core.exceptions import GridMismatchException
from qsframework.fields.differencing import advect, laplacian
from qsframework.fields.field import Field, FieldPair, VectorField
from qsframework.fields.grid import Grid

FieldOrPair = Union[Field, FieldPair]


def _drift_components(grid: Grid) -> int:
    return 1 if grid.is_radial else grid.ndim


def _check(f: FieldPair, drift: FieldPair) -> None:
    f.before.check_grid(drift.before, 'drift')
    if drift.before.values.shape[-1] != _drift_components(f.grid):
        raise GridMismatchException('f', 'drift')


def _apply(time_derivative: np.ndarray, values: np.ndarray, drift: np.ndarray, beta: Number, sign: float,
           grid: Grid) -> np.ndarray:
    return time_derivative + advect(drift, values, grid) + sign * beta * laplacian(values, grid)


def _derivative(f: FieldOrPair, drift: FieldOrPair, beta: Number, sign: float) -> Field:
    f = FieldPair.of(f)
    drift = FieldPair.of(drift)
    _check(f, drift)
    values = _apply(f.time_derivative(), f.midpoint(), drift.midpoint(), beta, sign, f.grid)
    return type(f.before)(f.grid, values)


def mean_forward_derivative(f: FieldOrPair, b: FieldOrPair, beta: Number) -> Field:
    """
    :param f: Scalar or vector field, static or as a time pair.
    :param b: Forward drift.
    :param beta: Diffusion constant.
    :return: D f of the same kind as f.
    :raises:
        GridMismatchException: If the fields live on different grids.
    """
    return _derivative(f, b, beta, 1.0)


def mean_backward_derivative(f: FieldOrPair, b_star: FieldOrPair, beta: Number) -> Field:
    """
    :param f: Scalar or vector field, static or as a time pair.
    :param b_star: Backward drift.
    :param beta: Diffusion constant.
    :return: D* f of the same kind as f.
    :raises:
        GridMismatchException: If the fields live on different grids.
    """
    return _derivative(f, b_star, beta, -1.0)


def _nested(x: FieldPair, inner: FieldPair, inner_sign: float, outer: FieldPair, outer_sign: float,
            beta: Number) -> np.ndarray:
    grid = x.grid
    velocity = x.time_derivative()
    # the inner derivative on both slices, then the outer derivative of that pair
    first = _apply(velocity, x.before.values, inner.before.values, beta, inner_sign, grid)
    second = _apply(velocity, x.after.values, inner.after.values, beta, inner_sign, grid)
    return _apply((second - first) / x.dt, 0.5 * (first + second), outer.midpoint(), beta, outer_sign, grid)


def mean_acceleration(x: FieldOrPair, b: FieldOrPair, b_star: FieldOrPair, beta: Number) -> VectorField:
    """
    a = (D D* + D* D) x / 2 of the position field x(r, t) = R(t) + r.

    :param x: Position field, static or as a time pair.
    :param b: Forward drift.
    :param b_star: Backward drift.
    :param beta: Diffusion constant.
    :return: The mean acceleration.
    """
    x = FieldPair.of(x)
    b = FieldPair.of(b)
    b_star = FieldPair.of(b_star)
    _check(x, b)
    _check(x, b_star)
    forward_of_backward = _nested(x, b_star, -1.0, b, 1.0, beta)
    backward_of_forward = _nested(x, b, 1.0, b_star, -1.0, beta)
    return VectorField(x.grid, 0.5 * (forward_of_backward + backward_of_forward), 'a')


def position_field(grid: Grid, shift=None) -> VectorField:
    """
    :param shift: Position R of the quantum-sized volume, zero if None.
    :return: x(r) = R + r at every node.
    """
    coordinates = grid.coordinates()
    if shift is not None:
        coordinates = coordinates + np.asarray(shift, dtype=float)
    return VectorField(grid, coordinates, 'x')
