"""
Fields of a spin transition and the spin-orbit / spin-spin split of the interaction potential

    V = -(q / m c^2) P_S . [(b + v) x E] = (q / m c) P_S . (B0 + Bs)

with B0 = -(v x E) / c and Bs = -(b x E) / c.
"""
from math import pi
from numbers import Number
from typing import Tuple, Union

import numpy as np

from qsframework.core.exceptions import DimensionException, GridMismatchException, OutOfRangeException
from qsframework.fields.field import ScalarField, VectorField
from qsframework.fields.velocities import osmotic_velocity
from .constants import EMConstants


def volume_average(field: VectorField, rho: ScalarField) -> np.ndarray:
    """
    :return: The rho weighted mean of field over the grid.
    """
    rho.check_grid(field, 'field')
    total = float(rho.integral())
    if not total > 0:
        raise OutOfRangeException(0.0, np.inf, total)
    return np.asarray(rho.grid.integrate(field.values * rho.values[..., np.newaxis])) / total


def spin_transition_bfield(rho: ScalarField, b: VectorField, v: VectorField, radius: Number, mass: Number,
                           hbar: Number, constants: EMConstants = None,
                           average: bool = False) -> Union[VectorField, np.ndarray]:
    """
    B = (q / m c^2) (1 / 4 pi eps0 R^3) [(h/2) grad(rho)/rho] x (b + v) with h = 2 pi hbar.

    The volume integral of grad(Psi*) Psi is replaced by 1 / (4 pi eps0 R^2) as proposed for the quantum-sized
    volume; this substitution is taken as given.

    :param rho: Density on a 3-D grid.
    :param b: Forward drift.
    :param v: Velocity of the quantum-sized volume.
    :param radius: Radius R of the quantum-sized volume.
    :param mass: Particle mass.
    :param hbar: Reduced Planck constant.
    :param constants: Electromagnetic constants, defaults if None.
    :param average: Whether the rho weighted volume average is returned instead of the field.
    :return: B per node or its volume average.
    :raises:
        OutOfRangeException: If R or the mass is not positive.
        DimensionException: If the grid is not 3-D.
        GridMismatchException: If the fields live on different grids.
    """
    constants = EMConstants() if constants is None else constants
    if not radius > 0:
        raise OutOfRangeException(0.0, np.inf, radius)
    if not mass > 0:
        raise OutOfRangeException(0.0, np.inf, mass)
    if rho.grid.ndim != 3:
        raise DimensionException(3, rho.grid.ndim)
    for other, name in ((b, 'b'), (v, 'v')):
        if other.grid != rho.grid:
            raise GridMismatchException(name, 'rho')

    log_gradient = osmotic_velocity(rho, 1.0).values
    prefactor = constants.charge / (mass * constants.c ** 2) / (4.0 * pi * constants.eps0 * radius ** 3)
    values = prefactor * np.cross(pi * hbar * log_gradient, b.values + v.values)
    field = VectorField(rho.grid, values, 'B')
    return volume_average(field, rho) if average else field


def _vector(value) -> np.ndarray:
    vector = np.asarray(value, dtype=float)
    if vector.shape != (3,):
        raise DimensionException(3, vector.size)
    return vector


def interaction_potential(p_s, b, v, e_field, mass: Number, constants: EMConstants = None) -> float:
    """
    :return: V = -(q / m c^2) P_S . [(b + v) x E].
    """
    constants = EMConstants() if constants is None else constants
    p_s, b, v, e_field = (_vector(value) for value in (p_s, b, v, e_field))
    return float(-constants.charge / (mass * constants.c ** 2) * np.dot(p_s, np.cross(b + v, e_field)))


def interaction_potentials(p_s, b, v, e_field, mass: Number, constants: EMConstants = None) -> Tuple[float, float]:
    """
    :param p_s: Spin momentum P_S.
    :param b: Forward drift.
    :param v: Velocity of the quantum-sized volume.
    :param e_field: Electric field E.
    :param mass: Particle mass.
    :param constants: Electromagnetic constants, defaults if None.
    :return: The spin-orbit part V_so = (q / m c) P_S . B0 and the spin-spin part V_ss = (q / m c) P_S . Bs.
    :raises:
        DimensionException: If an input is not a 3-vector.
        OutOfRangeException: If the mass is not positive.
    """
    constants = EMConstants() if constants is None else constants
    if not mass > 0:
        raise OutOfRangeException(0.0, np.inf, mass)
    p_s, b, v, e_field = (_vector(value) for value in (p_s, b, v, e_field))
    c = constants.c
    orbit_field = -np.cross(v, e_field) / c
    spin_field = -np.cross(b, e_field) / c
    coupling = constants.charge / (mass * c)
    return float(coupling * np.dot(p_s, orbit_field)), float(coupling * np.dot(p_s, spin_field))
