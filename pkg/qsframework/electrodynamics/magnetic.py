"""
Magnetic field of a transition and the energy stored in it outside the quantum-sized volume.

The point form B = -k n x q dv / R^2 carries k = 1/c or mu0 / 4 pi in SI. The energy is taken
with the SI field and the perpendicular geometry (v + b) _|_ dv, which makes the field isotropic and gives

    E_mag = (mu0 q^2 / 8 pi) |dv|^2 / r_min = m_mag |dv|^2 / 2.
"""
import logging
from math import log, pi
from numbers import Number

import numpy as np
from scipy.integrate import quad

from qsframework.core.exceptions import DimensionException, GuardRadiusException, OutOfRangeException
from qsframework.fields.field import VectorField
from .constants import EMConstants

logger = logging.getLogger(__name__)

# |n| must equal one within this tolerance
UNIT_TOLERANCE = 1e-12


def speed_of(delta_v) -> float:
    """
    Magnitude of a velocity given as a scalar or a vector.
    """
    return float(np.linalg.norm(np.atleast_1d(np.asarray(delta_v, dtype=float))))


def biot_savart_point(delta_v, distance: Number, n_hat, constants: EMConstants = None) -> np.ndarray:
    """
    :param delta_v: Velocity change, a 3-vector.
    :param distance: Distance R between source and field point.
    :param n_hat: Unit vector from the source to the field point.
    :param constants: Electromagnetic constants, defaults if None.
    :return: B = -k n x (q dv) / R^2.
    :raises:
        OutOfRangeException: If R is not positive or n_hat is no unit vector.
    """
    constants = EMConstants() if constants is None else constants
    if not distance > 0:
        raise OutOfRangeException(0.0, np.inf, distance)
    n_hat = np.asarray(n_hat, dtype=float)
    norm = np.linalg.norm(n_hat)
    if abs(norm - 1.0) > UNIT_TOLERANCE:
        raise OutOfRangeException(1.0 - UNIT_TOLERANCE, 1.0 + UNIT_TOLERANCE, norm)
    source = constants.charge * np.asarray(delta_v, dtype=float)
    return -constants.biot_savart_prefactor * np.cross(n_hat, source) / distance ** 2


def magnetic_field_from_current(current: VectorField, point, constants: EMConstants = None,
                                guard: Number = None) -> np.ndarray:
    """
    B(r) = k sum_r' n x (-J(r') / R^2) dV over all source nodes, with n pointing from r' to r.

    :param current: Current density on a 3-D grid.
    :param point: Field point r.
    :param constants: Electromagnetic constants, defaults if None.
    :param guard: Smallest allowed distance to a node carrying current, half the largest spacing if None.
    :return: The field at point.
    :raises:
        DimensionException: If the grid or the current is not 3-D.
        GuardRadiusException: If point lies inside the guard radius of a source node.
    """
    constants = EMConstants() if constants is None else constants
    grid = current.grid
    if grid.ndim != 3 or current.components != 3:
        raise DimensionException(3, current.components)
    guard = 0.5 * max(grid.spacing) if guard is None else guard

    sources = np.any(current.values != 0.0, axis=-1)
    if not np.any(sources):
        return np.zeros(3)
    positions = grid.coordinates()[sources]
    density = current.values[sources]
    weights = grid.weights[sources]

    separation = np.asarray(point, dtype=float) - positions
    distance = np.linalg.norm(separation, axis=-1)
    closest = float(np.min(distance))
    if closest < guard:
        raise GuardRadiusException(closest, guard)
    n_hat = separation / distance[:, np.newaxis]
    contributions = np.cross(n_hat, -density) / distance[:, np.newaxis] ** 2
    return constants.biot_savart_prefactor * np.sum(contributions * weights[:, np.newaxis], axis=0)


def magnetic_mass(constants: EMConstants = None) -> float:
    """
    :return: m_mag = mu0 q^2 / (4 pi r_min).
    """
    constants = EMConstants() if constants is None else constants
    return constants.mu0 * constants.charge ** 2 / (4.0 * pi * constants.r_min)


def magnetic_energy(delta_v, constants: EMConstants = None) -> float:
    """
    :param delta_v: Velocity change, scalar or vector.
    :return: E_mag = m_mag |dv|^2 / 2.
    """
    return 0.5 * magnetic_mass(constants) * speed_of(delta_v) ** 2


def magnetic_energy_quadrature(delta_v, constants: EMConstants = None, r_max: Number = None,
                               tail: bool = True) -> float:
    """
    Integrates B^2 / 2 mu0 of the isotropic SI point field over the shell r_min <= R <= r_max.

    :param delta_v: Velocity change, scalar or vector.
    :param constants: Electromagnetic constants, defaults if None.
    :param r_max: Outer radius, 1e6 r_min if None.
    :param tail: Whether the analytic remainder beyond r_max is added.
    :return: The field energy.
    """
    constants = EMConstants() if constants is None else constants
    r_min = constants.r_min
    r_max = 1e6 * r_min if r_max is None else r_max
    if not r_max > r_min:
        raise OutOfRangeException(r_min, np.inf, r_max)
    amplitude = constants.mu0 * constants.charge * speed_of(delta_v) / (4.0 * pi)
    density = amplitude ** 2 / (2.0 * constants.mu0)

    # R = r_min e^s turns 4 pi R^2 dR / R^4 into 4 pi e^-s ds / r_min
    radial, _ = quad(lambda s: np.exp(-s), 0.0, log(r_max / r_min), epsabs=0.0, epsrel=1e-12)
    energy = density * 4.0 * pi * radial / r_min
    if tail:
        energy += density * 4.0 * pi / r_max
    logger.debug("field energy %.12g J up to %.3g m", energy, r_max)
    return float(energy)
