"""
Radiation of a transition. The radiated power

    P_rad = (3/8) (mu0 q^2 / 4 pi) |dv| <a>^2 / c^2

is the SI reading of (3/8) q^2 |dv| <a>^2 / c^3. Over the transition time r_min / |dv| with
<a> = |dv|^2 / r_min it radiates E_rad = (3/8) m_mag |dv|^4 / c^2.
"""
from math import pi
from numbers import Number
from typing import Tuple

import numpy as np
from scipy.integrate import simpson

from qsframework.core.exceptions import OutOfRangeException, SuperluminalException
from .constants import EMConstants
from .magnetic import speed_of, magnetic_mass, UNIT_TOLERANCE

# prefactor of the radiated power
LARMOR_PREFACTOR = 3.0 / 8.0


def _subluminal(delta_v, constants: EMConstants) -> float:
    speed = speed_of(delta_v)
    if speed >= constants.c:
        raise SuperluminalException(speed, constants.c)
    return speed


def larmor_power(delta_v, acceleration: Number, constants: EMConstants = None) -> float:
    """
    :param delta_v: Velocity change, scalar or vector.
    :param acceleration: Expectation value <a> of the acceleration.
    :return: The radiated power P_rad.
    """
    constants = EMConstants() if constants is None else constants
    return LARMOR_PREFACTOR * constants.radiation_coefficient * speed_of(delta_v) * acceleration ** 2


def poynting_and_larmor(delta_v, acceleration: Number, theta: np.ndarray, constants: EMConstants = None,
                        distance: Number = 1.0) -> Tuple[np.ndarray, float]:
    """
    Radial Poynting flux S(theta) = S0 sin^3(theta) on a sphere of radius R0, with theta measured from <a>.
    S0 is fixed so that the flux through the sphere equals P_rad.

    :param delta_v: Velocity change, scalar or vector.
    :param acceleration: Expectation value <a> of the acceleration.
    :param theta: Polar angles in [0, pi].
    :param constants: Electromagnetic constants, defaults if None.
    :param distance: Sphere radius R0.
    :return: S on the theta grid and P_rad.
    :raises:
        OutOfRangeException: If distance is not positive or an angle lies outside [0, pi].
    """
    if not distance > 0:
        raise OutOfRangeException(0.0, np.inf, distance)
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0.0) or np.any(theta > pi):
        raise OutOfRangeException(0.0, pi, float(theta.min() if np.any(theta < 0.0) else theta.max()))
    power = larmor_power(delta_v, acceleration, constants)
    # the closed form q^2 |dv| <a>^2 / (2 pi c^3 R0^2) for S0 integrates to pi P_rad, so S0 follows from P_rad
    # through the sphere integral 2 pi R0^2 * 3 pi / 8 of sin^3 and a flux check only tests the angular quadrature
    amplitude = power / (2.0 * pi * distance ** 2 * 3.0 * pi / 8.0)
    return amplitude * np.sin(theta) ** 3, power


def flux_through_sphere(flux: np.ndarray, theta: np.ndarray, distance: Number = 1.0) -> float:
    """
    :return: The integral of S 2 pi R0^2 sin(theta) over theta by Simpson's rule.
    """
    theta = np.asarray(theta, dtype=float)
    return float(simpson(flux * 2.0 * pi * distance ** 2 * np.sin(theta), x=theta))


def transition_time(delta_v, constants: EMConstants = None) -> float:
    """
    :return: r_min / |dv|.
    :raises:
        OutOfRangeException: If dv is zero.
    """
    constants = EMConstants() if constants is None else constants
    speed = speed_of(delta_v)
    if not speed > 0:
        raise OutOfRangeException(0.0, np.inf, speed)
    return constants.r_min / speed


def mean_acceleration(delta_v, constants: EMConstants = None) -> float:
    """
    :return: <a> = |dv|^2 / r_min.
    """
    constants = EMConstants() if constants is None else constants
    return speed_of(delta_v) ** 2 / constants.r_min


def radiated_energy(delta_v, constants: EMConstants = None) -> float:
    """
    :param delta_v: Velocity change, scalar or vector.
    :param constants: Electromagnetic constants, defaults if None.
    :return: E_rad = (3/8) m_mag |dv|^4 / c^2.
    :raises:
        SuperluminalException: If |dv| >= c.
    """
    constants = EMConstants() if constants is None else constants
    speed = _subluminal(delta_v, constants)
    return LARMOR_PREFACTOR * magnetic_mass(constants) * speed ** 4 / constants.c ** 2


def radiated_energy_from_history(delta_v, times: np.ndarray, accelerations: np.ndarray,
                                 constants: EMConstants = None) -> float:
    """
    Integrates P_rad over an acceleration history <a>(t) by Simpson's rule.

    :param delta_v: Velocity change, scalar or vector.
    :param times: Sample times covering the transition.
    :param accelerations: <a> at the sample times.
    :param constants: Electromagnetic constants, defaults if None.
    :return: The radiated energy.
    :raises:
        SuperluminalException: If |dv| >= c.
        OutOfRangeException: If times and accelerations differ in length or hold fewer than two samples.
    """
    constants = EMConstants() if constants is None else constants
    speed = _subluminal(delta_v, constants)
    times = np.asarray(times, dtype=float)
    accelerations = np.asarray(accelerations, dtype=float)
    if times.shape != accelerations.shape or times.size < 2:
        raise OutOfRangeException(2, times.size, accelerations.size)
    integral = simpson(accelerations ** 2, x=times)
    return float(LARMOR_PREFACTOR * constants.radiation_coefficient * speed * integral)


def motional_electric_field(delta_v, b_field) -> np.ndarray:
    """
    :return: E = v_e x B with the medium velocity v_e = 2 dv.
    """
    return np.cross(2.0 * np.asarray(delta_v, dtype=float), np.asarray(b_field, dtype=float))


def radiation_electric_field(n_hat, b_field) -> np.ndarray:
    """
    :return: E = -n x B far from charges.
    :raises:
        OutOfRangeException: If n_hat is no unit vector.
    """
    n_hat = np.asarray(n_hat, dtype=float)
    norm = np.linalg.norm(n_hat)
    if abs(norm - 1.0) > UNIT_TOLERANCE:
        raise OutOfRangeException(1.0 - UNIT_TOLERANCE, 1.0 + UNIT_TOLERANCE, norm)
    return -np.cross(n_hat, np.asarray(b_field, dtype=float))
