"""
Relativistic relations between two states separated by a velocity change dv.

With x = dv^2/c^2 and s = sqrt(1 - x) the Lorentz factor minus one is evaluated as x / (s (1 + s)),
which stays accurate for small dv.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import pi, sqrt
from numbers import Number
from typing import List, Tuple

import numpy as np
from scipy.special import comb

from qsframework.core.exceptions import OutOfRangeException, SuperluminalException, WrongStrictTypeException
from .state import LedgerState


def _speed_ratio(delta_v, c: Number) -> Tuple[float, float]:
    if not c > 0:
        raise OutOfRangeException(0.0, np.inf, c)
    speed = float(np.linalg.norm(np.atleast_1d(np.asarray(delta_v, dtype=float))))
    if speed >= c:
        raise SuperluminalException(speed, c)
    x = (speed / c) ** 2
    return x, sqrt(1.0 - x)


def lorentz_factor(delta_v, c: Number) -> float:
    """
    :raises:
        SuperluminalException: If |delta_v| >= c.
    """
    _, s = _speed_ratio(delta_v, c)
    return 1.0 / s


def gamma_minus_one(delta_v, c: Number) -> float:
    x, s = _speed_ratio(delta_v, c)
    return x / (s * (1.0 + s))


def time_unit(nu_vib: Number) -> float:
    """
    :return: The period 1 / nu_vib, the time unit of a state.
    """
    if not nu_vib > 0:
        raise OutOfRangeException(0.0, np.inf, nu_vib)
    return 1.0 / nu_vib


def related_time_units(period: Number, delta_v, c: Number) -> float:
    """
    :param period: Time unit T'' of the other state.
    :param delta_v: Velocity change between the states, scalar or vector.
    :param c: Speed of light.
    :return: T = T'' / sqrt(1 - dv^2/c^2).
    :raises:
        SuperluminalException: If |delta_v| >= c.
    """
    _, s = _speed_ratio(delta_v, c)
    return period / s


def series_coefficient(k: int) -> Fraction:
    """
    :return: C(2k, k) / 4^k, the coefficient of m0 c^2 (dv/c)^(2k) in (gamma - 1) m0 c^2.
    """
    if isinstance(k, bool) or not isinstance(k, int):
        raise WrongStrictTypeException(int.__name__, type(k).__name__)
    if k < 1:
        raise OutOfRangeException(1, np.inf, k)
    return Fraction(int(comb(2 * k, k, exact=True)), 4 ** k)


@dataclass(frozen=True)
class RelativisticExpansion:
    terms: List[float]
    exact: float

    def partial_sums(self) -> List[float]:
        return list(np.cumsum(self.terms))


def relativistic_expansion(m0: Number, delta_v, c: Number, order: int = 4) -> RelativisticExpansion:
    """
    Series of (m - m0) c^2 = 1/2 m0 dv^2 + 3/8 m0 dv^4/c^2 + 5/16 m0 dv^6/c^4 + ...

    :param m0: Mass of the reference state.
    :param delta_v: Velocity change, scalar or vector.
    :param c: Speed of light.
    :param order: Number of series terms.
    :return: The first order terms and the exact value m0 (gamma - 1) c^2.
    :raises:
        SuperluminalException: If |delta_v| >= c.
    """
    x, _ = _speed_ratio(delta_v, c)
    rest = m0 * c * c
    terms = [float(series_coefficient(k)) * rest * x ** k for k in range(1, order + 1)]
    return RelativisticExpansion(terms, rest * gamma_minus_one(delta_v, c))


def energy_split(m0: Number, delta_v, c: Number) -> Tuple[float, float]:
    """
    Splits m0 (gamma - 1) c^2 into the magnetic part 1/2 m0 dv^2 and the radiated remainder,
    which is evaluated in closed form m0 c^2 x^2 (2 + s) / (2 s (1 + s)^2).

    :return: E_magnetic and E_radiation.
    :raises:
        SuperluminalException: If |delta_v| >= c.
    """
    x, s = _speed_ratio(delta_v, c)
    rest = m0 * c * c
    magnetic = 0.5 * rest * x
    radiation = rest * x * x * (2.0 + s) / (2.0 * s * (1.0 + s) ** 2)
    return magnetic, radiation


def spin_energy_split(m0: Number, b, b_star, c: Number) -> Tuple[float, float]:
    """
    energy_split of a spin transition with dv = b* - b.
    """
    return energy_split(m0, np.asarray(b_star, dtype=float) - np.asarray(b, dtype=float), c)


def state_relative_mass(before: LedgerState, after: LedgerState, delta_v, c: Number) -> Tuple[float, float]:
    """
    Masses of two states seen from each other. m0 is the mass of the new state without the kinetic energy
    gained in the transition, m = m0 / sqrt(1 - dv^2/c^2).

    :param before: State before the transition.
    :param after: State after the transition.
    :param delta_v: Velocity change, scalar or vector.
    :param c: Speed of light.
    :return: m0 and m.
    :raises:
        SuperluminalException: If |delta_v| >= c.
    """
    gained = -after.pattern.coefficients['E_k'] * (after.terms['E_k'] - before.terms['E_k'])
    m0 = (after.net_energy() - gained) / (4.0 * pi * after.radius ** 2 * after.nu_vib * after.nu_rot)
    return m0, m0 + m0 * gamma_minus_one(delta_v, c)
