"""
Physical constants used by every module. Two presets exist: SI with CODATA values taken from scipy.constants,
and natural (Hartree atomic) units in which hbar = m_e = e = 4*pi*eps0 = 1.
"""
from numbers import Number
from math import inf, pi
from enum import Enum

import scipy.constants

from .exceptions import OutOfRangeException, WrongStrictTypeException

# relative tolerance of mu0 * eps0 * c^2 = 1
VACUUM_TOLERANCE = 1e-10


def positive(value) -> Number:
    """
    :return: value if it is a number above zero.
    :raises:
        WrongStrictTypeException: If value is not a number.
        OutOfRangeException: If value is not positive.
    """
    if isinstance(value, bool) or not isinstance(value, Number):
        raise WrongStrictTypeException(Number.__name__, type(value).__name__)
    if not value > 0:
        raise OutOfRangeException(0.0, inf, value)
    return value


class PhysicalConstants:
    class Preset(Enum):
        SI = "SI"
        NATURAL = "natural"

    def __init__(self,
                 hbar: Number = scipy.constants.hbar,
                 c: Number = scipy.constants.c,
                 mu0: Number = 4e-7 * pi,
                 eps0: Number = None,
                 charge: Number = scipy.constants.e,
                 electron_mass: Number = scipy.constants.m_e,
                 classical_radius: Number = scipy.constants.physical_constants['classical electron radius'][0],
                 preset: 'PhysicalConstants.Preset' = Preset.SI):
        """
        :param hbar: Reduced Planck constant.
        :param c: Speed of light.
        :param mu0: Vacuum permeability.
        :param eps0: Vacuum permittivity. Derived from mu0 and c if None.
        :param charge: Elementary charge.
        :param electron_mass: Electron mass.
        :param classical_radius: Classical electron radius.
        :param preset: Which unit system the values belong to.
        :raises:
            OutOfRangeException: If mu0 * eps0 * c^2 differs from 1.
        """
        self.hbar = hbar
        self.c = c
        self.mu0 = mu0
        self.eps0 = 1.0 / (mu0 * c * c) if eps0 is None else eps0
        self.charge = charge
        self.electron_mass = electron_mass
        self.classical_radius = classical_radius
        self.preset = preset

        vacuum = self.mu0 * self.eps0 * self.c ** 2
        if abs(vacuum - 1.0) > VACUUM_TOLERANCE:
            raise OutOfRangeException(1.0 - VACUUM_TOLERANCE, 1.0 + VACUUM_TOLERANCE, vacuum)

    @classmethod
    def si(cls) -> 'PhysicalConstants':
        return cls()

    @classmethod
    def natural(cls) -> 'PhysicalConstants':
        """
        Hartree atomic units: hbar = m_e = e = 1, c = 1/alpha, eps0 = 1/(4 pi).
        """
        c = 1.0 / scipy.constants.fine_structure
        return cls(hbar=1.0,
                   c=c,
                   mu0=4.0 * pi / c ** 2,
                   eps0=1.0 / (4.0 * pi),
                   charge=1.0,
                   electron_mass=1.0,
                   classical_radius=1.0 / c ** 2,
                   preset=PhysicalConstants.Preset.NATURAL)

    @classmethod
    def from_preset(cls, preset: 'PhysicalConstants.Preset') -> 'PhysicalConstants':
        if preset == PhysicalConstants.Preset.NATURAL:
            return cls.natural()
        return cls.si()

    @property
    def hbar(self) -> Number:
        """
        :return: Reduced Planck constant.
        """
        return self._hbar

    @hbar.setter
    def hbar(self, value: Number):
        """
        :param value: Float in range (0, inf].
        :raises:
            OutOfRangeException: If value is not positive.
            WrongStrictTypeException: If value is not a number.
        """
        self._hbar = positive(value)

    @property
    def h(self) -> Number:
        """
        :return: Planck constant 2 pi hbar.
        """
        return 2.0 * pi * self._hbar

    @property
    def c(self) -> Number:
        """
        :return: Speed of light.
        """
        return self._c

    @c.setter
    def c(self, value: Number):
        self._c = positive(value)

    @property
    def mu0(self) -> Number:
        """
        :return: Vacuum permeability.
        """
        return self._mu0

    @mu0.setter
    def mu0(self, value: Number):
        self._mu0 = positive(value)

    @property
    def eps0(self) -> Number:
        """
        :return: Vacuum permittivity.
        """
        return self._eps0

    @eps0.setter
    def eps0(self, value: Number):
        self._eps0 = positive(value)

    @property
    def charge(self) -> Number:
        """
        :return: Elementary charge.
        """
        return self._charge

    @charge.setter
    def charge(self, value: Number):
        self._charge = positive(value)

    @property
    def electron_mass(self) -> Number:
        """
        :return: Electron mass.
        """
        return self._electron_mass

    @electron_mass.setter
    def electron_mass(self, value: Number):
        self._electron_mass = positive(value)

    @property
    def classical_radius(self) -> Number:
        """
        :return: Classical electron radius.
        """
        return self._classical_radius

    @classical_radius.setter
    def classical_radius(self, value: Number):
        self._classical_radius = positive(value)

    @property
    def preset(self) -> 'PhysicalConstants.Preset':
        return self._preset

    @preset.setter
    def preset(self, value: 'PhysicalConstants.Preset'):
        if not isinstance(value, PhysicalConstants.Preset):
            raise WrongStrictTypeException(PhysicalConstants.Preset.__name__, type(value).__name__)
        self._preset = value

    def diffusion_constant(self, mass: Number = None) -> float:
        """
        :param mass: Particle mass, the electron mass if None.
        :return: beta = hbar / 2m.
        """
        mass = self._electron_mass if mass is None else mass
        return self._hbar / (2.0 * mass)

    def bohr_radius(self, mass: Number = None) -> float:
        """
        :param mass: Particle mass, the electron mass if None.
        :return: a0 = 4 pi eps0 hbar^2 / (m q^2).
        """
        mass = self._electron_mass if mass is None else mass
        return 4.0 * pi * self._eps0 * self._hbar ** 2 / (mass * self._charge ** 2)

    def coulomb_constant(self) -> float:
        """
        :return: 1 / (4 pi eps0).
        """
        return 1.0 / (4.0 * pi * self._eps0)
