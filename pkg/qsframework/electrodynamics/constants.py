from enum import Enum
from math import inf, pi
from numbers import Number

import scipy.constants

from qsframework.core.constants import PhysicalConstants, VACUUM_TOLERANCE, positive
from qsframework.core.exceptions import OutOfRangeException, WrongStrictTypeException

# elementary charge and classical electron radius as used for the magnetic mass
ELECTRON_CHARGE = 1.602189e-19
CLASSICAL_RADIUS = 2.8179403e-15


class EMConstants:
    class BiotSavartConvention(Enum):
        """
        INVERSE_C scales the Biot-Savart field by 1/c, SI by mu0 / 4 pi.
        """
        INVERSE_C = "inverse-c"
        SI = "si"

    def __init__(self,
                 mu0: Number = 4e-7 * pi,
                 eps0: Number = None,
                 c: Number = scipy.constants.c,
                 charge: Number = ELECTRON_CHARGE,
                 r_min: Number = CLASSICAL_RADIUS,
                 convention: 'EMConstants.BiotSavartConvention' = BiotSavartConvention.INVERSE_C):
        """
        :param mu0: Vacuum permeability.
        :param eps0: Vacuum permittivity, 1 / (mu0 c^2) if None.
        :param c: Speed of light.
        :param charge: Charge q of the particle.
        :param r_min: Radius of the quantum-sized volume.
        :param convention: Prefactor of the Biot-Savart field.
        :raises:
            OutOfRangeException: If a value is not positive or mu0 eps0 c^2 differs from 1.
            WrongStrictTypeException: If a value is not a number.
        """
        self.mu0 = mu0
        self.c = c
        self.eps0 = 1.0 / (mu0 * c * c) if eps0 is None else eps0
        self.charge = charge
        self.r_min = r_min
        self.convention = convention

        vacuum = self.mu0 * self.eps0 * self.c ** 2
        if abs(vacuum - 1.0) > VACUUM_TOLERANCE:
            raise OutOfRangeException(1.0 - VACUUM_TOLERANCE, 1.0 + VACUUM_TOLERANCE, vacuum)

    @classmethod
    def from_physical(cls, physical: PhysicalConstants,
                      convention: 'EMConstants.BiotSavartConvention' = BiotSavartConvention.INVERSE_C
                      ) -> 'EMConstants':
        """
        Takes mu0, eps0, c, the charge and the classical radius from a physical constants preset.
        """
        return cls(physical.mu0, physical.eps0, physical.c, physical.charge, physical.classical_radius, convention)

    @property
    def mu0(self) -> Number:
        return self._mu0

    @mu0.setter
    def mu0(self, value: Number):
        self._mu0 = positive(value)

    @property
    def eps0(self) -> Number:
        return self._eps0

    @eps0.setter
    def eps0(self, value: Number):
        self._eps0 = positive(value)

    @property
    def c(self) -> Number:
        return self._c

    @c.setter
    def c(self, value: Number):
        self._c = positive(value)

    @property
    def charge(self) -> Number:
        return self._charge

    @charge.setter
    def charge(self, value: Number):
        """
        :raises:
            OutOfRangeException: If value is zero.
            WrongStrictTypeException: If value is not a number.
        """
        if isinstance(value, bool) or not isinstance(value, Number):
            raise WrongStrictTypeException(Number.__name__, type(value).__name__)
        if value == 0:
            raise OutOfRangeException(-inf, inf, value)
        self._charge = value

    @property
    def r_min(self) -> Number:
        """
        :return: Radius of the quantum-sized volume.
        """
        return self._r_min

    @r_min.setter
    def r_min(self, value: Number):
        self._r_min = positive(value)

    @property
    def convention(self) -> 'EMConstants.BiotSavartConvention':
        return self._convention

    @convention.setter
    def convention(self, value: 'EMConstants.BiotSavartConvention'):
        if not isinstance(value, EMConstants.BiotSavartConvention):
            raise WrongStrictTypeException(EMConstants.BiotSavartConvention.__name__, type(value).__name__)
        self._convention = value

    @property
    def biot_savart_prefactor(self) -> float:
        """
        :return: 1/c or mu0 / 4 pi, depending on the convention.
        """
        if self._convention == EMConstants.BiotSavartConvention.SI:
            return self._mu0 / (4.0 * pi)
        return 1.0 / self._c

    @property
    def radiation_coefficient(self) -> float:
        """
        :return: mu0 q^2 / (4 pi c^2), the SI reading of q^2 / c^3 in the radiated power.
        """
        return self._mu0 * self._charge ** 2 / (4.0 * pi * self._c ** 2)
