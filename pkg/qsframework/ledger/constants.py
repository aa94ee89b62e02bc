from enum import Enum
from numbers import Number
from typing import Dict

from qsframework.core.exceptions import OutOfRangeException, UnknownTermException, WrongStrictTypeException

# names of the energy terms a ledger state carries
TERM_NAMES = ('V1', 'V2', 'E_k', 'V_noise')


class SignPattern(Enum):
    """
    Coefficient of every term in E0. The net energy is E - E0 + V_noise.
    """
    INTERACTING = "interacting"
    SINGLE_POTENTIAL = "single-potential"

    @property
    def coefficients(self) -> Dict[str, int]:
        if self == SignPattern.SINGLE_POTENTIAL:
            return {'V1': 1, 'V2': 0, 'E_k': -1}
        return {'V1': 1, 'V2': -1, 'E_k': -1}


class LedgerConstants:
    def __init__(self,
                 sign_pattern: SignPattern = SignPattern.INTERACTING,
                 tolerance: Number = 1e-12,
                 rebalance_term: str = 'E_k'):
        """
        :param sign_pattern: Signs of the terms in E0.
        :param tolerance: Relative agreement required between the stored and the recomputed mass.
        :param rebalance_term: Term that absorbs a transition energy when no new terms are given.
        """
        self.sign_pattern = sign_pattern
        self.tolerance = tolerance
        self.rebalance_term = rebalance_term

    @property
    def sign_pattern(self) -> SignPattern:
        return self._sign_pattern

    @sign_pattern.setter
    def sign_pattern(self, value: SignPattern):
        if not isinstance(value, SignPattern):
            raise WrongStrictTypeException(SignPattern.__name__, type(value).__name__)
        self._sign_pattern = value

    @property
    def tolerance(self) -> Number:
        """
        :return: Relative agreement between stored and recomputed mass.
        """
        return self._tolerance

    @tolerance.setter
    def tolerance(self, value: Number):
        """
        :param value: Float in range (0, 1).
        :raises:
            OutOfRangeException: If value is not in range (0, 1).
        """
        if not isinstance(value, Number) or not 0.0 < value < 1.0:
            raise OutOfRangeException(0.0, 1.0, value)
        self._tolerance = value

    @property
    def rebalance_term(self) -> str:
        return self._rebalance_term

    @rebalance_term.setter
    def rebalance_term(self, value: str):
        """
        :raises:
            UnknownTermException: If value names no term with a non-zero coefficient.
        """
        coefficients = self._sign_pattern.coefficients
        if coefficients.get(value, 0) == 0:
            raise UnknownTermException(value, [name for name, sign in coefficients.items() if sign != 0])
        self._rebalance_term = value
