from numbers import Number
from math import inf

from qsframework.core.exceptions import OutOfRangeException, WrongStrictTypeException, WrongSubTypeException
from .flux import IFluxDiscretization, ConservativeFaceFlux


class FPConstants:
    def __init__(self,
                 safety_factor: Number = 0.9,
                 clip_limit: Number = 1e-6,
                 snapshot_stride: int = 1,
                 discretization: IFluxDiscretization = None):
        """
        :param safety_factor: Fraction of the explicit stability limit a step may use.
        :param clip_limit: Largest clipped probability, relative to the total, before a step is rejected.
        :param snapshot_stride: Evolutions store every snapshot_stride-th density.
        :param discretization: Discretization of the flux terms, centered ConservativeFaceFlux if None.
        """
        self.safety_factor = safety_factor
        self.clip_limit = clip_limit
        self.snapshot_stride = snapshot_stride
        self.discretization = ConservativeFaceFlux() if discretization is None else discretization

    @property
    def safety_factor(self) -> Number:
        """
        :return: Fraction of the explicit stability limit a step may use.
        """
        return self._safety_factor

    @safety_factor.setter
    def safety_factor(self, value: Number):
        """
        :param value: Float in range (0, 1].
        :raises:
            OutOfRangeException: If value is not in range (0, 1].
        """
        if not isinstance(value, Number) or not 0.0 < value <= 1.0:
            raise OutOfRangeException(0.0, 1.0, value)

        self._safety_factor = value

    @property
    def clip_limit(self) -> Number:
        """
        :return: Largest clipped probability relative to the total.
        """
        return self._clip_limit

    @clip_limit.setter
    def clip_limit(self, value: Number):
        if not isinstance(value, Number) or value < 0.0:
            raise OutOfRangeException(0.0, inf, value)

        self._clip_limit = value

    @property
    def snapshot_stride(self) -> int:
        return self._snapshot_stride

    @snapshot_stride.setter
    def snapshot_stride(self, value: int):
        """
        :raises:
            WrongStrictTypeException: If value is not an int.
            OutOfRangeException: If value is smaller than 1.
        """
        if isinstance(value, bool) or not isinstance(value, int):
            raise WrongStrictTypeException(int.__name__, type(value).__name__)
        if value < 1:
            raise OutOfRangeException(1, inf, value)

        self._snapshot_stride = value

    @property
    def discretization(self) -> IFluxDiscretization:
        return self._discretization

    @discretization.setter
    def discretization(self, value: IFluxDiscretization):
        if not isinstance(value, IFluxDiscretization):
            raise WrongSubTypeException(IFluxDiscretization.__name__, type(value).__name__)

        self._discretization = value
