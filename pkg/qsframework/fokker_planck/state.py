from dataclasses import dataclass, replace

import numpy as np

from qsframework.core.exceptions import GridMismatchException, OutOfRangeException
from qsframework.fields.field import ScalarField, VectorField


@dataclass(frozen=True)
class FPState:
    """
    A density together with the total drift (b + v for the forward, b* + v for the backward equation)
    and the diffusion constant it is evolved with.
    """
    rho: ScalarField
    drift: VectorField
    beta: float
    t: float = 0.0
    clipped_nodes: int = 0

    def __post_init__(self):
        self.rho.check_grid(self.drift, 'drift')
        if self.drift.components != self.rho.grid.ndim:
            raise GridMismatchException('rho', 'drift')
        if self.beta < 0:
            raise OutOfRangeException(0.0, np.inf, self.beta)
        if np.min(self.rho.values) < 0:
            raise OutOfRangeException(0.0, np.inf, float(np.min(self.rho.values)))

    @property
    def grid(self):
        return self.rho.grid

    def total_probability(self) -> float:
        return float(self.rho.integral())

    def with_drift(self, drift: VectorField) -> 'FPState':
        return replace(self, drift=drift)
