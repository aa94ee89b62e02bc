from .flux import IFluxDiscretization, ConservativeFaceFlux, NodalDifferences
from .constants import FPConstants
from .state import FPState
from .stepper import stability_bound, fp_forward_step, fp_backward_step
from .evolution import FPEvolution, FPTrajectory
from .residuals import continuity_residual, stationarity_residual, coupled_field_residuals, StationaryResiduals, \
    stationary_residuals, half_sum_residual, half_difference_residual
