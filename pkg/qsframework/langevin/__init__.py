from .config import StepperConfig
from .drift import IDrift, ZeroDrift, CallableDrift, FieldDrift, ForcedDrift, as_drift
from .stepper import PathEnsemble, euler_maruyama_step, path_generator, simulate_ensemble, step_variance
from .operators import mean_forward_derivative, mean_backward_derivative, mean_acceleration, position_field
from .diffusion import friction_coefficient, quantum_energy, alpha_relaxation, solve_alpha, MSDCurve, \
    DiffusionFit, mean_squared_displacement, msd_and_diffusion, transition_energy_from_msd
from .serialization import export_ensemble_csv, export_msd_csv, ensemble_summary, write_summary
