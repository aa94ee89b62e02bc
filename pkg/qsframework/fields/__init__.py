from .grid import Grid
from .field import Field, ScalarField, VectorField, FieldPair
from .wavefunction import WaveFunction
from .differencing import gradient, divergence, laplacian, advect, laplacian_matrix, second_difference_matrix
from .velocities import density_from_wavefunction, charge_mass_density, osmotic_velocity, phase_and_amplitude, \
    phase_gradient, transition_velocity, current_velocity, drift_fields, DENSITY_FLOOR
from .spin import SpinAxis, spin_drift, spin_current_density, clifford_identity_residual
from .serialization import write_field, read_field, export_csv
