from .constants import EMConstants, ELECTRON_CHARGE, CLASSICAL_RADIUS
from .current import TransitionCurrent, transition_current, four_current
from .magnetic import speed_of, biot_savart_point, magnetic_field_from_current, magnetic_mass, magnetic_energy, \
    magnetic_energy_quadrature
from .radiation import larmor_power, poynting_and_larmor, flux_through_sphere, transition_time, mean_acceleration, \
    radiated_energy, radiated_energy_from_history, motional_electric_field, radiation_electric_field
from .spin import volume_average, spin_transition_bfield, interaction_potential, interaction_potentials
from .budget import em_budget
