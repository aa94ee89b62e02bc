from .constants import SignPattern, LedgerConstants, TERM_NAMES
from .state import LedgerState, TransitionRecord, ledger_mass, apply_transition
from .relativity import lorentz_factor, gamma_minus_one, time_unit, related_time_units, series_coefficient, \
    RelativisticExpansion, relativistic_expansion, energy_split, spin_energy_split, state_relative_mass
from .history import LedgerHistory
