from .constants import EigenConstants, EvolutionConstants
from .hamiltonian import HamiltonianSpec, Hamiltonian, coupling_integral, hermiticity_defect
from .solvers import ILinearSolver, IterativeSolver, FactorizedSolver
from .eigen import EigenSolution, solve_stationary
from .evolution import SchrodingerTrajectory, evolve, evolve_magnetic
from .madelung import MadelungFields, madelung_fields
from .serialization import write_wavefunction, read_wavefunction
