"""
Time evolution by the implicit midpoint rule

    (I + i H dt / 2 hbar) psi' = (I - i H dt / 2 hbar) psi

which preserves the norm for Hermitian H up to the tolerance of the linear solves.
"""
import json
import logging
from dataclasses import dataclass, field
from numbers import Number
from pathlib import Path
from typing import List, Union

import numpy as np
import scipy.sparse as sp

from qsframework.core.exceptions import GridMismatchException, NoneValueException, OutOfRangeException, \
    SolverConvergenceException
from qsframework.fields.wavefunction import WaveFunction
from .constants import EvolutionConstants
from .hamiltonian import Hamiltonian, HamiltonianSpec, coupling_integral
from .serialization import write_wavefunction
from .solvers import FactorizedSolver, ILinearSolver, IterativeSolver

logger = logging.getLogger(__name__)


@dataclass
class SchrodingerTrajectory:
    """
    Snapshots of an evolution together with a ledger of norm, energy and overlap with the initial state.
    """
    final: WaveFunction
    times: List[float] = field(default_factory=list)
    snapshots: List[WaveFunction] = field(default_factory=list)
    ledger: List[dict] = field(default_factory=list)
    max_step_norm_drift: float = 0.0

    def diagnostics(self) -> dict:
        norms = [entry['norm'] for entry in self.ledger]
        energies = [entry['energy'] for entry in self.ledger]
        reference = abs(energies[0]) if energies and energies[0] != 0.0 else 1.0
        return {
            'steps': self.ledger[-1]['step'] if self.ledger else 0,
            'max_step_norm_drift': self.max_step_norm_drift,
            'max_norm_drift': max(abs(n - norms[0]) for n in norms) if norms else 0.0,
            'max_energy_drift': max(abs(e - energies[0]) for e in energies) / reference if energies else 0.0,
            'entries': self.ledger,
        }

    def write(self, directory: Union[str, Path]) -> None:
        """
        Writes one wave function file per snapshot and schrodinger_log.json into directory.
        """
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for index, snapshot in enumerate(self.snapshots):
            write_wavefunction(directory / f"psi_{index:06d}.txt", snapshot)
        with open(directory / 'schrodinger_log.json', 'w', encoding='utf-8') as stream:
            json.dump(self.diagnostics(), stream, indent=2, sort_keys=True)


def _solver(constants: EvolutionConstants) -> ILinearSolver:
    if constants.solver == EvolutionConstants.Solver.FACTORIZED:
        return FactorizedSolver()
    return IterativeSolver(constants.solver_tolerance, constants.max_iterations)


def _record(trajectory: SchrodingerTrajectory, hamiltonian: Hamiltonian, reduced: np.ndarray, initial: np.ndarray,
            shift: float, step: int, t: float, psi: WaveFunction) -> None:
    weight = hamiltonian.weight
    norm = float(weight * np.vdot(reduced, reduced).real)
    trajectory.times.append(t)
    trajectory.snapshots.append(psi)
    trajectory.ledger.append({
        'step': step,
        't': t,
        'norm': norm,
        'energy': float(weight * np.vdot(reduced, hamiltonian.local_matrix @ reduced).real) + shift * norm,
        'overlap': float(abs(weight * np.vdot(initial, reduced))),
    })


def evolve(spec: HamiltonianSpec, psi0: WaveFunction, dt: Number, n_steps: int,
           constants: EvolutionConstants = None) -> SchrodingerTrajectory:
    """
    The uniform terms E_k and J commute with H and are applied as the exact phase exp(-i (E_k + J) dt / hbar).

    :param spec: The Hamiltonian terms. With a volume velocity the coupling integral is recomputed every step.
    :param psi0: Initial wave function on the grid of spec.
    :param dt: Time step.
    :param n_steps: Number of steps.
    :param constants: Evolution constants, defaults if None.
    :return: The trajectory including the initial state.
    :raises:
        OutOfRangeException: If dt is not positive or n_steps is negative.
        GridMismatchException: If psi0 lives on another grid.
        SolverConvergenceException: If a linear solve fails or the norm leaves its tolerance, with the step index.
    """
    if not dt > 0:
        raise OutOfRangeException(0.0, np.inf, dt)
    if n_steps < 0:
        raise OutOfRangeException(0, np.inf, n_steps)
    if psi0.grid != spec.grid:
        raise GridMismatchException('psi0', 'V')
    constants = EvolutionConstants() if constants is None else constants

    hamiltonian = Hamiltonian(spec, psi0.mass, psi0.hbar)
    local = hamiltonian.local_matrix
    factor = 0.5j * dt / psi0.hbar
    solver = _solver(constants)
    solver.prepare(sp.identity(spec.grid.size, format='csr') + factor * local)

    def shift_for(psi: WaveFunction) -> float:
        if spec.volume_velocity is None:
            return hamiltonian.shift
        return float(spec.kinetic_energy or 0.0) + coupling_integral(psi, spec.volume_velocity)

    psi = psi0
    reduced = hamiltonian.to_reduced(psi0.amplitudes)
    initial = reduced.copy()
    shift = shift_for(psi)
    initial_norm = float(hamiltonian.weight * np.vdot(reduced, reduced).real)
    trajectory = SchrodingerTrajectory(final=psi0)
    _record(trajectory, hamiltonian, reduced, initial, shift, 0, 0.0, psi0)

    previous_norm = initial_norm
    for step in range(1, n_steps + 1):
        try:
            reduced = solver.solve(reduced - factor * (local @ reduced), reduced)
        except SolverConvergenceException as error:
            raise SolverConvergenceException(str(error), error.history, step)
        reduced = reduced * np.exp(-1j * shift * dt / psi0.hbar)
        norm = float(hamiltonian.weight * np.vdot(reduced, reduced).real)
        if not np.isfinite(norm) or abs(norm - initial_norm) > constants.norm_tolerance:
            raise SolverConvergenceException(f"norm drifted to {norm!r}", step=step)
        trajectory.max_step_norm_drift = max(trajectory.max_step_norm_drift, abs(norm - previous_norm))
        previous_norm = norm

        psi = psi0.with_amplitudes(hamiltonian.from_reduced(reduced))
        shift = shift_for(psi)
        if step % constants.snapshot_stride == 0 or step == n_steps:
            _record(trajectory, hamiltonian, reduced, initial, shift, step, step * dt, psi)

    trajectory.final = psi
    logger.info("evolved %d steps of %g, largest norm change per step %.3g", n_steps, dt,
                trajectory.max_step_norm_drift)
    return trajectory


def evolve_magnetic(spec: HamiltonianSpec, psi0: WaveFunction, dt: Number, n_steps: int,
                    constants: EvolutionConstants = None) -> SchrodingerTrajectory:
    """
    Evolution under minimal coupling to the vector potential of spec.

    :raises:
        NoneValueException: If spec carries no vector potential.
    """
    if spec.vector_potential is None:
        raise NoneValueException('A')
    return evolve(spec, psi0, dt, n_steps, constants)
