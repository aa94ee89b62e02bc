import json
import logging
from dataclasses import dataclass, field
from numbers import Number
from pathlib import Path
from typing import Callable, List, Optional, Union

from qsframework.core.exceptions import OutOfRangeException
from qsframework.fields.field import ScalarField, VectorField
from qsframework.fields.serialization import write_field
from .constants import FPConstants
from .state import FPState
from .stepper import fp_forward_step, stability_bound

logger = logging.getLogger(__name__)

# signature of a drift update: state -> drift for the next step
DriftUpdate = Callable[[FPState], VectorField]


@dataclass
class FPTrajectory:
    """
    Snapshots of a forward evolution together with its diagnostic log.
    """
    final: FPState
    times: List[float] = field(default_factory=list)
    snapshots: List[ScalarField] = field(default_factory=list)
    log: List[dict] = field(default_factory=list)

    def diagnostics(self) -> dict:
        masses = [entry['mass'] for entry in self.log]
        return {
            'steps': self.log[-1]['step'] if self.log else 0,
            'final_time': self.final.t,
            'max_mass_drift': max(abs(m - masses[0]) for m in masses) if masses else 0.0,
            'clipped_nodes': sum(entry['clipped_nodes'] for entry in self.log),
            'entries': self.log,
        }

    def write(self, directory: Union[str, Path]) -> None:
        """
        Writes one field file per snapshot and fp_log.json into directory.
        """
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for index, snapshot in enumerate(self.snapshots):
            write_field(directory / f"rho_{index:06d}.txt", snapshot)
        with open(directory / 'fp_log.json', 'w', encoding='utf-8') as stream:
            json.dump(self.diagnostics(), stream, indent=2, sort_keys=True)


class FPEvolution:
    """
    Repeated forward steps with snapshots every snapshot_stride steps.
    """

    def __init__(self, constants: FPConstants = None):
        self._constants = FPConstants() if constants is None else constants

    @property
    def constants(self) -> FPConstants:
        return self._constants

    def run(self, state: FPState, n_steps: int, dt: Optional[Number] = None,
            drift_update: Optional[DriftUpdate] = None) -> FPTrajectory:
        """
        :param state: Initial state.
        :param n_steps: Number of forward steps.
        :param dt: Time step, the stability bound of the initial state if None.
        :param drift_update: Optional callback returning the drift for the next step.
        :return: The trajectory, including the initial snapshot.
        :raises:
            OutOfRangeException: If n_steps is negative.
            StabilityBoundException: If a step exceeds the stability bound.
        """
        if n_steps < 0:
            raise OutOfRangeException(0, float('inf'), n_steps)
        if dt is None:
            dt = stability_bound(state, self._constants.safety_factor)
            if dt == float('inf'):
                raise OutOfRangeException(0.0, float('inf'), dt)
        initial_mass = state.total_probability()
        trajectory = FPTrajectory(final=state)
        self._record(trajectory, state, 0, initial_mass, 0)
        clipped = 0

        for step in range(1, n_steps + 1):
            if drift_update is not None:
                state = state.with_drift(drift_update(state))
            state = fp_forward_step(state, dt, self._constants)
            clipped += state.clipped_nodes
            if step % self._constants.snapshot_stride == 0 or step == n_steps:
                self._record(trajectory, state, step, initial_mass, clipped)
                clipped = 0

        trajectory.final = state
        logger.info("evolved %d steps to t = %g, mass drift %.3g", n_steps, state.t,
                    state.total_probability() - initial_mass)
        return trajectory

    @staticmethod
    def _record(trajectory: FPTrajectory, state: FPState, step: int, initial_mass: float,
                clipped: int) -> None:
        mass = state.total_probability()
        trajectory.times.append(state.t)
        trajectory.snapshots.append(state.rho)
        trajectory.log.append({'step': step, 't': state.t, 'mass': mass, 'mass_drift': mass - initial_mass,
                               'clipped_nodes': clipped})
