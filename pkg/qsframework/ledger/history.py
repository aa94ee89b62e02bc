import json
import logging
from numbers import Number
from pathlib import Path
from typing import List, Mapping, Union

from qsframework.core.exceptions import LedgerInvariantException
from .constants import LedgerConstants
from .state import LedgerState, TransitionRecord, apply_transition, ledger_mass

logger = logging.getLogger(__name__)


class LedgerHistory:
    """
    An initial state followed by a chain of transitions, serializable as a JSON event log.
    """

    def __init__(self, initial: LedgerState, constants: LedgerConstants = None):
        self._initial = initial
        self._constants = LedgerConstants(sign_pattern=initial.pattern) if constants is None else constants
        self._transitions: List[TransitionRecord] = []

    @property
    def initial(self) -> LedgerState:
        return self._initial

    @property
    def transitions(self) -> List[TransitionRecord]:
        return list(self._transitions)

    @property
    def current(self) -> LedgerState:
        return self._transitions[-1].after if self._transitions else self._initial

    def __len__(self) -> int:
        return len(self._transitions)

    def transition(self, delta_e: Number, delta_noise: Number = 0.0, new_terms: Mapping[str, Number] = None,
                   delta_v: Number = 0.0) -> TransitionRecord:
        """
        Applies a transition to the current state and appends its record.
        """
        record = apply_transition(self.current, delta_e, delta_noise, new_terms, delta_v, self._constants)
        self._transitions.append(record)
        return record

    def replay(self) -> LedgerState:
        """
        Re-applies every recorded transition from the initial state and verifies the chain.

        :return: The final state.
        :raises:
            LedgerInvariantException: If a state breaks the mass equation, the mass changes or a replayed
                state differs from its record.
        """
        state = self._initial
        mass = ledger_mass(state, self._constants)
        for index, record in enumerate(self._transitions):
            if record.before != state:
                raise LedgerInvariantException(record.before.mass, state.mass)
            replayed = apply_transition(state, record.delta_e, record.delta_noise, record.after.terms,
                                        record.delta_v, self._constants)
            if ledger_mass(replayed.after, self._constants) != mass:
                raise LedgerInvariantException(mass, replayed.after.mass)
            if abs(replayed.after.nu_vib - record.after.nu_vib) > self._constants.tolerance * record.after.nu_vib:
                raise LedgerInvariantException(record.after.recomputed_mass(), replayed.after.recomputed_mass())
            state = record.after
        logger.info("replayed %d transitions, mass %.12g", len(self._transitions), mass)
        return state

    def to_dict(self) -> dict:
        return {
            'initial': self._initial.to_dict(),
            'transitions': [record.to_dict() for record in self._transitions],
            'tolerance': self._constants.tolerance,
            'rebalance_term': self._constants.rebalance_term,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> 'LedgerHistory':
        initial = LedgerState.from_dict(data['initial'])
        constants = LedgerConstants(sign_pattern=initial.pattern, tolerance=data.get('tolerance', 1e-12),
                                    rebalance_term=data.get('rebalance_term', 'E_k'))
        history = cls(initial, constants)
        history._transitions = [TransitionRecord.from_dict(entry) for entry in data['transitions']]
        return history

    @classmethod
    def from_json(cls, text: str) -> 'LedgerHistory':
        return cls.from_dict(json.loads(text))

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json(), encoding='utf-8')

    @classmethod
    def read(cls, path: Union[str, Path]) -> 'LedgerHistory':
        return cls.from_json(Path(path).read_text(encoding='utf-8'))
