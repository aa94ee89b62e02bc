"""
Invariant mass bookkeeping. A state stores its mass m and keeps

    m = (E - E0 + V_noise) / (4 pi R^2 nu_vib nu_rot)

after every transition by solving for the new vibration frequency.
"""
import logging
from dataclasses import dataclass
from math import pi
from numbers import Number
from typing import Dict, Mapping, Optional

import numpy as np

from qsframework.core.exceptions import LedgerInvariantException, OutOfRangeException, UnknownTermException, \
    UnphysicalTransitionException
from .constants import LedgerConstants, SignPattern, TERM_NAMES

logger = logging.getLogger(__name__)


def _complete(terms: Optional[Mapping[str, Number]]) -> Dict[str, float]:
    terms = {} if terms is None else dict(terms)
    unknown = [name for name in terms if name not in TERM_NAMES]
    if unknown:
        raise UnknownTermException(unknown[0], TERM_NAMES)
    return {name: float(terms.get(name, 0.0)) for name in TERM_NAMES}


def _net_energy(energy: float, terms: Mapping[str, float], pattern: SignPattern) -> float:
    transformed = sum(coefficient * terms[name] for name, coefficient in pattern.coefficients.items())
    return energy - transformed + terms['V_noise']


@dataclass(frozen=True)
class LedgerState:
    energy: float
    terms: Dict[str, float]
    nu_vib: float
    nu_rot: float
    radius: float
    mass: float
    pattern: SignPattern = SignPattern.INTERACTING

    def __post_init__(self):
        for value in (self.nu_vib, self.nu_rot, self.radius):
            if not value > 0:
                raise OutOfRangeException(0.0, np.inf, value)
        if not self.net_energy() > 0:
            raise UnphysicalTransitionException(self.net_energy())

    @classmethod
    def create(cls, energy: Number, nu_vib: Number, nu_rot: Number, radius: Number,
               terms: Mapping[str, Number] = None, constants: LedgerConstants = None) -> 'LedgerState':
        """
        Creates a state and derives its invariant mass from the energies.

        :param energy: Total concentrated energy E.
        :param nu_vib: Vibration frequency.
        :param nu_rot: Rotation frequency.
        :param radius: Particle radius.
        :param terms: Named energy terms V1, V2, E_k and V_noise, zero when missing.
        :param constants: Ledger constants, defaults if None.
        :raises:
            OutOfRangeException: If a frequency or the radius is not positive.
            UnknownTermException: If a term name is unknown.
            UnphysicalTransitionException: If the net energy is not positive.
        """
        constants = LedgerConstants() if constants is None else constants
        terms = _complete(terms)
        for value in (nu_vib, nu_rot, radius):
            if not value > 0:
                raise OutOfRangeException(0.0, np.inf, value)
        net = _net_energy(float(energy), terms, constants.sign_pattern)
        mass = net / (4.0 * pi * radius ** 2 * nu_vib * nu_rot)
        return cls(float(energy), terms, float(nu_vib), float(nu_rot), float(radius), float(mass),
                   constants.sign_pattern)

    def net_energy(self) -> float:
        """
        :return: E - E0 + V_noise.
        """
        return _net_energy(self.energy, self.terms, self.pattern)

    def transformed_energy(self) -> float:
        """
        :return: E0, the energy transformed into the system.
        """
        return sum(coefficient * self.terms[name] for name, coefficient in self.pattern.coefficients.items())

    def recomputed_mass(self) -> float:
        return self.net_energy() / (4.0 * pi * self.radius ** 2 * self.nu_vib * self.nu_rot)

    def to_dict(self) -> dict:
        return {'energy': self.energy, 'terms': dict(self.terms), 'nu_vib': self.nu_vib, 'nu_rot': self.nu_rot,
                'radius': self.radius, 'mass': self.mass, 'pattern': self.pattern.value}

    @classmethod
    def from_dict(cls, data: Mapping) -> 'LedgerState':
        return cls(float(data['energy']), _complete(data['terms']), float(data['nu_vib']), float(data['nu_rot']),
                   float(data['radius']), float(data['mass']), SignPattern(data['pattern']))


@dataclass(frozen=True)
class TransitionRecord:
    """
    delta_e is positive for absorption and negative for emission, delta_noise is the noise contribution.
    """
    delta_e: float
    delta_noise: float
    delta_v: float
    before: LedgerState
    after: LedgerState

    def to_dict(self) -> dict:
        return {'delta_e': self.delta_e, 'delta_noise': self.delta_noise, 'delta_v': self.delta_v,
                'before': self.before.to_dict(), 'after': self.after.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping) -> 'TransitionRecord':
        return cls(float(data['delta_e']), float(data['delta_noise']), float(data['delta_v']),
                   LedgerState.from_dict(data['before']), LedgerState.from_dict(data['after']))


def ledger_mass(state: LedgerState, constants: LedgerConstants = None) -> float:
    """
    :return: The stored invariant mass.
    :raises:
        LedgerInvariantException: If the mass recomputed from the energies disagrees with the stored one.
    """
    constants = LedgerConstants() if constants is None else constants
    recomputed = state.recomputed_mass()
    if abs(recomputed - state.mass) > constants.tolerance * abs(state.mass):
        raise LedgerInvariantException(state.mass, recomputed)
    return state.mass


def apply_transition(state: LedgerState, delta_e: Number, delta_noise: Number = 0.0,
                     new_terms: Mapping[str, Number] = None, delta_v: Number = 0.0,
                     constants: LedgerConstants = None) -> TransitionRecord:
    """
    Moves the state by a transition energy while keeping its mass. The new vibration frequency solves the
    mass equation for the new net energy E_net + delta_e + delta_noise.

    :param state: The state before the transition.
    :param delta_e: Transition energy, positive for absorption.
    :param delta_noise: Noise contribution, added to V_noise.
    :param new_terms: Terms after the transition. If None, delta_e is booked on the rebalance term.
    :param delta_v: Velocity change between the two states.
    :param constants: Ledger constants, defaults if None.
    :return: The transition record.
    :raises:
        UnphysicalTransitionException: If the new net energy is not positive.
        LedgerInvariantException: If new_terms do not account for delta_e and delta_noise.
    """
    constants = LedgerConstants() if constants is None else constants
    delta_e, delta_noise = float(delta_e), float(delta_noise)
    target = state.net_energy() + delta_e + delta_noise
    if not target > 0:
        raise UnphysicalTransitionException(target)

    if new_terms is None:
        terms = dict(state.terms)
        name = constants.rebalance_term
        terms[name] -= delta_e / state.pattern.coefficients[name]
        terms['V_noise'] += delta_noise
    else:
        terms = _complete({**state.terms, **dict(new_terms)})
    net = _net_energy(state.energy, terms, state.pattern)
    if abs(net - target) > constants.tolerance * max(abs(target), abs(state.energy)):
        raise LedgerInvariantException(target, net)

    if net == state.net_energy():
        nu_vib = state.nu_vib
    else:
        nu_vib = net / (4.0 * pi * state.radius ** 2 * state.nu_rot * state.mass)
    after = LedgerState(state.energy, terms, nu_vib, state.nu_rot, state.radius, state.mass, state.pattern)
    logger.debug("transition of %.6g J moved nu_vib from %.12g to %.12g", delta_e, state.nu_vib, nu_vib)
    return TransitionRecord(delta_e, delta_noise, float(delta_v), state, after)
