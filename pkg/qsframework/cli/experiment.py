from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from numbers import Number
from typing import Any, Dict, List

import numpy as np

from qsframework.core.constants import PhysicalConstants


class _Required:
    def __repr__(self) -> str:
        return "REQUIRED"


# marks a parameter without default
REQUIRED = _Required()


@dataclass(frozen=True)
class InvariantCheck:
    """
    A measured value compared against its threshold, passed when value <= threshold.
    """
    value: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.threshold)

    def to_dict(self) -> dict:
        return {'value': float(self.value), 'threshold': float(self.threshold), 'passed': self.passed}


@dataclass
class ExperimentResult:
    """
    columns are written to results.csv, summary to results.json and invariants to invariants.json.
    artifacts maps further file names in the run directory to their text.
    """
    columns: Dict[str, np.ndarray] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)
    invariants: Dict[str, InvariantCheck] = field(default_factory=dict)
    artifacts: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.invariants.values())

    def failures(self) -> List[str]:
        return [name for name, check in self.invariants.items() if not check.passed]


class IExperiment(ABC):
    """
    Interface of a named experiment the runner can execute.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """
        :return: The name used in configuration files and on the command line.
        """
        pass

    @abstractmethod
    def parameters(self) -> Dict[str, Any]:
        """
        :return: Every accepted parameter with its default, REQUIRED if it has none.
        """
        pass

    @abstractmethod
    def run(self, parameters: Dict[str, Any], physical: PhysicalConstants, seed: int,
            threads: int) -> ExperimentResult:
        """
        :param parameters: Parameters with defaults filled in.
        :param physical: Physical constants of the configured unit preset.
        :param seed: Master seed.
        :param threads: Thread cap, results must not depend on it.
        :return: Result columns, summary and invariant checks.
        """
        pass

    def __repr__(self) -> str:
        return self.name


def relative_error(value: Number, expected: Number) -> float:
    return float(abs(value - expected) / abs(expected))


def registry() -> Dict[str, IExperiment]:
    """
    :return: All experiments by name.
    """
    from .experiments import EXPERIMENTS
    return {experiment.name: experiment for experiment in EXPERIMENTS}
