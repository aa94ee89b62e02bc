"""
Experiment configuration files. A configuration is a YAML mapping

    experiment: diffusion-recovery
    seed: 1234
    unit_preset: SI
    parameters:
      n_paths: 100000
    output_dir: runs

Environment variables QSF_OUTPUT_DIR and QSF_THREADS override the output directory and the thread cap.
"""
import os
from dataclasses import dataclass, field
from numbers import Number
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import yaml

from qsframework.core.constants import PhysicalConstants
from qsframework.core.exceptions import ConfigurationException
from .experiment import REQUIRED, registry

OUTPUT_ENV = 'QSF_OUTPUT_DIR'
THREADS_ENV = 'QSF_THREADS'
DEFAULT_OUTPUT_DIR = 'runs'
REQUIRED_KEYS = ('experiment', 'seed')
OPTIONAL_KEYS = ('unit_preset', 'parameters', 'output_dir')
MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    seed: int
    unit_preset: PhysicalConstants.Preset = PhysicalConstants.Preset.SI
    parameters: Dict[str, Any] = field(default_factory=dict)
    output_dir: str = DEFAULT_OUTPUT_DIR

    def to_dict(self) -> dict:
        return {'experiment': self.experiment, 'seed': self.seed, 'unit_preset': self.unit_preset.value,
                'parameters': dict(self.parameters), 'output_dir': self.output_dir}

    def physical_constants(self) -> PhysicalConstants:
        return PhysicalConstants.from_preset(self.unit_preset)

    def resolved_parameters(self) -> Dict[str, Any]:
        """
        :return: The declared defaults of the experiment updated with the configured parameters.
        """
        merged = dict(registry()[self.experiment].parameters())
        merged.update(self.parameters)
        return merged


def parse_config(text: str, source: str = '<string>') -> Any:
    """
    :return: The parsed YAML document.
    :raises:
        ConfigurationException: If the text is no valid YAML, with line and column of the problem.
    """
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as error:
        mark = getattr(error, 'problem_mark', None)
        problem = getattr(error, 'problem', None) or str(error)
        if mark is not None:
            raise ConfigurationException([f"{source}:{mark.line + 1}:{mark.column + 1}: {problem}"])
        raise ConfigurationException([f"{source}: {problem}"])


def validate(data: Any) -> List[str]:
    """
    Schema-level check of a parsed configuration.

    :return: Diagnostics, empty for a valid configuration.
    """
    if not isinstance(data, Mapping):
        return ["configuration must be a mapping"]
    diagnostics = []
    for key in REQUIRED_KEYS:
        if key not in data:
            diagnostics.append(f"missing key '{key}'")
    for key in data:
        if key not in REQUIRED_KEYS + OPTIONAL_KEYS:
            diagnostics.append(f"unknown key '{key}'")

    seed = data.get('seed')
    if 'seed' in data and (isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < MAX_SEED):
        diagnostics.append(f"'seed' must be an integer in [0, 2^64), got {seed!r}")

    presets = [preset.value for preset in PhysicalConstants.Preset]
    if 'unit_preset' in data and data['unit_preset'] not in presets:
        diagnostics.append(f"'unit_preset' must be one of {presets}, got {data['unit_preset']!r}")
    if 'output_dir' in data and not isinstance(data['output_dir'], str):
        diagnostics.append("'output_dir' must be a string")

    parameters = data.get('parameters', {})
    if parameters is None:
        parameters = {}
    if not isinstance(parameters, Mapping):
        diagnostics.append("'parameters' must be a mapping")
        parameters = {}

    experiments = registry()
    name = data.get('experiment')
    if 'experiment' in data and name not in experiments:
        diagnostics.append(f"unknown experiment {name!r}, expected one of {sorted(experiments)}")
    elif name in experiments:
        declared = experiments[name].parameters()
        for key in parameters:
            if key not in declared:
                diagnostics.append(f"unknown parameter '{key}' for {name}")
        for key, default in declared.items():
            if default is REQUIRED and key not in parameters:
                diagnostics.append(f"missing parameter '{key}' for {name}")
            value = parameters.get(key)
            numeric = isinstance(value, Number) and not isinstance(value, bool)
            if isinstance(default, Number) and key in parameters and not numeric:
                diagnostics.append(f"parameter '{key}' for {name} must be a number, got {value!r}")
    return diagnostics


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    :raises:
        ConfigurationException: If the file cannot be parsed or fails validation.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationException([f"{path}: no such file"])
    return config_from_dict(parse_config(path.read_text(encoding='utf-8'), str(path)))


def config_from_dict(data: Any) -> ExperimentConfig:
    """
    :raises:
        ConfigurationException: If data fails validation.
    """
    diagnostics = validate(data)
    if diagnostics:
        raise ConfigurationException(diagnostics)
    return ExperimentConfig(experiment=data['experiment'],
                            seed=int(data['seed']),
                            unit_preset=PhysicalConstants.Preset(data.get('unit_preset', 'SI')),
                            parameters=dict(data.get('parameters') or {}),
                            output_dir=data.get('output_dir', DEFAULT_OUTPUT_DIR))


def output_directory(config: ExperimentConfig, override: Optional[str] = None) -> Path:
    """
    :return: override, else QSF_OUTPUT_DIR, else the configured directory.
    """
    if override is not None:
        return Path(override)
    return Path(os.environ.get(OUTPUT_ENV, config.output_dir))


def thread_count(override: Optional[int] = None) -> int:
    """
    :return: override, else QSF_THREADS, else 1.
    :raises:
        ConfigurationException: If QSF_THREADS is no positive integer.
    """
    if override is not None:
        return max(1, int(override))
    value = os.environ.get(THREADS_ENV)
    if value is None:
        return 1
    try:
        threads = int(value)
    except ValueError:
        raise ConfigurationException([f"{THREADS_ENV} must be a positive integer, got {value!r}"])
    if threads < 1:
        raise ConfigurationException([f"{THREADS_ENV} must be a positive integer, got {value!r}"])
    return threads
