"""
Runs one configured experiment and writes its run directory

    <output>/<experiment>-<first 8 hex digits of sha256(seed)>/
        manifest.json     configuration echo, versions, seed and wall time
        results.csv       result columns, %.17g
        results.json      summary
        invariants.json   invariant checks and the overall verdict
"""
import hashlib
import json
import logging
import platform
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import scipy
import yaml

import qsframework
from qsframework.core.exceptions import DegenerateDensityException, DimensionException, EmptyCollectionException, \
    GridMismatchException, GuardRadiusException, LedgerInvariantException, NegativeDensityException, \
    NoAsymptoteException, NodalSurfaceException, NoneValueException, NonFiniteDriftException, \
    NonFiniteValueException, NormalizationException, OutOfRangeException, SolverConvergenceException, \
    StabilityBoundException, SuperluminalException, TooShortEnsembleException, UnknownTermException, \
    UnphysicalTransitionException, WrongStrictTypeException, WrongSubTypeException
from qsframework.langevin.serialization import FLOAT_FORMAT
from .config import ExperimentConfig, output_directory, thread_count
from .experiment import ExperimentResult, registry

logger = logging.getLogger(__name__)

EXIT_PASSED = 0
EXIT_INVARIANT_FAILED = 1
EXIT_CONFIGURATION = 2

# raised when the parameters of a run describe an invalid or unstable setup
PARAMETER_ERRORS = (OutOfRangeException, WrongStrictTypeException, WrongSubTypeException, NoneValueException,
                    EmptyCollectionException, GridMismatchException, DimensionException, StabilityBoundException,
                    TooShortEnsembleException, NoAsymptoteException, SuperluminalException,
                    UnphysicalTransitionException, GuardRadiusException, UnknownTermException)

# raised when a well-formed run breaks down numerically
RUN_FAILURES = (SolverConvergenceException, NegativeDensityException, NonFiniteDriftException,
                NonFiniteValueException, NormalizationException, DegenerateDensityException, NodalSurfaceException,
                LedgerInvariantException)


@dataclass(frozen=True)
class RunReport:
    directory: Path
    result: ExperimentResult
    wall_time: float

    @property
    def exit_code(self) -> int:
        return EXIT_PASSED if self.result.passed else EXIT_INVARIANT_FAILED


def seed_hash(seed: int) -> str:
    return hashlib.sha256(str(seed).encode('ascii')).hexdigest()[:8]


def run_directory(config: ExperimentConfig, root: Union[str, Path]) -> Path:
    return Path(root) / f"{config.experiment}-{seed_hash(config.seed)}"


def jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def _dump(path: Path, data: Any) -> None:
    with open(path, 'w', encoding='utf-8') as stream:
        json.dump(data, stream, indent=2, sort_keys=True, default=jsonable)
        stream.write('\n')


def write_columns(path: Union[str, Path], columns: Dict[str, np.ndarray]) -> None:
    """
    Writes equally long columns as CSV with a header line.
    """
    names = list(columns)
    rows = np.column_stack([np.asarray(columns[name], dtype=float) for name in names]) if names else np.empty((0, 0))
    np.savetxt(path, rows, fmt=FLOAT_FORMAT, delimiter=',', header=','.join(names), comments='')


def versions() -> Dict[str, str]:
    return {'qsframework': qsframework.__version__, 'numpy': np.__version__, 'scipy': scipy.__version__,
            'pyyaml': yaml.__version__, 'python': platform.python_version()}


def failure_report(error: Exception) -> Dict[str, Any]:
    """
    The error of a run that broke down, with the step and residual history when the error carries them.
    """
    report = {'type': type(error).__name__, 'message': str(error)}
    if getattr(error, 'step', None) is not None:
        report['step'] = error.step
    if getattr(error, 'history', None):
        report['history'] = list(error.history)
    return report


def run_experiment(config: ExperimentConfig, threads: Optional[int] = None,
                   output: Optional[Union[str, Path]] = None) -> RunReport:
    """
    :param config: A validated configuration.
    :param threads: Thread cap, QSF_THREADS or 1 if None.
    :param output: Output root, QSF_OUTPUT_DIR or the configured directory if None.
    :return: The report with the run directory and the experiment result.
    :raises:
        ConfigurationException: If QSF_THREADS is invalid.
        One of RUN_FAILURES: If the run breaks down. invariants.json then records the error as failed.
    """
    experiment = registry()[config.experiment]
    threads = thread_count(threads)
    directory = run_directory(config, output_directory(config, output))
    directory.mkdir(parents=True, exist_ok=True)
    parameters = config.resolved_parameters()

    started = datetime.now(timezone.utc)
    clock = time.perf_counter()

    def write_manifest():
        _dump(directory / 'manifest.json', {'config': config.to_dict(), 'parameters': parameters,
                                            'seed': config.seed, 'threads': threads, 'versions': versions(),
                                            'started': started.isoformat(),
                                            'wall_time': time.perf_counter() - clock})

    logger.info("running %s with seed %d on %d threads", experiment, config.seed, threads)
    try:
        result = experiment.run(parameters, config.physical_constants(), config.seed, threads)
    except RUN_FAILURES as error:
        logger.error("%s broke down: %s", experiment, error)
        _dump(directory / 'invariants.json', {'experiment': config.experiment, 'seed': config.seed,
                                              'passed': False, 'checks': {}, 'error': failure_report(error)})
        write_manifest()
        raise
    wall_time = time.perf_counter() - clock

    write_columns(directory / 'results.csv', result.columns)
    _dump(directory / 'results.json', {'experiment': config.experiment, 'seed': config.seed,
                                       'summary': result.summary})
    _dump(directory / 'invariants.json', {'experiment': config.experiment, 'seed': config.seed,
                                          'passed': result.passed,
                                          'checks': {name: check.to_dict()
                                                     for name, check in result.invariants.items()}})
    for name, text in result.artifacts.items():
        (directory / name).write_text(text, encoding='utf-8')
    write_manifest()

    if result.passed:
        logger.info("%s passed %d invariant checks in %.2f s", experiment, len(result.invariants), wall_time)
    else:
        logger.warning("%s failed %s", experiment, ", ".join(result.failures()))
    return RunReport(directory, result, wall_time)
