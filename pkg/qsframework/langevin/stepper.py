import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from numbers import Number
from typing import Union, Callable, Optional

import numpy as np

from qsframework.core.exceptions import NonFiniteDriftException, OutOfRangeException, NonFiniteValueException
from qsframework.fields.field import VectorField
from .config import StepperConfig
from .drift import IDrift, ForcedDrift, as_drift

logger = logging.getLogger(__name__)

# paths integrated together; results do not depend on it
BLOCK_SIZE = 4096


def euler_maruyama_step(position: np.ndarray, drift: np.ndarray, beta: Number, dt: Number,
                        noise: np.ndarray) -> np.ndarray:
    """
    pos' = pos + drift dt + sqrt(2 beta dt) noise.

    :param noise: Standard normal samples of the position shape.
    :raises:
        OutOfRangeException: If dt is not positive.
    """
    if not dt > 0:
        raise OutOfRangeException(0.0, np.inf, dt)
    return position + drift * dt + np.sqrt(2.0 * beta * dt) * noise


def path_generator(master_seed: int, path_index: int) -> np.random.Generator:
    """
    Counter-based substream of one path: a Philox generator keyed by the master seed whose 256-bit counter
    starts at path_index * 2^128. Streams of different paths never overlap.
    """
    return np.random.Generator(np.random.Philox(key=master_seed, counter=path_index << 128))


@dataclass(frozen=True)
class PathEnsemble:
    """
    Recorded positions of n_paths trajectories with shape (n_paths, n_samples, dim).
    """
    times: np.ndarray
    positions: np.ndarray
    config: StepperConfig

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0):
            raise OutOfRangeException(0.0, np.inf, float(np.min(np.diff(self.times))))
        non_finite = int(np.count_nonzero(~np.isfinite(self.positions)))
        if non_finite > 0:
            raise NonFiniteValueException('positions', non_finite)

    @property
    def n_paths(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[2]

    def displacements(self) -> np.ndarray:
        return self.positions - self.positions[:, :1, :]


def _simulate_block(config: StepperConfig, drift: IDrift, first: int, start: np.ndarray,
                    out: np.ndarray) -> None:
    count = start.shape[0]
    noise = np.stack([path_generator(config.master_seed, first + p).standard_normal((config.n_steps, config.dim))
                      for p in range(count)])
    position = start.copy()
    out[:, 0] = position
    sample = 1
    for step in range(config.n_steps):
        velocity = drift.evaluate(position, step * config.dt)
        finite = np.all(np.isfinite(velocity), axis=1)
        if not np.all(finite):
            raise NonFiniteDriftException(first + int(np.argmin(finite)), step)
        position = euler_maruyama_step(position, velocity, config.beta, config.dt, noise[:, step])
        if (step + 1) % config.record_stride == 0:
            out[:, sample] = position
            sample += 1
    logger.debug("paths %d..%d done", first, first + count - 1)


def simulate_ensemble(config: StepperConfig,
                      drift: Union[IDrift, VectorField, Callable, None] = None,
                      initial_positions: Optional[np.ndarray] = None,
                      threads: int = 1) -> PathEnsemble:
    """
    Integrates all paths with the Euler-Maruyama scheme.
    Each path draws its noise from its own substream, so the result is independent of threads.

    :param config: The stepper configuration.
    :param drift: Drift field, callback or IDrift, free diffusion if None.
    :param initial_positions: Start positions (n_paths, dim) or one position for all paths, origin if None.
    :param threads: Number of worker threads.
    :return: The ensemble.
    :raises:
        NonFiniteDriftException: If the drift of a path is not finite.
    """
    drift = as_drift(drift)
    if config.external_force is not None:
        drift = ForcedDrift(drift, config.external_force, config.xi)

    start = np.zeros((config.n_paths, config.dim))
    if initial_positions is not None:
        start = start + np.asarray(initial_positions, dtype=float)

    steps = config.sample_steps()
    positions = np.empty((config.n_paths, steps.size, config.dim))
    blocks = range(0, config.n_paths, BLOCK_SIZE)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        futures = [executor.submit(_simulate_block, config, drift, first,
                                   start[first:first + BLOCK_SIZE], positions[first:first + BLOCK_SIZE])
                   for first in blocks]
        for future in futures:
            future.result()

    logger.info("simulated %d paths over %d steps", config.n_paths, config.n_steps)
    return PathEnsemble(times=steps * config.dt, positions=positions, config=config)


def step_variance(ensemble: PathEnsemble) -> np.ndarray:
    """
    :return: Per axis sample variance of the first recorded displacement.
    """
    return np.var(ensemble.positions[:, 1, :] - ensemble.positions[:, 0, :], axis=0, ddof=1)
