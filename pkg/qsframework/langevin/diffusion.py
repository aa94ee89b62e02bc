import logging
from dataclasses import dataclass
from math import pi
from numbers import Number
from typing import Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.stats import linregress

from qsframework.core.exceptions import NoAsymptoteException, OutOfRangeException, TooShortEnsembleException
from .stepper import PathEnsemble

logger = logging.getLogger(__name__)

# minimum number of paths for a diffusion estimate
MIN_PATHS = 100
# the exponential transient is considered gone after this many relaxation times m / xi
TRANSIENT_TIMES = 5.0


def friction_coefficient(m: Number, nu: Number) -> float:
    """
    xi = 4 pi m nu.

    :raises:
        OutOfRangeException: If m is not positive or nu is negative.
    """
    if not m > 0:
        raise OutOfRangeException(0.0, np.inf, m)
    if nu < 0:
        raise OutOfRangeException(0.0, np.inf, nu)
    return 4.0 * pi * m * nu


def quantum_energy(nu: Number, h: Number) -> float:
    """
    E = h nu.
    """
    return h * nu


def alpha_relaxation(t, h_nu: Number, xi: Number, m: Number, c: Number):
    """
    alpha(t) = 2 h nu / xi + C exp(-xi t / m), the solution of m dalpha/dt + xi alpha = 2 h nu.

    :param t: Time, scalar or array.
    :param h_nu: Quantum energy h nu.
    :param xi: Friction coefficient, positive.
    :param m: Mass.
    :param c: Integration constant.
    :raises:
        NoAsymptoteException: If xi is zero.
        OutOfRangeException: If xi is negative.
    """
    if xi == 0:
        raise NoAsymptoteException(xi)
    if xi < 0:
        raise OutOfRangeException(0.0, np.inf, xi)
    return 2.0 * h_nu / xi + c * np.exp(-xi * np.asarray(t) / m)


def solve_alpha(times: np.ndarray, h_nu: Number, xi: Number, m: Number, alpha0: Number) -> np.ndarray:
    """
    Integrates dalpha/dt = (2 h nu - xi alpha) / m numerically from alpha(times[0]) = alpha0.
    """
    times = np.asarray(times, dtype=float)
    solution = solve_ivp(lambda _, alpha: (2.0 * h_nu - xi * alpha) / m, (times[0], times[-1]), [alpha0],
                         t_eval=times, method='LSODA', rtol=1e-10, atol=1e-12 * abs(2.0 * h_nu / xi + alpha0))
    return solution.y[0]


@dataclass(frozen=True)
class MSDCurve:
    times: np.ndarray
    msd: np.ndarray
    dim: int


@dataclass(frozen=True)
class DiffusionFit:
    """
    Least-squares line msd = slope t + intercept over t > transient_cut, beta = slope / (2 dim).
    """
    beta: float
    slope: float
    intercept: float
    slope_stderr: float
    intercept_stderr: float
    transient_cut: float
    samples: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def mean_squared_displacement(ensemble: PathEnsemble) -> MSDCurve:
    squared = np.sum(ensemble.displacements() ** 2, axis=2)
    return MSDCurve(times=ensemble.times, msd=np.mean(squared, axis=0), dim=ensemble.dim)


def msd_and_diffusion(ensemble: PathEnsemble, transient_cut: Number = 0.0) -> Tuple[MSDCurve, DiffusionFit]:
    """
    :param ensemble: At least MIN_PATHS paths.
    :param transient_cut: Samples at or before this time are ignored. Must be at least 5 m / xi for xi > 0.
    :return: The MSD curve and the diffusion fit.
    :raises:
        TooShortEnsembleException: If there are too few paths or fewer than three samples after the cut.
        OutOfRangeException: If the cut is shorter than the relaxation time allows.
    """
    if ensemble.n_paths < MIN_PATHS:
        raise TooShortEnsembleException(f"{ensemble.n_paths} paths, at least {MIN_PATHS} required")
    config = ensemble.config
    if config.xi > 0:
        minimum = TRANSIENT_TIMES * config.mass / config.xi
        if transient_cut < minimum:
            raise OutOfRangeException(minimum, np.inf, transient_cut)

    curve = mean_squared_displacement(ensemble)
    selected = curve.times > transient_cut
    if np.count_nonzero(selected) < 3:
        raise TooShortEnsembleException(f"{np.count_nonzero(selected)} samples after t = {transient_cut}")

    fit = linregress(curve.times[selected], curve.msd[selected])
    result = DiffusionFit(beta=float(fit.slope) / (2.0 * curve.dim),
                          slope=float(fit.slope),
                          intercept=float(fit.intercept),
                          slope_stderr=float(fit.stderr),
                          intercept_stderr=float(fit.intercept_stderr),
                          transient_cut=float(transient_cut),
                          samples=int(np.count_nonzero(selected)))
    logger.info("diffusion estimate %.6g from %d samples", result.beta, result.samples)
    return curve, result


def transition_energy_from_msd(curve: MSDCurve, m: Number) -> np.ndarray:
    """
    dE = (m/2) d^2<r^2>/dt^2 along the curve.
    """
    first = np.gradient(curve.msd, curve.times)
    return 0.5 * m * np.gradient(first, curve.times)
