"""
Densities and velocity fields derived from wave functions.

Velocities follow u = beta grad(rho)/rho, grad S = m(upsilon + v)/hbar, b = upsilon + u and b* = upsilon - u.
"""
from numbers import Number
from typing import Tuple

import numpy as np

from qsframework.core.exceptions import DegenerateDensityException, GridMismatchException, NodalSurfaceException, \
    NormalizationException, OutOfRangeException
from .differencing import gradient
from .field import ScalarField, VectorField
from .wavefunction import WaveFunction, NORMALIZATION_TOLERANCE

# default density floor relative to max(rho)
DENSITY_FLOOR = 1e-12


def density_from_wavefunction(psi: WaveFunction) -> ScalarField:
    """
    :param psi: A normalized wave function.
    :return: rho = |psi|^2.
    :raises:
        NormalizationException: If psi is not normalized.
    """
    psi.check_normalized()
    return ScalarField(psi.grid, np.abs(psi.amplitudes) ** 2, 'rho')


def _check_normalized_density(rho: ScalarField) -> None:
    total = float(rho.integral())
    if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
        raise NormalizationException(total, NORMALIZATION_TOLERANCE)


def charge_mass_density(rho: ScalarField, q: Number, m: Number) -> Tuple[ScalarField, ScalarField]:
    """
    :param rho: A normalized probability density.
    :param q: Charge.
    :param m: Mass.
    :return: Charge density q rho and mass density m rho.
    """
    _check_normalized_density(rho)
    return ScalarField(rho.grid, q * rho.values, 'rho_e'), ScalarField(rho.grid, m * rho.values, 'rho_m')


def _floored(rho: np.ndarray, floor: float) -> np.ndarray:
    peak = np.max(rho)
    if not peak > 0:
        raise DegenerateDensityException()
    return np.maximum(rho, floor * peak)


def osmotic_velocity(rho: ScalarField, beta: Number, floor: float = DENSITY_FLOOR) -> VectorField:
    """
    u = beta grad(rho) / max(rho, floor max(rho)).

    :param rho: Non negative density.
    :param beta: Diffusion constant.
    :param floor: Relative density floor, positive.
    :return: The osmotic velocity.
    :raises:
        DegenerateDensityException: If rho vanishes everywhere.
        OutOfRangeException: If rho is negative somewhere or floor is not positive.
    """
    if not floor > 0:
        raise OutOfRangeException(0.0, np.inf, floor)
    if np.min(rho.values) < 0:
        raise OutOfRangeException(0.0, np.inf, float(np.min(rho.values)))
    denominator = _floored(rho.values, floor)
    return VectorField(rho.grid, beta * gradient(rho.values, rho.grid) / denominator[..., np.newaxis], 'u')


def phase_and_amplitude(psi: WaveFunction) -> Tuple[ScalarField, ScalarField]:
    """
    Splits psi = exp(R + iS). The phase is unwrapped axis by axis, so it is undefined across vortices.

    :param psi: A wave function without interior zeros.
    :return: R = ln(rho)/2 and the unwrapped phase S.
    :raises:
        NodalSurfaceException: If psi vanishes at an interior node.
    """
    grid = psi.grid
    magnitude = np.abs(psi.amplitudes)
    zeros = (magnitude == 0.0) & grid.interior_mask(1)
    if np.any(zeros):
        raise NodalSurfaceException(tuple(int(i) for i in np.argwhere(zeros)[0]))

    amplitude = np.log(np.maximum(magnitude, np.finfo(float).tiny))
    phase = np.angle(psi.amplitudes)
    for axis in range(grid.ndim):
        phase = np.unwrap(phase, axis=axis)
    return ScalarField(grid, amplitude, 'R'), ScalarField(grid, phase, 'S')


def phase_gradient(phase: ScalarField) -> np.ndarray:
    """
    Gradient of a phase. Periodic axes difference the phase modulo 2 pi, so the wrap-around seam is ignored.
    """
    grid = phase.grid
    if not grid.is_periodic:
        return gradient(phase.values, grid)
    derivatives = []
    for axis, h in enumerate(grid.spacing):
        jump = np.roll(phase.values, -1, axis=axis) - np.roll(phase.values, 1, axis=axis)
        jump = np.mod(jump + np.pi, 2.0 * np.pi) - np.pi
        derivatives.append(jump / (2.0 * h))
    return np.stack(derivatives, axis=-1)


def transition_velocity(phase: ScalarField, v: VectorField, m: Number, hbar: Number) -> VectorField:
    """
    :param phase: The phase S.
    :param v: Velocity of the quantum-sized volume.
    :param m: Mass.
    :param hbar: Reduced Planck constant.
    :return: upsilon = (hbar/m) grad S - v.
    """
    phase.check_grid(v, 'v')
    return VectorField(phase.grid, hbar / m * phase_gradient(phase) - v.values, 'upsilon')


def current_velocity(psi: WaveFunction, floor: float = DENSITY_FLOOR) -> VectorField:
    """
    :return: (hbar/m) Im(psi* grad psi) / |psi|^2, the phase-free form of upsilon + v.
    """
    grid = psi.grid
    rho = _floored(np.abs(psi.amplitudes) ** 2, floor)
    flux = np.imag(np.conj(psi.amplitudes)[..., np.newaxis] * gradient(psi.amplitudes, grid))
    return VectorField(grid, psi.hbar / psi.mass * flux / rho[..., np.newaxis], 'current velocity')


def drift_fields(upsilon: VectorField, u: VectorField) -> Tuple[VectorField, VectorField]:
    """
    :return: b = upsilon + u and b* = upsilon - u.
    :raises:
        GridMismatchException: If the fields live on different grids or differ in component count.
    """
    upsilon.check_grid(u, 'u')
    if upsilon.components != u.components:
        raise GridMismatchException('upsilon', 'u')
    return VectorField(u.grid, upsilon.values + u.values, 'b'), VectorField(u.grid, upsilon.values - u.values, 'b*')
