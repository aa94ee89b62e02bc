from dataclasses import dataclass

from qsframework.fields.field import ScalarField, VectorField
from qsframework.fields.velocities import density_from_wavefunction, drift_fields, osmotic_velocity, \
    phase_and_amplitude, transition_velocity
from qsframework.fields.wavefunction import WaveFunction


@dataclass(frozen=True)
class MadelungFields:
    rho: ScalarField
    u: VectorField
    upsilon: VectorField
    b: VectorField
    b_star: VectorField


def madelung_fields(psi: WaveFunction, v: VectorField = None) -> MadelungFields:
    """
    Splits psi = exp(R + iS) into the density and the velocity fields of the stochastic picture.

    :param psi: A normalized wave function without interior zeros.
    :param v: Velocity of the quantum-sized volume, zero if None.
    :return: rho, u = beta grad(rho)/rho, upsilon = (hbar/m) grad S - v, b = upsilon + u and b* = upsilon - u.
    :raises:
        NodalSurfaceException: If psi vanishes at an interior node.
        NormalizationException: If psi is not normalized.
    """
    v = VectorField.zeros(psi.grid) if v is None else v
    rho = density_from_wavefunction(psi)
    _, phase = phase_and_amplitude(psi)
    u = osmotic_velocity(rho, psi.hbar / (2.0 * psi.mass))
    upsilon = transition_velocity(phase, v, psi.mass, psi.hbar)
    b, b_star = drift_fields(upsilon, u)
    return MadelungFields(rho, u, upsilon, b, b_star)
