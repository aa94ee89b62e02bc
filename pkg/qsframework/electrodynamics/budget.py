import logging
from typing import Dict

from qsframework.ledger.relativity import energy_split, relativistic_expansion
from .constants import EMConstants
from .magnetic import speed_of, magnetic_energy, magnetic_energy_quadrature, magnetic_mass
from .radiation import radiated_energy

logger = logging.getLogger(__name__)


def em_budget(delta_v, constants: EMConstants = None, order: int = 4) -> Dict[str, object]:
    """
    Energy budget of a transition with velocity change dv: magnetic mass and energy, radiated energy,
    the relativistic series with m0 = m_mag and the residuals that tie them together.

    :return: A JSON serializable report.
    :raises:
        SuperluminalException: If |dv| >= c.
    """
    constants = EMConstants() if constants is None else constants
    mass = magnetic_mass(constants)
    speed = speed_of(delta_v)
    expansion = relativistic_expansion(mass, speed, constants.c, order)
    magnetic, radiation = energy_split(mass, speed, constants.c)
    e_mag = magnetic_energy(speed, constants)
    e_rad = radiated_energy(speed, constants)
    quadrature = magnetic_energy_quadrature(speed, constants)
    exact = expansion.exact

    report = {
        'charge': constants.charge,
        'r_min': constants.r_min,
        'delta_v': speed,
        'magnetic_mass': mass,
        'magnetic_energy': e_mag,
        'magnetic_energy_quadrature': quadrature,
        'radiated_energy': e_rad,
        'series_terms': expansion.terms,
        'exact_energy': exact,
        'residuals': {
            'split_sum': abs(magnetic + radiation - exact) / exact if exact > 0 else 0.0,
            'magnetic_vs_series': abs(e_mag - expansion.terms[0]) / e_mag if e_mag > 0 else 0.0,
            'radiated_vs_series': abs(e_rad - expansion.terms[1]) / e_rad if e_rad > 0 and order > 1 else 0.0,
            'quadrature': abs(quadrature - e_mag) / e_mag if e_mag > 0 else 0.0,
        },
    }
    logger.info("magnetic mass %.6g kg, E_mag %.6g J, E_rad %.6g J", mass, e_mag, e_rad)
    return report
