"""
The named experiments of the runner. Each one wires a few library operations together, returns plot-ready
columns and checks its own invariant suite.
"""
import logging
from pathlib import Path
from typing import Any, Dict

import numpy as np
from overrides import overrides
from scipy.integrate import cumulative_trapezoid

from qsframework.core.constants import PhysicalConstants
from qsframework.core.exceptions import ConfigurationException
from qsframework.electrodynamics.budget import em_budget
from qsframework.electrodynamics.constants import EMConstants
from qsframework.fields.differencing import gradient
from qsframework.fields.field import ScalarField, VectorField
from qsframework.fields.grid import Grid
from qsframework.fields.spin import SpinAxis, clifford_identity_residual, spin_drift
from qsframework.fields.velocities import osmotic_velocity
from qsframework.fokker_planck.constants import FPConstants
from qsframework.fokker_planck.evolution import FPEvolution
from qsframework.fokker_planck.residuals import half_difference_residual, half_sum_residual, \
    stationarity_residual
from qsframework.fokker_planck.state import FPState
from qsframework.langevin.config import StepperConfig
from qsframework.langevin.diffusion import msd_and_diffusion
from qsframework.langevin.drift import FieldDrift
from qsframework.langevin.stepper import simulate_ensemble
from qsframework.ledger.history import LedgerHistory
from qsframework.ledger.state import LedgerState
from qsframework.schrodinger.eigen import solve_stationary
from qsframework.schrodinger.hamiltonian import HamiltonianSpec
from qsframework.schrodinger.madelung import madelung_fields
from .experiment import ExperimentResult, IExperiment, InvariantCheck, relative_error

logger = logging.getLogger(__name__)


def _smooth_random(rng: np.random.Generator, mesh, modes: int = 3) -> np.ndarray:
    # sum of random plane waves with unit-scale wave numbers
    values = np.zeros(mesh[0].shape)
    for _ in range(modes):
        k = rng.uniform(-1.0, 1.0, len(mesh))
        values += rng.uniform(-1.0, 1.0) * np.sin(sum(ki * x for ki, x in zip(k, mesh)) + rng.uniform(0, 2 * np.pi))
    return values


def _random_density(rng: np.random.Generator, grid: Grid) -> ScalarField:
    mesh = grid.mesh()
    return ScalarField(grid, np.exp(_smooth_random(rng, mesh)), 'rho')


def _random_vector(rng: np.random.Generator, grid: Grid) -> VectorField:
    mesh = grid.mesh()
    return VectorField(grid, np.stack([_smooth_random(rng, mesh) for _ in range(grid.ndim)], axis=-1))


class DiffusionRecovery(IExperiment):
    """
    Drift-free Langevin ensemble whose MSD slope recovers beta = hbar / 2m.
    """

    @property
    @overrides
    def name(self) -> str:
        return 'diffusion-recovery'

    @overrides
    def parameters(self) -> Dict[str, Any]:
        return {'n_paths': 100000, 'n_steps': 1000, 'dt': 1e-3, 'record_stride': 10, 'mass': None,
                'transient_cut': 0.0, 'tolerance': 0.05}

    @overrides
    def run(self, parameters: Dict[str, Any], physical: PhysicalConstants, seed: int,
            threads: int) -> ExperimentResult:
        mass = physical.electron_mass if parameters['mass'] is None else parameters['mass']
        beta = physical.diffusion_constant(mass)
        config = StepperConfig(dt=parameters['dt'], n_steps=parameters['n_steps'], n_paths=parameters['n_paths'],
                               beta=beta, master_seed=seed, mass=mass, dim=1,
                               record_stride=parameters['record_stride'])
        ensemble = simulate_ensemble(config, threads=threads)
        curve, fit = msd_and_diffusion(ensemble, parameters['transient_cut'])

        error = relative_error(fit.beta, beta)
        return ExperimentResult(
            columns={'time': curve.times, 'msd': curve.msd},
            summary={'beta_expected': beta, 'fit': fit.to_dict(), 'n_paths': config.n_paths},
            invariants={'beta_relative_error': InvariantCheck(error, parameters['tolerance'])})


class DensityMatch(IExperiment):
    """
    Langevin paths driven by the forward drift of the harmonic ground state sample its density.
    Lengths are measured in units of the oscillator length, times in units of 1/omega.
    """

    @property
    @overrides
    def name(self) -> str:
        return 'density-match'

    @overrides
    def parameters(self) -> Dict[str, Any]:
        return {'omega': 1.0, 'points': 801, 'half_width': 8.0, 'n_paths': 100000, 'n_steps': 2000, 'dt': 5e-3,
                'bins': 60, 'range': 4.0, 'tolerance': 0.02, 'energy_tolerance': 1e-4}

    @overrides
    def run(self, parameters: Dict[str, Any], physical: PhysicalConstants, seed: int,
            threads: int) -> ExperimentResult:
        m, hbar, omega = physical.electron_mass, physical.hbar, parameters['omega']
        length = np.sqrt(hbar / (m * omega))
        width = parameters['half_width'] * length
        grid = Grid.box([-width], [width], [parameters['points']])
        spec = HamiltonianSpec(ScalarField.from_function(grid, lambda x: 0.5 * m * omega ** 2 * x ** 2))
        ground = solve_stationary(spec, m, hbar)[0]
        fields = madelung_fields(ground.psi)

        config = StepperConfig(dt=parameters['dt'] / omega, n_steps=parameters['n_steps'],
                               n_paths=parameters['n_paths'], beta=physical.diffusion_constant(m),
                               master_seed=seed, mass=m, dim=1, record_stride=parameters['n_steps'])
        ensemble = simulate_ensemble(config, FieldDrift(fields.b), threads=threads)
        samples = ensemble.positions[:, -1, 0]

        x = grid.axes()[0]
        cdf = cumulative_trapezoid(fields.rho.values, x, initial=0.0)
        cdf = cdf / cdf[-1]
        edges = np.linspace(-parameters['range'], parameters['range'], parameters['bins'] + 1) * length
        at_edges = np.interp(edges, x, cdf)
        expected = np.diff(at_edges)
        counts, _ = np.histogram(samples, bins=edges)
        empirical = counts / samples.size
        below = np.count_nonzero(samples < edges[0]) / samples.size
        above = np.count_nonzero(samples >= edges[-1]) / samples.size
        distance = 0.5 * (np.sum(np.abs(empirical - expected)) + abs(below - at_edges[0])
                          + abs(above - (1.0 - at_edges[-1])))
        energy_error = relative_error(ground.energy, 0.5 * hbar * omega)
        logger.info("total variation %.4g, ground energy %.12g", distance, ground.energy)

        return ExperimentResult(
            columns={'bin_center': 0.5 * (edges[1:] + edges[:-1]), 'empirical': empirical, 'expected': expected},
            summary={'total_variation': float(distance), 'ground_energy': ground.energy,
                     'oscillator_length': float(length), 'tail_below': float(below), 'tail_above': float(above)},
            invariants={'total_variation': InvariantCheck(distance, parameters['tolerance']),
                        'ground_energy_relative_error': InvariantCheck(energy_error,
                                                                       parameters['energy_tolerance'])})


class FPEvolve(IExperiment):
    """
    Drift-free Fokker-Planck spreading of a Gaussian plus the algebraic half-sum and half-difference
    identities on random smooth fields.
    """

    @property
    @overrides
    def name(self) -> str:
        return 'fp-evolve'

    @overrides
    def parameters(self) -> Dict[str, Any]:
        return {'sigma': 1.0, 'beta': 0.5, 'half_width': 10.0, 'points': 401, 'dt': 0.002, 'n_steps': 100,
                'snapshot_stride': 10, 'tolerance': 0.01, 'mass_tolerance': 1e-10, 'identity_cases': 1000,
                'identity_points': 101, 'identity_tolerance': 1e-10}

    @overrides
    def run(self, parameters: Dict[str, Any], physical: PhysicalConstants, seed: int,
            threads: int) -> ExperimentResult:
        sigma, beta, width = parameters['sigma'], parameters['beta'], parameters['half_width']
        grid = Grid.box([-width], [width], [parameters['points']])
        rho = ScalarField.from_function(grid, lambda x: np.exp(-x ** 2 / (2 * sigma ** 2))
                                        / np.sqrt(2 * np.pi * sigma ** 2))
        state = FPState(rho, VectorField.zeros(grid), beta)
        evolution = FPEvolution(FPConstants(snapshot_stride=parameters['snapshot_stride']))
        trajectory = evolution.run(state, parameters['n_steps'], parameters['dt'])

        x = grid.axes()[0]
        times = np.array(trajectory.times)
        variances = np.array([grid.integrate(x ** 2 * s.values) / s.integral() for s in trajectory.snapshots])
        expected = sigma ** 2 + 2.0 * beta * times
        variance_error = float(np.max(np.abs(variances - expected) / expected))
        diagnostics = trajectory.diagnostics()

        half_sum, half_difference = self._identities(parameters, np.random.default_rng(seed))
        return ExperimentResult(
            columns={'time': times, 'variance': variances, 'expected_variance': expected},
            summary={'max_variance_relative_error': variance_error, 'max_mass_drift': diagnostics['max_mass_drift'],
                     'clipped_nodes': diagnostics['clipped_nodes'], 'half_sum_residual': half_sum,
                     'half_difference_residual': half_difference},
            invariants={'variance_law': InvariantCheck(variance_error, parameters['tolerance']),
                        'mass_drift': InvariantCheck(abs(diagnostics['max_mass_drift']),
                                                     parameters['mass_tolerance']),
                        'half_sum_identity': InvariantCheck(half_sum, parameters['identity_tolerance']),
                        'half_difference_identity': InvariantCheck(half_difference,
                                                                   parameters['identity_tolerance'])})

    @staticmethod
    def _identities(parameters: Dict[str, Any], rng: np.random.Generator):
        grid = Grid.box([-5.0], [5.0], [parameters['identity_points']])
        worst_sum, worst_difference = 0.0, 0.0
        for _ in range(parameters['identity_cases']):
            beta = rng.uniform(0.1, 2.0)
            rho = _random_density(rng, grid)
            b, b_star, v = (_random_vector(rng, grid) for _ in range(3))
            worst_sum = max(worst_sum, float(np.max(np.abs(half_sum_residual(rho, b, b_star, v, beta).values))))

            u = osmotic_velocity(rho, beta)
            upsilon = _random_vector(rng, grid)
            residual = half_difference_residual(rho, upsilon + u, upsilon - u, v, beta)
            worst_difference = max(worst_difference, float(np.max(np.abs(residual.values))))
        return worst_sum, worst_difference


class StationarityAudit(IExperiment):
    """
    Ground states of the harmonic oscillator and of radial hydrogen against their analytic energies, and
    the stationarity residual of their osmotic velocities in the bulk. Residuals are divided by the energy
    scale over m so they read in the units where m = hbar = omega = a0 = 1.
    """

    @property
    @overrides
    def name(self) -> str:
        return 'stationarity-audit'

    @overrides
    def parameters(self) -> Dict[str, Any]:
        return {'oscillator_points': 159999, 'oscillator_half_width': 8.0, 'hydrogen_points': 199999,
                'hydrogen_r_max': 20.0, 'bulk_fraction': 1e-4, 'residual_tolerance': 1e-6,
                'oscillator_tolerance': 1e-6, 'hydrogen_tolerance': 1e-4}

    @overrides
    def run(self, parameters: Dict[str, Any], physical: PhysicalConstants, seed: int,
            threads: int) -> ExperimentResult:
        m, hbar = physical.electron_mass, physical.hbar
        length = np.sqrt(hbar / m)
        width = parameters['oscillator_half_width'] * length
        grid = Grid.box([-width], [width], [parameters['oscillator_points']])
        oscillator = HamiltonianSpec(ScalarField.from_function(grid, lambda x: 0.5 * m * x ** 2))
        ho_energy, ho_residual, ho_x, ho_values = self._audit(oscillator, m, hbar, hbar, parameters,
                                                              grid.interior_mask(2))

        a0 = physical.bohr_radius(m)
        coulomb = physical.coulomb_constant() * physical.charge ** 2
        radial = Grid.radial(parameters['hydrogen_r_max'] * a0, parameters['hydrogen_points'])
        hydrogen = HamiltonianSpec(ScalarField.from_function(radial, lambda r: -coulomb / r))
        rydberg = hbar ** 2 / (m * a0 ** 2)
        h_energy, h_residual, _, _ = self._audit(hydrogen, m, hbar, rydberg, parameters,
                                                 radial.axes()[0] >= 0.5 * a0)

        ho_error = relative_error(ho_energy, 0.5 * hbar)
        h_error = relative_error(h_energy, -0.5 * rydberg)
        tolerance = parameters['residual_tolerance']
        return ExperimentResult(
            columns={'x': ho_x / length, 'oscillator_residual': ho_values},
            summary={'oscillator_energy': ho_energy, 'hydrogen_energy': h_energy,
                     'oscillator_residual': ho_residual, 'hydrogen_residual': h_residual},
            invariants={'oscillator_energy': InvariantCheck(ho_error, parameters['oscillator_tolerance']),
                        'hydrogen_energy': InvariantCheck(h_error, parameters['hydrogen_tolerance']),
                        'oscillator_stationarity': InvariantCheck(ho_residual, tolerance),
                        'hydrogen_stationarity': InvariantCheck(h_residual, tolerance)})

    @staticmethod
    def _audit(spec: HamiltonianSpec, m: float, hbar: float, scale: float, parameters: Dict[str, Any],
               region: np.ndarray):
        ground = solve_stationary(spec, m, hbar)[0]
        fields = madelung_fields(ground.psi)
        residual = stationarity_residual(fields.u, spec.potential, ground.energy, m, hbar).values * (m / scale)
        rho = fields.rho.values
        bulk = (rho >= parameters['bulk_fraction'] * rho.max()) & region
        worst = float(np.max(np.abs(residual[bulk])))
        logger.info("ground energy %.12g, bulk stationarity residual %.3g", ground.energy, worst)
        return ground.energy, worst, spec.grid.axes()[0][bulk], residual[bulk]


class MassAudit(IExperiment):
    """
    Replays a ledger history, read from a JSON event log or generated from seeded random transitions,
    and reports how far the invariant mass moved.
    """

    @property
    @overrides
    def name(self) -> str:
        return 'mass-audit'

    @overrides
    def parameters(self) -> Dict[str, Any]:
        return {'ledger': None, 'n_transitions': 10000, 'step_fraction': 0.01, 'noise_fraction': 0.001,
                'tolerance': 1e-15, 'recomputed_tolerance': 1e-12}

    @overrides
    def run(self, parameters: Dict[str, Any], physical: PhysicalConstants, seed: int,
            threads: int) -> ExperimentResult:
        if parameters['ledger'] is not None:
            history = LedgerHistory.read(Path(parameters['ledger']))
        else:
            history = self._generate(parameters, physical, np.random.default_rng(seed))
        history.replay()

        states = [history.initial] + [record.after for record in history.transitions]
        mass = history.initial.mass
        stored = np.array([state.mass for state in states])
        recomputed = np.array([state.recomputed_mass() for state in states])
        stored_drift = float(np.max(np.abs(stored - mass)) / mass)
        recomputed_drift = float(np.max(np.abs(recomputed - mass)) / mass)

        return ExperimentResult(
            columns={'transition': np.arange(len(states)),
                     'delta_e': np.array([0.0] + [record.delta_e for record in history.transitions]),
                     'nu_vib': np.array([state.nu_vib for state in states]),
                     'recomputed_mass': recomputed},
            summary={'transitions': len(history), 'mass': mass, 'mass_drift': stored_drift,
                     'recomputed_mass_drift': recomputed_drift, 'final': history.current.to_dict()},
            invariants={'mass_drift': InvariantCheck(stored_drift, parameters['tolerance']),
                        'recomputed_mass_drift': InvariantCheck(recomputed_drift,
                                                                parameters['recomputed_tolerance'])},
            artifacts={'ledger.json': history.to_json()})

    @staticmethod
    def _generate(parameters: Dict[str, Any], physical: PhysicalConstants,
                  rng: np.random.Generator) -> LedgerHistory:
        # an electron at rest: E = m c^2 spread over the classical radius
        radius, c = physical.classical_radius, physical.c
        nu_rot = c / (2.0 * np.pi * radius)
        energy = physical.electron_mass * c ** 2
        nu_vib = energy / (4.0 * np.pi * radius ** 2 * nu_rot * physical.electron_mass)
        history = LedgerHistory(LedgerState.create(energy, nu_vib, nu_rot, radius))
        for _ in range(parameters['n_transitions']):
            net = history.current.net_energy()
            delta_e = parameters['step_fraction'] * net * rng.uniform(-1.0, 1.0)
            delta_noise = parameters['noise_fraction'] * net * rng.uniform(-1.0, 1.0)
            history.transition(delta_e, delta_noise)
        return history


class EMBudget(IExperiment):
    """
    Magnetic mass, magnetic and radiated energy of a transition and the relativistic series they split.
    delta_v defaults to one percent of c, charge and r_min to the values of the unit preset.
    """

    @property
    @overrides
    def name(self) -> str:
        return 'em-budget'

    @overrides
    def parameters(self) -> Dict[str, Any]:
        return {'delta_v': None, 'charge': None, 'r_min': None, 'order': 4, 'convention': 'inverse-c',
                'tolerance': 1e-12, 'quadrature_tolerance': 1e-9}

    @overrides
    def run(self, parameters: Dict[str, Any], physical: PhysicalConstants, seed: int,
            threads: int) -> ExperimentResult:
        conventions = [convention.value for convention in EMConstants.BiotSavartConvention]
        if parameters['convention'] not in conventions:
            raise ConfigurationException([f"'convention' must be one of {conventions}, "
                                          f"got {parameters['convention']!r}"])
        convention = EMConstants.BiotSavartConvention(parameters['convention'])
        if physical.preset == PhysicalConstants.Preset.SI:
            base = EMConstants(convention=convention)
        else:
            base = EMConstants.from_physical(physical, convention)
        constants = EMConstants(base.mu0, base.eps0, base.c,
                                base.charge if parameters['charge'] is None else parameters['charge'],
                                base.r_min if parameters['r_min'] is None else parameters['r_min'],
                                convention)
        delta_v = 0.01 * constants.c if parameters['delta_v'] is None else parameters['delta_v']
        report = em_budget(delta_v, constants, parameters['order'])

        residuals = report['residuals']
        tolerance = parameters['tolerance']
        return ExperimentResult(
            columns={'order': np.arange(1, len(report['series_terms']) + 1),
                     'series_term': np.array(report['series_terms'])},
            summary=report,
            invariants={'split_sum': InvariantCheck(residuals['split_sum'], tolerance),
                        'magnetic_vs_series': InvariantCheck(residuals['magnetic_vs_series'], tolerance),
                        'radiated_vs_series': InvariantCheck(residuals['radiated_vs_series'], tolerance),
                        'quadrature': InvariantCheck(residuals['quadrature'], parameters['quadrature_tolerance'])})


class SpinChecks(IExperiment):
    """
    Clifford identity on random perpendicular pairs, antisymmetry and orthogonality of the spin drifts on
    random smooth densities.
    """

    @property
    @overrides
    def name(self) -> str:
        return 'spin-checks'

    @overrides
    def parameters(self) -> Dict[str, Any]:
        return {'pairs': 1000, 'densities': 20, 'points': 11, 'tolerance': 1e-12}

    @overrides
    def run(self, parameters: Dict[str, Any], physical: PhysicalConstants, seed: int,
            threads: int) -> ExperimentResult:
        rng = np.random.default_rng(seed)
        clifford = np.empty(parameters['pairs'])
        for index in range(parameters['pairs']):
            g, s = rng.normal(size=3), rng.normal(size=3)
            s = s - np.dot(s, g) / np.dot(g, g) * g
            clifford[index] = clifford_identity_residual(g, s) / (np.dot(g, g) * np.dot(s, s))

        n = parameters['points']
        grid = Grid.box([-3.0] * 3, [3.0] * 3, [n] * 3)
        antisymmetry, along_axis, along_gradient = [], [], []
        m, hbar = physical.electron_mass, physical.hbar
        for _ in range(parameters['densities']):
            rho = _random_density(rng, grid)
            axis = SpinAxis(rng.normal(size=3), normalize=True)
            b, b_star = spin_drift(rho, axis, m, hbar)
            scale = float(np.max(b.magnitude().values))
            slope = gradient(rho.values, grid)
            antisymmetry.append(float(np.max(np.abs(b.values + b_star.values))) / scale)
            along_axis.append(float(np.max(np.abs(b.values @ axis.direction))) / scale)
            along_gradient.append(float(np.max(np.abs(np.sum(b.values * slope, axis=-1))))
                                  / (scale * float(np.max(np.linalg.norm(slope, axis=-1)))))

        tolerance = parameters['tolerance']
        return ExperimentResult(
            columns={'pair': np.arange(parameters['pairs']), 'clifford_residual': clifford},
            summary={'max_clifford_residual': float(np.max(clifford, initial=0.0)),
                     'max_antisymmetry': max(antisymmetry, default=0.0),
                     'max_axis_projection': max(along_axis, default=0.0),
                     'max_gradient_projection': max(along_gradient, default=0.0)},
            invariants={'clifford_identity': InvariantCheck(float(np.max(clifford, initial=0.0)), tolerance),
                        'drift_antisymmetry': InvariantCheck(max(antisymmetry, default=0.0), tolerance),
                        'drift_orthogonal_to_axis': InvariantCheck(max(along_axis, default=0.0), tolerance),
                        'drift_orthogonal_to_gradient': InvariantCheck(max(along_gradient, default=0.0),
                                                                       tolerance)})


EXPERIMENTS = [DiffusionRecovery(), DensityMatch(), FPEvolve(), StationarityAudit(), MassAudit(), EMBudget(),
               SpinChecks()]
