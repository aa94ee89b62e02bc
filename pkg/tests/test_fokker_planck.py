from unittest import TestCase
import json
import os
import tempfile

import numpy as np


def gaussian_state(sigma=1.0, beta=0.5, points=401, half_width=10.0, drift=None,
                   boundary=None):
    from qsframework.fields.grid import Grid
    from qsframework.fields.field import ScalarField, VectorField
    from qsframework.fokker_planck.state import FPState

    boundary = Grid.Boundary.DIRICHLET_ZERO if boundary is None else boundary
    grid = Grid.box([-half_width], [half_width], [points], boundary)
    x = grid.axes()[0]
    rho = ScalarField(grid, np.exp(-x ** 2 / (2.0 * sigma ** 2)) / np.sqrt(2.0 * np.pi * sigma ** 2))
    drift = VectorField.zeros(grid) if drift is None else drift(grid)
    return FPState(rho, drift, beta)


def variance(state):
    x = state.grid.axes()[0]
    weights = state.rho.values * state.grid.weights
    return float(np.sum(weights * x ** 2) / np.sum(weights))


def spike_state(value_drift=1.0):
    from qsframework.fields.grid import Grid
    from qsframework.fields.field import ScalarField, VectorField
    from qsframework.fokker_planck.state import FPState

    grid = Grid.box([0.0], [1.0], [50], Grid.Boundary.PERIODIC)
    rho = np.zeros(grid.shape)
    rho[25] = 1.0 / grid.spacing[0]
    return FPState(ScalarField(grid, rho), VectorField.uniform(grid, [value_drift]), 0.0)


class TestFPConstants(TestCase):
    def test_safety_factor_range(self):
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.core.exceptions import OutOfRangeException

        self.assertRaises(OutOfRangeException, FPConstants, safety_factor=0.0)
        self.assertRaises(OutOfRangeException, FPConstants, safety_factor=1.5)

    def test_snapshot_stride_type(self):
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.core.exceptions import WrongStrictTypeException

        self.assertRaises(WrongStrictTypeException, FPConstants, snapshot_stride=2.0)

    def test_discretization_type(self):
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.core.exceptions import WrongSubTypeException

        self.assertRaises(WrongSubTypeException, FPConstants, discretization='upwind')

    def test_default_discretization(self):
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.fokker_planck.flux import ConservativeFaceFlux

        discretization = FPConstants().discretization

        self.assertIsInstance(discretization, ConservativeFaceFlux)
        self.assertFalse(discretization.upwind)


class TestFPState(TestCase):
    def test_negative_density(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.state import FPState
        from qsframework.core.exceptions import OutOfRangeException

        grid = Grid([5], [1.0])
        rho = ScalarField(grid, [0.1, 0.2, -0.1, 0.2, 0.1])

        self.assertRaises(OutOfRangeException, FPState, rho, VectorField.zeros(grid), 0.5)

    def test_drift_component_count(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.state import FPState
        from qsframework.core.exceptions import GridMismatchException

        grid = Grid([5], [1.0])

        self.assertRaises(GridMismatchException, FPState, ScalarField.constant(grid, 0.2),
                          VectorField.zeros(grid, 2), 0.5)


class TestForwardStep(TestCase):
    def test_uniform_density_is_stationary(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.state import FPState
        from qsframework.fokker_planck.stepper import fp_forward_step

        grid = Grid.box([0.0, 0.0], [1.0, 1.0], [20, 20], Grid.Boundary.PERIODIC)
        state = FPState(ScalarField.constant(grid, 1.0), VectorField.zeros(grid), 0.3)

        after = fp_forward_step(state, 1e-4)

        np.testing.assert_allclose(after.rho.values, 1.0, rtol=1e-14)
        self.assertAlmostEqual(after.t, 1e-4)

    def test_gaussian_variance_law(self):
        from qsframework.fokker_planck.stepper import fp_forward_step

        beta, dt = 0.5, 0.002
        state = gaussian_state(beta=beta)
        initial = variance(state)

        for _ in range(100):
            state = fp_forward_step(state, dt)

        expected = initial + 2.0 * beta * state.t
        self.assertAlmostEqual(variance(state) / expected, 1.0, delta=0.01)
        self.assertAlmostEqual(state.t, 0.2, delta=1e-12)

    def test_osmotic_drift_keeps_gaussian_stationary(self):
        from qsframework.fields.velocities import osmotic_velocity
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.fokker_planck.flux import NodalDifferences
        from qsframework.fokker_planck.stepper import fp_forward_step

        beta = 0.5
        state = gaussian_state(beta=beta, points=241, half_width=6.0)
        state = state.with_drift(osmotic_velocity(state.rho, beta))
        constants = FPConstants(discretization=NodalDifferences())
        initial = state.rho.values

        for _ in range(50):
            state = fp_forward_step(state, 0.002, constants)

        change_rate = np.max(np.abs(state.rho.values - initial)) / state.t
        self.assertLess(change_rate, 1e-6 * np.max(initial))

    def test_probability_conserved_on_closed_grids(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import VectorField
        from qsframework.fokker_planck.stepper import fp_forward_step

        for boundary in [Grid.Boundary.PERIODIC, Grid.Boundary.REFLECTING]:
            state = gaussian_state(points=200, half_width=5.0, boundary=boundary,
                                   drift=lambda grid: VectorField.from_function(grid, lambda x: (np.sin(x),)))
            mass = state.total_probability()
            for _ in range(20):
                state = fp_forward_step(state, 0.002)
                self.assertLess(abs(state.total_probability() - mass), 1e-10)
                mass = state.total_probability()

    def test_probability_conserved_on_radial_grid(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.state import FPState
        from qsframework.fokker_planck.stepper import fp_forward_step

        h = 0.05
        grid = Grid([100], [h], [0.5 * h], Grid.Boundary.REFLECTING, Grid.Geometry.RADIAL)
        r = grid.axes()[0]
        state = FPState(ScalarField(grid, np.exp(-r ** 2)), VectorField(grid, -r[:, np.newaxis]), 0.5)
        mass = state.total_probability()

        for _ in range(20):
            state = fp_forward_step(state, 0.0005)

        self.assertLess(abs(state.total_probability() / mass - 1.0), 1e-12)

    def test_custom_discretization(self):
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.fokker_planck.stepper import fp_forward_step
        from tests.stubs import FrozenFluxStub

        state = gaussian_state()

        after = fp_forward_step(state, 1e-3, FPConstants(discretization=FrozenFluxStub()))

        np.testing.assert_array_equal(after.rho.values, state.rho.values)

    def test_stability_bound(self):
        from qsframework.fokker_planck.stepper import fp_forward_step, stability_bound
        from qsframework.core.exceptions import StabilityBoundException

        state = gaussian_state(beta=0.5)
        h = state.grid.spacing[0]

        self.assertAlmostEqual(stability_bound(state), 0.9 * h * h, delta=1e-15)
        with self.assertRaises(StabilityBoundException) as context:
            fp_forward_step(state, 0.01)
        self.assertAlmostEqual(context.exception.bound, 0.9 * h * h, delta=1e-15)

    def test_advective_bound(self):
        from qsframework.fokker_planck.stepper import stability_bound

        state = spike_state(value_drift=2.0)

        self.assertAlmostEqual(stability_bound(state), 0.9 * state.grid.spacing[0] / 2.0)

    def test_non_positive_dt(self):
        from qsframework.fokker_planck.stepper import fp_forward_step
        from qsframework.core.exceptions import OutOfRangeException

        self.assertRaises(OutOfRangeException, fp_forward_step, gaussian_state(), 0.0)

    def test_negative_density_aborts(self):
        from qsframework.fokker_planck.stepper import fp_forward_step, stability_bound
        from qsframework.core.exceptions import NegativeDensityException

        state = spike_state()

        self.assertRaises(NegativeDensityException, fp_forward_step, state, stability_bound(state))

    def test_negative_density_is_clipped(self):
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.fokker_planck.stepper import fp_forward_step, stability_bound

        state = spike_state()

        after = fp_forward_step(state, stability_bound(state), FPConstants(clip_limit=1.0))

        self.assertEqual(after.clipped_nodes, 1)
        self.assertGreaterEqual(np.min(after.rho.values), 0.0)

    def test_upwind_keeps_density_positive(self):
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.fokker_planck.flux import ConservativeFaceFlux
        from qsframework.fokker_planck.stepper import fp_forward_step, stability_bound

        state = spike_state()
        constants = FPConstants(discretization=ConservativeFaceFlux(upwind=True))
        mass = state.total_probability()

        for _ in range(10):
            state = fp_forward_step(state, stability_bound(state), constants)

        self.assertEqual(state.clipped_nodes, 0)
        self.assertGreaterEqual(np.min(state.rho.values), 0.0)
        self.assertAlmostEqual(state.total_probability(), mass, delta=1e-12)


class TestBackwardStep(TestCase):
    def test_identity_without_diffusion_and_drift(self):
        from qsframework.fokker_planck.stepper import fp_backward_step

        state = gaussian_state(beta=0.0)

        after = fp_backward_step(state, 0.01)

        np.testing.assert_array_equal(after.rho.values, state.rho.values)

    def test_round_trip_at_stationarity(self):
        from qsframework.fields.velocities import osmotic_velocity
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.fokker_planck.flux import NodalDifferences
        from qsframework.fokker_planck.stepper import fp_forward_step, fp_backward_step

        beta = 0.5
        state = gaussian_state(beta=beta, points=241, half_width=6.0)
        u = osmotic_velocity(state.rho, beta)
        constants = FPConstants(discretization=NodalDifferences())

        forward = fp_forward_step(state.with_drift(u), 0.002, constants)
        backward = fp_backward_step(forward.with_drift(-u), 0.002, constants)

        np.testing.assert_allclose(backward.rho.values, state.rho.values, rtol=0.0, atol=1e-8)


class TestIdentities(TestCase):
    def _random_fields(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField

        rng = np.random.default_rng(42)
        grid = Grid.box([0.0, 0.0], [2.0, 2.0], [20, 20], Grid.Boundary.PERIODIC)
        rho = ScalarField(grid, rng.uniform(0.1, 1.0, grid.shape))
        b, b_star, v = [VectorField(grid, rng.normal(size=grid.shape + (2,))) for _ in range(3)]
        return rho, b, b_star, v

    def test_half_sum(self):
        from qsframework.fokker_planck.flux import ConservativeFaceFlux
        from qsframework.fokker_planck.residuals import half_sum_residual

        rho, b, b_star, v = self._random_fields()

        for discretization in [None, ConservativeFaceFlux()]:
            residual = half_sum_residual(rho, b, b_star, v, 0.7, discretization)
            self.assertLess(np.max(np.abs(residual.values)), 1e-12)

    def test_half_difference_with_osmotic_velocity(self):
        from qsframework.fields.field import VectorField
        from qsframework.fields.velocities import osmotic_velocity
        from qsframework.fokker_planck.residuals import half_difference_residual

        beta = 0.5
        state = gaussian_state(beta=beta, points=241, half_width=6.0)
        u = osmotic_velocity(state.rho, beta)
        upsilon = VectorField.from_function(state.grid, lambda x: (np.cos(x),))
        zero = VectorField.zeros(state.grid)

        residual = half_difference_residual(state.rho, upsilon + u, upsilon - u, zero, beta)
        wrong = half_difference_residual(state.rho, upsilon + u * 2.0, upsilon - u * 2.0, zero, beta)

        self.assertLess(np.max(np.abs(residual.values)), 1e-10)
        self.assertGreater(np.max(np.abs(wrong.values)), 0.1)


class TestContinuityResidual(TestCase):
    def test_static_uniform(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.residuals import continuity_residual

        grid = Grid.box([0.0], [1.0], [10], Grid.Boundary.PERIODIC)
        zero = VectorField.zeros(grid)

        residual = continuity_residual(ScalarField.constant(grid, 1.0), zero, zero)

        np.testing.assert_array_equal(residual.values, 0.0)

    def test_translating_gaussian(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField, FieldPair
        from qsframework.fokker_planck.residuals import continuity_residual

        speed, dt = 1.0, 1e-3
        grid = Grid.box([-8.0], [8.0], [1600])
        x = grid.axes()[0]

        def density(t):
            return ScalarField(grid, np.exp(-(x - speed * t) ** 2 / 2.0) / np.sqrt(2.0 * np.pi))

        rho = FieldPair(density(0.0), density(dt), dt)
        upsilon = VectorField.uniform(grid, [speed])
        zero = VectorField.zeros(grid)

        residual = continuity_residual(rho, upsilon, zero)
        wrong = continuity_residual(rho, upsilon * 2.0, zero)

        self.assertLess(np.max(np.abs(residual.values)), 1e-3)
        self.assertGreater(np.max(np.abs(wrong.values)), 0.2)


class TestStationarityResidual(TestCase):
    def test_harmonic_ground_state(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.residuals import stationarity_residual

        m, hbar, omega = 1.0, 1.0, 1.0
        grid = Grid.box([-5.0], [5.0], [201])
        u = VectorField.from_function(grid, lambda x: (-omega * x,))
        potential = ScalarField.from_function(grid, lambda x: 0.5 * m * omega ** 2 * x ** 2)

        residual = stationarity_residual(u, potential, 0.5 * hbar * omega, m, hbar)
        shifted = stationarity_residual(u, potential, 0.5 * hbar * omega + 0.25, m, hbar)

        self.assertLess(np.max(np.abs(residual.values)), 1e-12)
        np.testing.assert_allclose(shifted.values - residual.values, 0.25 / m, rtol=1e-12)

    def test_hydrogen_ground_state(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.residuals import stationarity_residual

        grid = Grid.radial(20.0, 1999)
        u = VectorField.uniform(grid, [-1.0])
        potential = ScalarField.from_function(grid, lambda r: -1.0 / r)

        residual = stationarity_residual(u, potential, -0.5, 1.0, 1.0)

        self.assertLess(np.max(np.abs(residual.values[1:-1])), 1e-9)


class TestCoupledFieldResiduals(TestCase):
    def test_zero_fields(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.residuals import coupled_field_residuals

        grid = Grid.box([0.0, 0.0], [1.0, 1.0], [8, 8])
        zero = VectorField.zeros(grid)

        osmotic, current = coupled_field_residuals(zero, zero, zero, ScalarField.constant(grid, 3.0), 1.0, 1.0,
                                                   external_force=zero)

        np.testing.assert_array_equal(osmotic.values, 0.0)
        np.testing.assert_array_equal(current.values, 0.0)

    def test_harmonic_ground_state(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.residuals import coupled_field_residuals

        m, hbar, omega = 2.0, 1.0, 1.5
        grid = Grid.box([-4.0], [4.0], [161])
        u = VectorField.from_function(grid, lambda x: (-omega * x,))
        potential = ScalarField.from_function(grid, lambda x: 0.5 * m * omega ** 2 * x ** 2)
        zero = VectorField.zeros(grid)

        osmotic, current = coupled_field_residuals(u, zero, zero, potential, m, hbar)

        interior = grid.interior_mask(1)
        self.assertLess(np.max(np.abs(osmotic.values)), 1e-12)
        self.assertLess(np.max(np.abs(current.values[interior])), 1e-10)

    def test_external_force_balances_potential(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fokker_planck.residuals import coupled_field_residuals

        grid = Grid.box([0.0], [1.0], [10], Grid.Boundary.PERIODIC)
        zero = VectorField.zeros(grid)
        potential = ScalarField.constant(grid, 1.0)

        _, current = coupled_field_residuals(zero, zero, zero, potential, 2.0, 1.0,
                                             external_force=VectorField.uniform(grid, [4.0]))

        np.testing.assert_allclose(current.values, -2.0)


class TestStationaryResiduals(TestCase):
    def test_harmonic_ground_state(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import VectorField
        from qsframework.fokker_planck.residuals import stationary_residuals

        omega, beta = 1.5, 0.25
        grid = Grid.box([-4.0], [4.0], [161])
        u = VectorField.from_function(grid, lambda x: (-omega * x,))
        a = VectorField.from_function(grid, lambda x: (-omega ** 2 * x,))

        residuals = stationary_residuals(u, VectorField.zeros(grid), a, beta)

        interior = grid.interior_mask(1)
        self.assertLess(np.max(np.abs(residuals.momentum.values)), 1e-12)
        self.assertLess(np.max(np.abs(residuals.potential.values[interior])), 1e-12)
        np.testing.assert_array_equal(residuals.volume.values, 0.0)

    def test_uniform_volume_velocity_without_osmotic_velocity(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import VectorField
        from qsframework.fokker_planck.residuals import stationary_residuals

        grid = Grid.box([0.0, 0.0], [1.0, 1.0], [10, 10], Grid.Boundary.PERIODIC)
        zero = VectorField.zeros(grid)

        residuals = stationary_residuals(zero, VectorField.uniform(grid, [0.3, -0.2]), zero, 0.5)

        np.testing.assert_array_equal(residuals.volume.values, 0.0)


class TestFPEvolution(TestCase):
    def test_snapshots_and_log(self):
        from qsframework.fokker_planck.constants import FPConstants
        from qsframework.fokker_planck.evolution import FPEvolution

        evolution = FPEvolution(FPConstants(snapshot_stride=4))

        trajectory = evolution.run(gaussian_state(), 10, dt=0.001)

        self.assertEqual([entry['step'] for entry in trajectory.log], [0, 4, 8, 10])
        self.assertEqual(len(trajectory.snapshots), 4)
        self.assertAlmostEqual(trajectory.final.t, 0.01, delta=1e-14)
        self.assertLess(trajectory.diagnostics()['max_mass_drift'], 1e-8)

    def test_default_time_step(self):
        from qsframework.fokker_planck.evolution import FPEvolution
        from qsframework.fokker_planck.stepper import stability_bound

        state = gaussian_state()

        trajectory = FPEvolution().run(state, 3)

        self.assertAlmostEqual(trajectory.final.t, 3 * stability_bound(state), delta=1e-15)

    def test_drift_update(self):
        from qsframework.fields.field import VectorField
        from qsframework.fokker_planck.evolution import FPEvolution

        calls = []

        def update(state):
            calls.append(state.t)
            return VectorField.zeros(state.grid)

        FPEvolution().run(gaussian_state(), 5, dt=0.001, drift_update=update)

        self.assertEqual(len(calls), 5)

    def test_write(self):
        from qsframework.fokker_planck.evolution import FPEvolution
        from qsframework.fields.serialization import read_field

        trajectory = FPEvolution().run(gaussian_state(points=51), 2, dt=0.001)

        with tempfile.TemporaryDirectory() as directory:
            trajectory.write(directory)
            with open(os.path.join(directory, 'fp_log.json'), 'r', encoding='utf-8') as stream:
                log = json.load(stream)
            last = read_field(os.path.join(directory, 'rho_000002.txt'))

        self.assertEqual(log['steps'], 2)
        self.assertEqual(log['clipped_nodes'], 0)
        np.testing.assert_allclose(last.values, trajectory.final.rho.values, rtol=1e-15)
