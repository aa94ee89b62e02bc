from unittest import TestCase
import json
import os
import tempfile

import numpy as np


def oscillator_spec(half_width=8.0, points=801, omega=1.0):
    from qsframework.fields.grid import Grid
    from qsframework.fields.field import ScalarField
    from qsframework.schrodinger.hamiltonian import HamiltonianSpec

    grid = Grid.box([-half_width], [half_width], [points])
    return HamiltonianSpec(ScalarField.from_function(grid, lambda x: 0.5 * omega ** 2 * x ** 2))


def hydrogen_spec(r_max=40.0, points=7999):
    from qsframework.fields.grid import Grid
    from qsframework.fields.field import ScalarField
    from qsframework.schrodinger.hamiltonian import HamiltonianSpec

    grid = Grid.radial(r_max, points)
    return HamiltonianSpec(ScalarField.from_function(grid, lambda r: -1.0 / r))


def gaussian_packet(grid, sigma=1.0, center=0.0, k0=0.0):
    from qsframework.fields.wavefunction import WaveFunction

    return WaveFunction.from_function(
        grid, lambda x: np.exp(-(x - center) ** 2 / (4.0 * sigma ** 2) + 1j * k0 * x), 1.0, 1.0)


def factorized():
    from qsframework.schrodinger.constants import EvolutionConstants

    return EvolutionConstants(solver=EvolutionConstants.Solver.FACTORIZED)


class TestConstants(TestCase):
    def test_eigen_tolerance_range(self):
        from qsframework.schrodinger.constants import EigenConstants
        from qsframework.core.exceptions import OutOfRangeException

        self.assertRaises(OutOfRangeException, EigenConstants, residual_tolerance=0.0)
        self.assertRaises(OutOfRangeException, EigenConstants, residual_tolerance=1.0)

    def test_evolution_solver_type(self):
        from qsframework.schrodinger.constants import EvolutionConstants
        from qsframework.core.exceptions import WrongStrictTypeException

        self.assertRaises(WrongStrictTypeException, EvolutionConstants, solver='iterative')

    def test_snapshot_stride(self):
        from qsframework.schrodinger.constants import EvolutionConstants
        from qsframework.core.exceptions import OutOfRangeException, WrongStrictTypeException

        self.assertRaises(OutOfRangeException, EvolutionConstants, snapshot_stride=0)
        self.assertRaises(WrongStrictTypeException, EvolutionConstants, snapshot_stride=1.0)


class TestHamiltonianSpec(TestCase):
    def test_grid_mismatch(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec
        from qsframework.core.exceptions import GridMismatchException

        grid = Grid.box([0.0], [1.0], [10])
        other = Grid.box([0.0], [2.0], [10])
        self.assertRaises(GridMismatchException, HamiltonianSpec, ScalarField.constant(grid, 0.0),
                          vector_potential=VectorField.zeros(other), charge=1.0)

    def test_charge_required_with_potentials(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec
        from qsframework.core.exceptions import NoneValueException

        grid = Grid.box([0.0], [1.0], [10])
        self.assertRaises(NoneValueException, HamiltonianSpec, ScalarField.constant(grid, 0.0),
                          vector_potential=VectorField.zeros(grid))

    def test_radial_vector_potential(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec
        from qsframework.core.exceptions import DimensionException

        grid = Grid.radial(10.0, 50)
        self.assertRaises(DimensionException, HamiltonianSpec, ScalarField.constant(grid, 0.0),
                          vector_potential=VectorField.zeros(grid), charge=1.0)


class TestHermiticity(TestCase):
    def test_every_variant(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec, hermiticity_defect

        plane = Grid.box([-2.0, -2.0], [2.0, 2.0], [21, 17], Grid.Boundary.PERIODIC)
        potential = ScalarField.from_function(plane, lambda x, y: x ** 2 + 0.5 * y)
        vector_potential = VectorField.from_function(plane, lambda x, y: (np.sin(y), 0.3 * x * y))
        scalar_potential = ScalarField.from_function(plane, lambda x, y: np.cos(x))
        reflecting = Grid.box([0.0], [1.0], [30], Grid.Boundary.REFLECTING)

        specs = [
            HamiltonianSpec(potential),
            HamiltonianSpec(potential, kinetic_energy=0.4, coupling_integral=-0.1),
            HamiltonianSpec(potential, vector_potential=vector_potential, scalar_potential=scalar_potential,
                            charge=-1.0),
            HamiltonianSpec(ScalarField.constant(reflecting, 1.0)),
            hydrogen_spec(20.0, 400),
        ]
        for spec in specs:
            self.assertLess(hermiticity_defect(spec, 1.0, 1.0, seed=3), 1e-10)


class TestSolveStationary(TestCase):
    def test_infinite_box(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec
        from qsframework.schrodinger.eigen import solve_stationary

        grid = Grid.box([0.0], [1.0], [2000])
        solutions = solve_stationary(HamiltonianSpec(ScalarField.constant(grid, 0.0)), 1.0, 1.0, k=3)

        ground = np.pi ** 2 / 2.0
        self.assertAlmostEqual(1.0, solutions[0].energy / ground, delta=1e-6)
        self.assertAlmostEqual(4.0, solutions[1].energy / ground, delta=1e-5)
        self.assertAlmostEqual(9.0, solutions[2].energy / ground, delta=5e-5)
        for solution in solutions:
            self.assertLessEqual(solution.residual_norm, 1e-8)
            self.assertAlmostEqual(1.0, solution.psi.norm(), delta=1e-12)

    def test_harmonic_oscillator(self):
        from qsframework.schrodinger.eigen import solve_stationary

        solutions = solve_stationary(oscillator_spec(10.0, 8001), 1.0, 1.0, k=2)

        self.assertAlmostEqual(1.0, solutions[0].energy / 0.5, delta=1e-6)
        self.assertAlmostEqual(1.0, solutions[1].energy / 1.5, delta=2e-6)
        self.assertLess(solutions[0].energy, solutions[1].energy)

    def test_hydrogen(self):
        from qsframework.schrodinger.eigen import solve_stationary

        solution = solve_stationary(hydrogen_spec(), 1.0, 1.0)[0]

        self.assertAlmostEqual(1.0, solution.energy / -0.5, delta=1e-4)
        self.assertAlmostEqual(1.0, solution.psi.norm(), delta=1e-12)
        r = solution.psi.grid.axes()[0]
        exact = np.exp(-r) / np.sqrt(np.pi)
        self.assertTrue(np.allclose(solution.psi.amplitudes.real, exact, atol=1e-3))

    def test_kinetic_energy_adds(self):
        from dataclasses import replace
        from qsframework.schrodinger.eigen import solve_stationary

        spec = oscillator_spec()
        plain = solve_stationary(spec, 1.0, 1.0)[0]
        shifted = solve_stationary(replace(spec, kinetic_energy=0.25), 1.0, 1.0)[0]

        self.assertAlmostEqual(plain.energy + 0.25, shifted.energy, delta=1e-10)

    def test_two_dimensional_oscillator(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec
        from qsframework.schrodinger.eigen import solve_stationary

        grid = Grid.box([-6.0, -6.0], [6.0, 6.0], [79, 79])
        spec = HamiltonianSpec(ScalarField.from_function(grid, lambda x, y: 0.5 * (x ** 2 + y ** 2)))
        solutions = solve_stationary(spec, 1.0, 1.0, k=3)

        self.assertAlmostEqual(1.0, solutions[0].energy, delta=5e-3)
        self.assertAlmostEqual(2.0, solutions[1].energy, delta=1e-2)
        self.assertAlmostEqual(solutions[1].energy, solutions[2].energy, delta=1e-8)
        self.assertGreater(solutions[0].iterations, 0)

    def test_convergence_order(self):
        from qsframework.schrodinger.eigen import solve_stationary

        errors = [abs(solve_stationary(oscillator_spec(8.0, points), 1.0, 1.0)[0].energy - 0.5)
                  for points in (199, 399, 799)]

        for coarse, fine in zip(errors, errors[1:]):
            self.assertGreaterEqual(np.log2(coarse / fine), 1.8)

    def test_invalid_count(self):
        from qsframework.schrodinger.eigen import solve_stationary
        from qsframework.core.exceptions import OutOfRangeException, WrongStrictTypeException

        self.assertRaises(OutOfRangeException, solve_stationary, oscillator_spec(), 1.0, 1.0, 0)
        self.assertRaises(WrongStrictTypeException, solve_stationary, oscillator_spec(), 1.0, 1.0, 1.0)


class TestEvolve(TestCase):
    def test_eigenstate_is_stationary(self):
        from qsframework.schrodinger.eigen import solve_stationary
        from qsframework.schrodinger.evolution import evolve

        spec = oscillator_spec(8.0, 401)
        ground = solve_stationary(spec, 1.0, 1.0)[0]
        dt, steps = 0.01, 100
        trajectory = evolve(spec, ground.psi, dt, steps)

        overlap = ground.psi.inner(trajectory.final)
        self.assertAlmostEqual(1.0, abs(overlap), delta=1e-8)
        phase = -2.0 * steps * np.arctan(ground.energy * dt / 2.0)
        self.assertAlmostEqual(0.0, abs(overlap - np.exp(1j * phase)), delta=1e-8)
        self.assertAlmostEqual(-ground.energy * dt * steps, np.angle(overlap), delta=1e-5)
        self.assertTrue(np.allclose(np.abs(trajectory.final.amplitudes), np.abs(ground.psi.amplitudes),
                                    atol=1e-8))

    def test_unitary_and_energy_conserving(self):
        from qsframework.schrodinger.evolution import evolve

        spec = oscillator_spec(10.0, 401)
        psi0 = gaussian_packet(spec.grid, 0.7, 1.5, 0.5)
        trajectory = evolve(spec, psi0, 0.005, 200)
        diagnostics = trajectory.diagnostics()

        self.assertLessEqual(diagnostics['max_step_norm_drift'], 1e-10)
        self.assertLessEqual(diagnostics['max_energy_drift'], 1e-8)
        self.assertEqual(201, len(trajectory.snapshots))

    def test_free_packet_spreading(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec
        from qsframework.schrodinger.evolution import evolve

        grid = Grid.box([-40.0], [40.0], [3999])
        psi0 = gaussian_packet(grid)
        trajectory = evolve(HamiltonianSpec(ScalarField.constant(grid, 0.0)), psi0, 0.01, 200, factorized())

        x = grid.axes()[0]
        width = float(grid.integrate(x ** 2 * np.abs(trajectory.final.amplitudes) ** 2))
        self.assertAlmostEqual(1.0, width / 2.0, delta=0.01)

    def test_kinetic_energy_only_shifts_phase(self):
        from dataclasses import replace
        from qsframework.schrodinger.evolution import evolve

        spec = oscillator_spec(8.0, 301)
        psi0 = gaussian_packet(spec.grid, 0.8, 1.0)
        plain = evolve(spec, psi0, 0.01, 50)
        shifted = evolve(replace(spec, kinetic_energy=0.7), psi0, 0.01, 50)

        for a, b in zip(plain.snapshots, shifted.snapshots):
            self.assertTrue(np.allclose(np.abs(a.amplitudes), np.abs(b.amplitudes), rtol=0.0, atol=1e-10))
        overlap = plain.final.inner(shifted.final)
        self.assertAlmostEqual(0.0, abs(overlap - np.exp(-0.7j * 0.5)), delta=1e-9)
        self.assertAlmostEqual(plain.ledger[-1]['energy'] + 0.7, shifted.ledger[-1]['energy'], delta=1e-10)

    def test_coupling_integral_of_linear_volume_velocity(self):
        from dataclasses import replace
        from qsframework.fields.field import VectorField
        from qsframework.schrodinger.hamiltonian import coupling_integral
        from qsframework.schrodinger.evolution import evolve

        spec = oscillator_spec(10.0, 2001)
        psi0 = gaussian_packet(spec.grid)
        v = VectorField.from_function(spec.grid, lambda x: (0.5 * x,))

        self.assertAlmostEqual(0.25 * np.sqrt(2.0 / np.pi), coupling_integral(psi0, v), delta=1e-5)

        plain = evolve(spec, psi0, 0.01, 10)
        coupled = evolve(replace(spec, volume_velocity=v), psi0, 0.01, 10)
        self.assertTrue(np.allclose(np.abs(plain.final.amplitudes), np.abs(coupled.final.amplitudes),
                                    rtol=0.0, atol=1e-10))
        self.assertAlmostEqual(coupling_integral(psi0, v),
                               coupled.ledger[0]['energy'] - plain.ledger[0]['energy'], delta=1e-10)

    def test_uniform_volume_velocity_has_no_coupling(self):
        from dataclasses import replace
        from qsframework.fields.field import VectorField
        from qsframework.schrodinger.evolution import evolve

        spec = oscillator_spec(8.0, 201)
        psi0 = gaussian_packet(spec.grid, 0.8, 0.5)
        plain = evolve(spec, psi0, 0.01, 5, factorized())
        coupled = evolve(replace(spec, volume_velocity=VectorField.uniform(spec.grid, [2.0])), psi0, 0.01, 5,
                         factorized())

        self.assertTrue(np.allclose(plain.final.amplitudes, coupled.final.amplitudes, rtol=0.0, atol=1e-12))

    def test_radial_ground_state(self):
        from qsframework.schrodinger.eigen import solve_stationary
        from qsframework.schrodinger.evolution import evolve

        spec = hydrogen_spec(30.0, 1499)
        ground = solve_stationary(spec, 1.0, 1.0)[0]
        trajectory = evolve(spec, ground.psi, 0.05, 20, factorized())

        self.assertAlmostEqual(1.0, abs(ground.psi.inner(trajectory.final)), delta=1e-8)
        self.assertAlmostEqual(ground.energy, trajectory.ledger[-1]['energy'], delta=1e-9)

    def test_snapshot_stride(self):
        from qsframework.schrodinger.constants import EvolutionConstants
        from qsframework.schrodinger.evolution import evolve

        spec = oscillator_spec(8.0, 101)
        trajectory = evolve(spec, gaussian_packet(spec.grid), 0.01, 10, EvolutionConstants(snapshot_stride=4))

        self.assertEqual([0, 4, 8, 10], [entry['step'] for entry in trajectory.ledger])
        self.assertAlmostEqual(0.1, trajectory.times[-1])

    def test_invalid_arguments(self):
        from qsframework.fields.grid import Grid
        from qsframework.schrodinger.evolution import evolve
        from qsframework.core.exceptions import GridMismatchException, OutOfRangeException

        spec = oscillator_spec(8.0, 101)
        psi0 = gaussian_packet(spec.grid)
        self.assertRaises(OutOfRangeException, evolve, spec, psi0, 0.0, 10)
        self.assertRaises(OutOfRangeException, evolve, spec, psi0, 0.1, -1)
        other = gaussian_packet(Grid.box([-8.0], [8.0], [103]))
        self.assertRaises(GridMismatchException, evolve, spec, other, 0.1, 1)

    def test_failed_solve_reports_step(self):
        from qsframework.schrodinger.constants import EvolutionConstants
        from qsframework.schrodinger.evolution import evolve
        from qsframework.core.exceptions import SolverConvergenceException

        spec = oscillator_spec(8.0, 401)
        constants = EvolutionConstants(max_iterations=1)
        with self.assertRaises(SolverConvergenceException) as context:
            evolve(spec, gaussian_packet(spec.grid, 0.5, 1.0, 3.0), 1.0, 3, constants)
        self.assertEqual(1, context.exception.step)

    def test_write(self):
        from qsframework.schrodinger.evolution import evolve
        from qsframework.schrodinger.serialization import read_wavefunction

        spec = oscillator_spec(8.0, 101)
        psi0 = gaussian_packet(spec.grid, 1.0, 0.5, 1.0)
        trajectory = evolve(spec, psi0, 0.01, 3)

        with tempfile.TemporaryDirectory() as directory:
            trajectory.write(directory)
            with open(os.path.join(directory, 'schrodinger_log.json'), encoding='utf-8') as stream:
                log = json.load(stream)
            restored = read_wavefunction(os.path.join(directory, 'psi_000003.txt'), 1.0, 1.0, normalize=False)

        self.assertEqual(3, log['steps'])
        self.assertEqual(4, len(log['entries']))
        self.assertTrue(np.allclose(trajectory.final.amplitudes, restored.amplitudes, rtol=0.0, atol=1e-15))


class TestEvolveMagnetic(TestCase):
    def test_requires_vector_potential(self):
        from qsframework.schrodinger.evolution import evolve_magnetic
        from qsframework.core.exceptions import NoneValueException

        spec = oscillator_spec(8.0, 101)
        self.assertRaises(NoneValueException, evolve_magnetic, spec, gaussian_packet(spec.grid), 0.01, 1)

    def test_zero_field_matches_evolve(self):
        from dataclasses import replace
        from qsframework.fields.field import VectorField
        from qsframework.schrodinger.evolution import evolve, evolve_magnetic

        spec = oscillator_spec(8.0, 301)
        psi0 = gaussian_packet(spec.grid, 0.8, 1.0, 1.0)
        plain = evolve(spec, psi0, 0.01, 40, factorized())
        magnetic = evolve_magnetic(replace(spec, vector_potential=VectorField.zeros(spec.grid), charge=-1.0),
                                   psi0, 0.01, 40, factorized())

        self.assertTrue(np.allclose(plain.final.amplitudes, magnetic.final.amplitudes, rtol=0.0, atol=1e-12))

    def test_constant_potential_plane_wave(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fields.wavefunction import WaveFunction
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec
        from qsframework.schrodinger.evolution import evolve_magnetic

        grid = Grid.box([0.0], [2.0 * np.pi], [64], Grid.Boundary.PERIODIC)
        h = grid.spacing[0]
        k, charge, a = 3.0, 1.0, 0.4
        psi0 = WaveFunction.from_function(grid, lambda x: np.exp(1j * k * x), 1.0, 1.0)
        spec = HamiltonianSpec(ScalarField.constant(grid, 0.0), vector_potential=VectorField.uniform(grid, [a]),
                               charge=charge)
        dt, steps = 0.01, 50
        trajectory = evolve_magnetic(spec, psi0, dt, steps, factorized())

        # kinetic momentum hbar k - q A in the lattice dispersion
        energy = (1.0 - np.cos((k - charge * a) * h)) / h ** 2
        factor = (1.0 - 0.5j * energy * dt) / (1.0 + 0.5j * energy * dt)
        self.assertAlmostEqual(0.0, abs(psi0.inner(trajectory.final) - factor ** steps), delta=1e-9)
        self.assertAlmostEqual(energy, trajectory.ledger[0]['energy'], delta=1e-10)
        free = (1.0 - np.cos(k * h)) / h ** 2
        self.assertGreater(abs(energy - free), 0.1)

    def test_gauge_invariance(self):
        from dataclasses import replace
        from qsframework.fields.field import VectorField
        from qsframework.schrodinger.evolution import evolve_magnetic

        spec = oscillator_spec(8.0, 401)
        charge = -1.0
        psi0 = gaussian_packet(spec.grid, 0.8, 1.0, 0.5)
        base = replace(spec, vector_potential=VectorField.uniform(spec.grid, [0.3]), charge=charge)
        # chi = 0.25 x^2
        gauged = replace(spec, vector_potential=VectorField.from_function(spec.grid, lambda x: (0.3 + 0.5 * x,)),
                         charge=charge)
        x = spec.grid.axes()[0]
        psi0_gauged = psi0.with_amplitudes(psi0.amplitudes * np.exp(1j * charge * 0.25 * x ** 2), check=True)

        first = evolve_magnetic(base, psi0, 0.01, 50, factorized())
        second = evolve_magnetic(gauged, psi0_gauged, 0.01, 50, factorized())
        for a, b in zip(first.snapshots, second.snapshots):
            self.assertTrue(np.allclose(np.abs(a.amplitudes), np.abs(b.amplitudes), rtol=0.0, atol=1e-8))


class TestMadelungFields(TestCase):
    def test_oscillator_ground_state(self):
        from qsframework.schrodinger.eigen import solve_stationary
        from qsframework.schrodinger.madelung import madelung_fields

        spec = oscillator_spec(8.0, 799)
        ground = solve_stationary(spec, 1.0, 1.0)[0]
        fields = madelung_fields(ground.psi)

        x = spec.grid.axes()[0]
        bulk = np.abs(x) <= 2.0
        self.assertTrue(np.all(fields.upsilon.values == 0.0))
        self.assertTrue(np.allclose(fields.u.values[bulk, 0], -x[bulk], atol=3e-3))
        self.assertTrue(np.allclose(fields.b.values, fields.u.values))
        self.assertTrue(np.allclose(fields.b_star.values, -fields.u.values))

    def test_plane_wave(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import VectorField
        from qsframework.fields.wavefunction import WaveFunction
        from qsframework.schrodinger.madelung import madelung_fields

        grid = Grid.box([0.0], [2.0 * np.pi], [128], Grid.Boundary.PERIODIC)
        k, mass, hbar = 5.0, 2.0, 1.0
        psi = WaveFunction.from_function(grid, lambda x: np.exp(1j * k * x), mass, hbar)
        fields = madelung_fields(psi)

        self.assertTrue(np.allclose(fields.u.values, 0.0, atol=1e-10))
        self.assertTrue(np.allclose(fields.upsilon.values, hbar * k / mass, rtol=0.0, atol=1e-10))

        moving = madelung_fields(psi, VectorField.uniform(grid, [hbar * k / mass]))
        self.assertTrue(np.allclose(moving.upsilon.values, 0.0, atol=1e-10))

    def test_nodal_surface(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.wavefunction import WaveFunction
        from qsframework.schrodinger.madelung import madelung_fields
        from qsframework.core.exceptions import NodalSurfaceException

        grid = Grid([201], [0.05], [-5.0])
        x = grid.axes()[0]
        amplitudes = x * np.exp(-x ** 2 / 2.0)
        amplitudes[100] = 0.0
        psi = WaveFunction.normalized(grid, amplitudes, 1.0, 1.0)
        self.assertRaises(NodalSurfaceException, madelung_fields, psi)


class TestStationarityRoundTrip(TestCase):
    def test_oscillator(self):
        from qsframework.schrodinger.eigen import solve_stationary
        from qsframework.schrodinger.madelung import madelung_fields
        from qsframework.fokker_planck.residuals import stationarity_residual

        spec = oscillator_spec(8.0, 159999)
        ground = solve_stationary(spec, 1.0, 1.0)[0]
        fields = madelung_fields(ground.psi)
        residual = stationarity_residual(fields.u, spec.potential, ground.energy, 1.0, 1.0)

        rho = fields.rho.values
        bulk = (rho >= 1e-4 * rho.max()) & spec.grid.interior_mask(2)
        self.assertLess(np.max(np.abs(residual.values[bulk])), 1e-6)

    def test_hydrogen(self):
        from qsframework.schrodinger.eigen import solve_stationary
        from qsframework.schrodinger.madelung import madelung_fields
        from qsframework.fokker_planck.residuals import stationarity_residual

        spec = hydrogen_spec(20.0, 199999)
        ground = solve_stationary(spec, 1.0, 1.0)[0]
        fields = madelung_fields(ground.psi)
        residual = stationarity_residual(fields.u, spec.potential, ground.energy, 1.0, 1.0)

        r = spec.grid.axes()[0]
        rho = fields.rho.values
        bulk = (rho >= 1e-4 * rho.max()) & (r >= 0.5)
        self.assertLess(np.max(np.abs(residual.values[bulk])), 1e-6)

    def test_continuity_of_moving_packet_converges(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import FieldPair, ScalarField
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec
        from qsframework.schrodinger.evolution import evolve
        from qsframework.schrodinger.madelung import madelung_fields
        from qsframework.fokker_planck.residuals import continuity_residual

        errors = []
        for points in (199, 399, 799):
            grid = Grid.box([-10.0], [10.0], [points])
            psi0 = gaussian_packet(grid, 1.0, 0.0, 1.0)
            trajectory = evolve(HamiltonianSpec(ScalarField.constant(grid, 0.0)), psi0, 1e-4, 1, factorized())
            before, after = madelung_fields(psi0), madelung_fields(trajectory.final)
            residual = continuity_residual(FieldPair(before.rho, after.rho, 1e-4),
                                           FieldPair(before.upsilon, after.upsilon, 1e-4),
                                           FieldPair.static(before.upsilon * 0.0))
            errors.append(float(np.max(np.abs(residual.values))))

        for coarse, fine in zip(errors, errors[1:]):
            self.assertGreaterEqual(np.log2(coarse / fine), 1.8)

    def test_coupled_fields_of_moving_packet_converge(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import FieldPair, ScalarField, VectorField
        from qsframework.schrodinger.hamiltonian import HamiltonianSpec
        from qsframework.schrodinger.evolution import evolve
        from qsframework.schrodinger.madelung import madelung_fields
        from qsframework.fokker_planck.residuals import coupled_field_residuals

        dt = 1e-4
        osmotic_errors, current_errors = [], []
        for points in (199, 399, 799):
            grid = Grid.box([-10.0], [10.0], [points])
            potential = ScalarField.constant(grid, 0.0)
            psi0 = gaussian_packet(grid, 1.0, 0.0, 1.0)
            trajectory = evolve(HamiltonianSpec(potential), psi0, dt, 1, factorized())
            before, after = madelung_fields(psi0), madelung_fields(trajectory.final)
            osmotic, current = coupled_field_residuals(FieldPair(before.u, after.u, dt),
                                                       FieldPair(before.upsilon, after.upsilon, dt),
                                                       VectorField.zeros(grid), potential, 1.0, 1.0)

            # the walls disturb the log-density of the far tails
            bulk = grid.interior_mask(2) & (np.abs(grid.axes()[0]) <= 4.0)
            osmotic_errors.append(float(np.max(np.abs(osmotic.values[bulk]))))
            current_errors.append(float(np.max(np.abs(current.values[bulk]))))

        for errors in (osmotic_errors, current_errors):
            for coarse, fine in zip(errors, errors[1:]):
                self.assertGreaterEqual(np.log2(coarse / fine), 1.8)
