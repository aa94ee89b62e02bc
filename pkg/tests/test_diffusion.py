from math import pi
from unittest import TestCase

import numpy as np
from scipy import constants


class TestFrictionCoefficient(TestCase):
    def test_zero_frequency(self):
        from qsframework.langevin.diffusion import friction_coefficient

        self.assertEqual(friction_coefficient(1.0, 0.0), 0.0)

    def test_unit_mass(self):
        from qsframework.langevin.diffusion import friction_coefficient

        self.assertAlmostEqual(friction_coefficient(1.0, 1.0), 12.566370614359172)

    def test_electron(self):
        from qsframework.langevin.diffusion import friction_coefficient

        xi = friction_coefficient(constants.m_e, 1e15)

        self.assertAlmostEqual(xi, 4.0 * pi * constants.m_e * 1e15, delta=1e-28)
        self.assertAlmostEqual(xi / 1.14468e-14, 1.0, delta=1e-3)

    def test_invalid_mass(self):
        from qsframework.langevin.diffusion import friction_coefficient
        from qsframework.core.exceptions import OutOfRangeException

        self.assertRaises(OutOfRangeException, friction_coefficient, 0.0, 1.0)
        self.assertRaises(OutOfRangeException, friction_coefficient, 1.0, -1.0)


class TestAlphaRelaxation(TestCase):
    def test_initial_value(self):
        from qsframework.langevin.diffusion import alpha_relaxation

        self.assertAlmostEqual(alpha_relaxation(0.0, 3.0, 2.0, 1.0, 0.5), 3.5)

    def test_constant_without_transient(self):
        from qsframework.langevin.diffusion import alpha_relaxation

        values = alpha_relaxation(np.linspace(0.0, 10.0, 11), 3.0, 2.0, 1.0, 0.0)

        np.testing.assert_allclose(values, 3.0)

    def test_asymptote_independent_of_frequency(self):
        from qsframework.langevin.diffusion import alpha_relaxation, friction_coefficient, quantum_energy

        m = constants.m_e
        h = 2.0 * pi * constants.hbar
        asymptotes = []
        for nu in [1e12, 1e14, 1e16, 1e18]:
            xi = friction_coefficient(m, nu)
            asymptotes.append(alpha_relaxation(1e6 * m / xi, quantum_energy(nu, h), xi, m, 1.0))

        asymptotes = np.array(asymptotes)
        self.assertLess(np.ptp(asymptotes) / np.mean(asymptotes), 1e-12)
        np.testing.assert_allclose(asymptotes, constants.hbar / m, rtol=1e-12)

    def test_transient_decays(self):
        from qsframework.langevin.diffusion import alpha_relaxation

        m, xi, h_nu, c = 2.0, 4.0, 1.0, 1.0
        asymptote = 2.0 * h_nu / xi

        value = alpha_relaxation(30.0 * m / xi, h_nu, xi, m, c)

        self.assertLess(abs(value - asymptote), 1e-12 * asymptote)

    def test_monotone(self):
        from qsframework.langevin.diffusion import alpha_relaxation

        values = alpha_relaxation(np.linspace(0.0, 5.0, 50), 1.0, 1.0, 1.0, 2.0)

        self.assertTrue(np.all(np.diff(values) < 0))

    def test_no_friction(self):
        from qsframework.langevin.diffusion import alpha_relaxation
        from qsframework.core.exceptions import NoAsymptoteException

        self.assertRaises(NoAsymptoteException, alpha_relaxation, 1.0, 1.0, 0.0, 1.0, 0.0)

    def test_numerical_solution(self):
        from qsframework.langevin.diffusion import alpha_relaxation, solve_alpha

        times = np.linspace(0.0, 4.0, 41)
        h_nu, xi, m, c = 0.7, 1.3, 0.9, -0.2

        numerical = solve_alpha(times, h_nu, xi, m, 2.0 * h_nu / xi + c)

        np.testing.assert_allclose(numerical, alpha_relaxation(times, h_nu, xi, m, c), rtol=1e-6)


class TestMsdAndDiffusion(TestCase):
    def test_zero_noise(self):
        from qsframework.langevin.config import StepperConfig
        from qsframework.langevin.stepper import simulate_ensemble
        from qsframework.langevin.diffusion import msd_and_diffusion

        ensemble = simulate_ensemble(StepperConfig(dt=0.1, n_steps=20, n_paths=100, beta=0.0))

        curve, fit = msd_and_diffusion(ensemble)

        np.testing.assert_array_equal(curve.msd, 0.0)
        self.assertEqual(fit.beta, 0.0)

    def test_free_diffusion(self):
        from qsframework.langevin.config import StepperConfig
        from qsframework.langevin.stepper import simulate_ensemble
        from qsframework.langevin.diffusion import msd_and_diffusion

        config = StepperConfig(dt=1e-3, n_steps=1000, n_paths=100000, beta=1.0, master_seed=2024, record_stride=10)

        _, fit = msd_and_diffusion(simulate_ensemble(config, threads=4))

        self.assertGreaterEqual(fit.beta, 0.95)
        self.assertLessEqual(fit.beta, 1.05)

    def test_electron_diffusion_constant(self):
        from qsframework.langevin.config import StepperConfig
        from qsframework.langevin.stepper import simulate_ensemble
        from qsframework.langevin.diffusion import msd_and_diffusion

        beta = constants.hbar / (2.0 * constants.m_e)
        config = StepperConfig(dt=1e-3, n_steps=200, n_paths=20000, beta=beta, master_seed=7, dim=3,
                               mass=constants.m_e, record_stride=5)

        _, fit = msd_and_diffusion(simulate_ensemble(config, threads=2))

        self.assertAlmostEqual(beta, 5.7884e-5, delta=1e-8)
        self.assertAlmostEqual(fit.beta / beta, 1.0, delta=0.05)

    def test_too_few_paths(self):
        from qsframework.langevin.config import StepperConfig
        from qsframework.langevin.stepper import simulate_ensemble
        from qsframework.langevin.diffusion import msd_and_diffusion
        from qsframework.core.exceptions import TooShortEnsembleException

        ensemble = simulate_ensemble(StepperConfig(n_steps=10, n_paths=99))

        self.assertRaises(TooShortEnsembleException, msd_and_diffusion, ensemble)

    def test_too_few_samples(self):
        from qsframework.langevin.config import StepperConfig
        from qsframework.langevin.stepper import simulate_ensemble
        from qsframework.langevin.diffusion import msd_and_diffusion
        from qsframework.core.exceptions import TooShortEnsembleException

        ensemble = simulate_ensemble(StepperConfig(n_steps=2, n_paths=100))

        self.assertRaises(TooShortEnsembleException, msd_and_diffusion, ensemble)

    def test_transient_cut_too_short(self):
        from qsframework.langevin.config import StepperConfig
        from qsframework.langevin.stepper import simulate_ensemble
        from qsframework.langevin.diffusion import msd_and_diffusion
        from qsframework.core.exceptions import OutOfRangeException

        ensemble = simulate_ensemble(StepperConfig(dt=0.1, n_steps=100, n_paths=100, mass=1.0, xi=1.0))

        self.assertRaises(OutOfRangeException, msd_and_diffusion, ensemble, 4.9)
        _, fit = msd_and_diffusion(ensemble, 5.0)
        self.assertIn(fit.samples, (50, 51))


class TestTransitionEnergy(TestCase):
    def test_quadratic_msd(self):
        from qsframework.langevin.diffusion import MSDCurve, transition_energy_from_msd

        times = np.linspace(0.0, 1.0, 21)
        curve = MSDCurve(times=times, msd=3.0 * times ** 2, dim=1)

        energy = transition_energy_from_msd(curve, 2.0)

        np.testing.assert_allclose(energy[2:-2], 6.0, rtol=1e-10)


class TestExport(TestCase):
    def test_ensemble_and_summary_files(self):
        import json
        import os
        import tempfile
        from qsframework.langevin.config import StepperConfig
        from qsframework.langevin.stepper import simulate_ensemble
        from qsframework.langevin.diffusion import msd_and_diffusion
        from qsframework.langevin.serialization import export_ensemble_csv, export_msd_csv, write_summary

        ensemble = simulate_ensemble(StepperConfig(dt=0.1, n_steps=10, n_paths=100, dim=2, master_seed=3))
        curve, fit = msd_and_diffusion(ensemble)

        with tempfile.TemporaryDirectory() as directory:
            paths = os.path.join(directory, 'paths.csv')
            export_ensemble_csv(paths, ensemble)
            export_msd_csv(os.path.join(directory, 'msd.csv'), curve)
            write_summary(os.path.join(directory, 'summary.json'), ensemble, fit)

            rows = np.loadtxt(paths, delimiter=',', skiprows=1)
            with open(paths, encoding='utf-8') as stream:
                header = stream.readline().strip()
            msd = np.loadtxt(os.path.join(directory, 'msd.csv'), delimiter=',', skiprows=1)
            with open(os.path.join(directory, 'summary.json'), encoding='utf-8') as stream:
                summary = json.load(stream)

        self.assertEqual(header, 'time,path,x,y')
        self.assertEqual(rows.shape, (100 * len(ensemble.times), 4))
        np.testing.assert_array_equal(rows[:len(ensemble.times), 2:], ensemble.positions[0])
        np.testing.assert_array_equal(msd[:, 1], curve.msd)
        self.assertEqual(summary['config']['master_seed'], 3)
        self.assertEqual(summary['fit']['beta'], fit.beta)
