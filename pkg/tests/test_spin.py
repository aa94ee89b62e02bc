from unittest import TestCase

import numpy as np


def exponential_density(axis=0, a=1.0):
    from qsframework.fields.grid import Grid
    from qsframework.fields.field import ScalarField

    grid = Grid([41, 5, 5], [0.01, 0.01, 0.01]) if axis == 0 else Grid([5, 5, 41], [0.01, 0.01, 0.01])
    return ScalarField.from_function(grid, lambda x, y, z: np.exp(-2.0 * (x, y, z)[axis] / a))


class TestSpinAxis(TestCase):
    def test_rejects_non_unit(self):
        from qsframework.fields.spin import SpinAxis
        from qsframework.core.exceptions import OutOfRangeException

        self.assertRaises(OutOfRangeException, SpinAxis, [0.0, 0.0, 2.0])

    def test_normalize(self):
        from qsframework.fields.spin import SpinAxis

        axis = SpinAxis([0.0, 3.0, 4.0], normalize=True)

        self.assertAlmostEqual(float(np.linalg.norm(axis.direction)), 1.0, places=12)


class TestSpinDrift(TestCase):
    def test_requires_three_dimensions(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField
        from qsframework.fields.spin import SpinAxis, spin_drift
        from qsframework.core.exceptions import DimensionException

        rho = ScalarField(Grid([10], [0.1]), np.ones(10))

        self.assertRaises(DimensionException, spin_drift, rho, SpinAxis([0.0, 0.0, 1.0]), 1.0, 1.0)

    def test_gradient_parallel_to_axis(self):
        from qsframework.fields.spin import SpinAxis, spin_drift

        rho = exponential_density(axis=2)

        b, b_star = spin_drift(rho, SpinAxis([0.0, 0.0, 1.0]), 1.0, 1.0)

        self.assertTrue(np.all(b.values == 0.0))
        self.assertTrue(np.all(b_star.values == 0.0))

    def test_hand_evaluated_cross_product(self):
        from qsframework.fields.spin import SpinAxis, spin_drift

        rho = exponential_density(axis=0)

        b, b_star = spin_drift(rho, SpinAxis([0.0, 0.0, 1.0]), 1.0, 1.0)

        # hbar / (m a) along +y
        np.testing.assert_allclose(b.values[20, 2, 2], [0.0, 1.0, 0.0], rtol=1e-3, atol=1e-12)
        np.testing.assert_allclose(b_star.values[20, 2, 2], [0.0, -1.0, 0.0], rtol=1e-3, atol=1e-12)

    def test_antisymmetry_and_orthogonality_on_random_densities(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField
        from qsframework.fields.differencing import gradient
        from qsframework.fields.spin import SpinAxis, spin_drift

        rng = np.random.default_rng(42)
        grid = Grid([8, 8, 8], [0.1, 0.1, 0.1])
        x, y, z = grid.mesh()
        for _ in range(20):
            coefficients = rng.normal(size=6)
            values = np.exp(coefficients[0] * np.sin(x) + coefficients[1] * np.cos(2 * y) + coefficients[2] * z
                            + coefficients[3] * x * y + coefficients[4] * y * z + coefficients[5] * z ** 2)
            rho = ScalarField(grid, values)
            axis = SpinAxis(rng.normal(size=3), normalize=True)

            b, b_star = spin_drift(rho, axis, 1.0, 1.0)
            log_gradient = gradient(values, grid) / values[..., np.newaxis]
            scale = np.max(np.abs(b.values)) * np.max(np.abs(log_gradient)) + 1e-300

            np.testing.assert_array_equal(b.values, -b_star.values)
            self.assertLess(np.max(np.abs(np.sum(b.values * log_gradient, axis=-1))) / scale, 1e-12)
            self.assertLess(np.max(np.abs(b.values @ axis.direction)) / np.max(np.abs(b.values)), 1e-12)


class TestSpinCurrentDensity(TestCase):
    def test_uniform_density_at_rest(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fields.spin import SpinAxis, spin_current_density

        grid = Grid([4, 4, 4], [0.1, 0.1, 0.1])
        rho = ScalarField.constant(grid, 2.0)

        current = spin_current_density(rho, SpinAxis([0.0, 0.0, 1.0]), VectorField.zeros(grid), 1.0, 1.0)

        self.assertTrue(np.all(current.values == 0.0))

    def test_uniform_density_advection(self):
        from qsframework.fields.grid import Grid
        from qsframework.fields.field import ScalarField, VectorField
        from qsframework.fields.spin import SpinAxis, spin_current_density

        grid = Grid([4, 4, 4], [0.1, 0.1, 0.1])
        rho = ScalarField.constant(grid, 2.0)
        v = VectorField.uniform(grid, [1.0, -2.0, 0.5])

        current = spin_current_density(rho, SpinAxis([1.0, 0.0, 0.0]), v, 1.0, 1.0, sign=-1)

        np.testing.assert_allclose(current.values, 2.0 * v.values)

    def test_exponential_density(self):
        from qsframework.fields.field import VectorField
        from qsframework.fields.spin import SpinAxis, spin_current_density

        rho = exponential_density(axis=0)

        current = spin_current_density(rho, SpinAxis([0.0, 0.0, 1.0]), VectorField.zeros(rho.grid), 1.0, 1.0)

        np.testing.assert_allclose(current.values[20, 2, 2], [0.0, rho.values[20, 2, 2], 0.0], rtol=1e-3, atol=1e-12)

    def test_invalid_sign(self):
        from qsframework.fields.field import VectorField
        from qsframework.fields.spin import SpinAxis, spin_current_density
        from qsframework.core.exceptions import OutOfRangeException

        rho = exponential_density(axis=0)

        self.assertRaises(OutOfRangeException, spin_current_density, rho, SpinAxis([0.0, 0.0, 1.0]),
                          VectorField.zeros(rho.grid), 1.0, 1.0, 0)


class TestCliffordIdentity(TestCase):
    def test_perpendicular_pair(self):
        from qsframework.fields.spin import clifford_identity_residual

        self.assertEqual(clifford_identity_residual([1.0, 0.0, 0.0], [0.0, 0.0, 0.5]), 0.0)

    def test_parallel_pair(self):
        from qsframework.fields.spin import clifford_identity_residual

        g = np.array([1.0, 2.0, -1.0])

        self.assertAlmostEqual(clifford_identity_residual(g, g), np.dot(g, g) ** 2, places=12)

    def test_random_perpendicular_pairs(self):
        from qsframework.fields.spin import clifford_identity_residual

        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(1000):
            g = rng.normal(size=3)
            s = rng.normal(size=3)
            s = s - np.dot(s, g) / np.dot(g, g) * g
            worst = max(worst, clifford_identity_residual(g, s) / (np.dot(g, g) * np.dot(s, s)))

        self.assertLess(worst, 1e-12)
