import unittest

import numpy as np

from kakeya.errors import InvalidParameter, NotAMuPolygon, NotClosed
from kakeya.geom_core import Rotation, contains, perimeter2, rotate, translate
from kakeya.minkowski import minkowski_sum2
from kakeya.mu_algebra import (
    MuVector,
    circumscribed_mu_polygon,
    inner_mu_polygon,
    mu_average_poly,
    mu_average_vec,
    mu_directions,
    mu_normals,
    mu_partial_averages,
    mu_rotate,
    mu_rotation,
    phi,
    polygon_from_phi,
    regular_disk_gap,
)
from kakeya.shapes import disk, equilateral_triangle, rectangle, regular_polygon, reuleaux_triangle, unit_square
from kakeya.verify import random_convex_polygon, random_mu_vector


class TestNormals(unittest.TestCase):
    def test_square_convention(self):
        np.testing.assert_allclose(mu_normals(4), [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=1e-15)
        np.testing.assert_allclose(mu_directions(4), [[0, 1], [-1, 0], [0, -1], [1, 0]], atol=1e-15)

    def test_odd_mu(self):
        with self.assertRaises(InvalidParameter):
            mu_normals(5)
        with self.assertRaises(InvalidParameter):
            MuVector(2, [1, 1])


class TestPhi(unittest.TestCase):
    def test_unit_square(self):
        np.testing.assert_allclose(phi(unit_square(), 4).lengths, [1, 1, 1, 1], atol=1e-15)

    def test_rectangle(self):
        np.testing.assert_allclose(phi(rectangle(2, 1), 4).lengths, [1, 2, 1, 2], atol=1e-15)

    def test_square_as_an_eight_polygon(self):
        np.testing.assert_allclose(phi(unit_square(), 8).lengths, [1, 0, 1, 0, 1, 0, 1, 0], atol=1e-15)

    def test_triangle_is_not_a_four_polygon(self):
        with self.assertRaises(NotAMuPolygon):
            phi(equilateral_triangle(), 4)

    def test_round_trip(self):
        rng = np.random.default_rng(5)
        for mu in (4, 8, 16):
            vector = random_mu_vector(mu, rng)
            self.assertTrue(phi(polygon_from_phi(vector), mu).allclose(vector, atol=1e-12))

    def test_open_vector(self):
        with self.assertRaises(NotClosed):
            polygon_from_phi(MuVector(4, [2, 1, 1, 1]))


class TestAlgebra(unittest.TestCase):
    def test_cyclic_shift(self):
        shifted = mu_rotate(MuVector(4, [2, 1, 2, 1]))
        np.testing.assert_array_equal(shifted.lengths, [1, 2, 1, 2])

    def test_shift_mu_times_is_identity(self):
        vector = MuVector(8, np.arange(8.0))
        shifted = vector
        for _ in range(8):
            shifted = mu_rotate(shifted)
        np.testing.assert_array_equal(shifted.lengths, vector.lengths)

    def test_rotation_is_a_shift(self):
        rng = np.random.default_rng(9)
        for mu in (4, 8, 16, 64):
            vector = random_mu_vector(mu, rng)
            rotated = rotate(polygon_from_phi(vector), mu_rotation(mu))
            self.assertTrue(phi(rotated, mu).allclose(mu_rotate(vector), atol=1e-12))

    def test_sum_is_a_homomorphism(self):
        rng = np.random.default_rng(10)
        for mu in (4, 8, 16, 64):
            first, second = random_mu_vector(mu, rng), random_mu_vector(mu, rng)
            total = minkowski_sum2(polygon_from_phi(first), translate(polygon_from_phi(second), [3, -1]))
            self.assertTrue(phi(total, mu).allclose(first + second, atol=1e-12))

    def test_scaling(self):
        vector = MuVector(4, [1, 2, 1, 2])
        np.testing.assert_allclose((2.5 * vector).lengths, [2.5, 5, 2.5, 5])
        with self.assertRaises(InvalidParameter):
            vector * -1.0

    def test_average_vector(self):
        average = mu_average_vec(MuVector(4, [2, 1, 2, 1]))
        np.testing.assert_array_equal(average.lengths, [1.5, 1.5, 1.5, 1.5])


class TestMuAverage(unittest.TestCase):
    def test_rectangle_averages_to_a_square(self):
        averaged = mu_average_poly(rectangle(2, 1), 4)
        np.testing.assert_allclose(phi(averaged, 4).lengths, [1.5, 1.5, 1.5, 1.5], atol=1e-12)

    def test_perimeter_is_kept(self):
        for seed in range(5):
            polygon = random_convex_polygon(7, seed)
            averaged = mu_average_poly(polygon, 8)
            self.assertAlmostEqual(perimeter2(averaged), perimeter2(polygon), delta=1e-9 * perimeter2(polygon))

    def test_partial_averages(self):
        partials = mu_partial_averages(unit_square(), 8)
        self.assertEqual(len(partials), 8)
        for partial in partials:
            self.assertAlmostEqual(perimeter2(partial), 4.0, places=12)

    def test_average_of_a_mu_polygon_is_regular(self):
        vector = MuVector(8, [2, 0, 1, 1, 2, 0, 1, 1])
        expected = polygon_from_phi(mu_average_vec(vector))
        self.assertTrue(mu_average_poly(polygon_from_phi(vector), 8).equals(expected, atol=1e-9, up_to_translation=True))

    def test_average_fits_where_all_rotations_fit(self):
        body = regular_polygon(8, 1.0)
        shape = translate(rectangle(0.9, 0.5), [-0.45, -0.25])
        for k in range(8):
            rho = Rotation.planar(2 * np.pi * k / 8)
            self.assertTrue(contains(body, rotate(shape, rho)).inside)
        averaged = mu_average_poly(shape, 8)
        self.assertTrue(contains(body, averaged).inside)


class TestInnerMuPolygon(unittest.TestCase):
    def test_circumscribed_square(self):
        outer = circumscribed_mu_polygon(regular_polygon(4, np.sqrt(2)), 4)
        np.testing.assert_allclose(phi(outer, 4).lengths, [2, 2, 2, 2], atol=1e-12)

    def test_inner_polygon_is_inside(self):
        body = reuleaux_triangle(1.0)
        for mu in (8, 32):
            inner = inner_mu_polygon(body, mu)
            self.assertTrue(contains(body, inner).inside)
            phi(inner, mu)

    def test_inner_polygon_has_nonnegative_margin(self):
        bodies = [disk(1.0)] + [random_convex_polygon(12, seed) for seed in range(5)]
        for body in bodies:
            for mu in (8, 16):
                self.assertGreaterEqual(contains(body, inner_mu_polygon(body, mu)).margin, 0.0)

    def test_disk_deficit_decays_quadratically(self):
        body = disk(1.0)
        mus = np.array([8, 16, 32, 64, 128])
        deficits = [perimeter2(body) - perimeter2(inner_mu_polygon(body, int(mu))) for mu in mus]
        self.assertTrue(all(d > 0 for d in deficits))
        slope = np.polyfit(np.log(mus), np.log(deficits), 1)[0]
        self.assertLessEqual(slope, -1.8)

    def test_perimeter_converges(self):
        body = reuleaux_triangle(1.0)
        gaps = [perimeter2(body) - perimeter2(inner_mu_polygon(body, mu)) for mu in (8, 64)]
        self.assertGreater(gaps[0], gaps[1])
        self.assertLess(gaps[1], 0.05)

    def test_regular_disk_gap(self):
        self.assertAlmostEqual(regular_disk_gap(4, 0.5), 4 - np.pi, places=12)
        self.assertLess(regular_disk_gap(64, 0.5), regular_disk_gap(8, 0.5))


if __name__ == "__main__":
    unittest.main()
