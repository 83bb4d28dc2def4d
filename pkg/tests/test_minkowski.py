import unittest

import numpy as np

from kakeya.errors import DimensionMismatch, InvalidParameter
from kakeya.geom_core import Ball, ConvexPolygon, Rotation, area2, perimeter2, rotate, translate, volume3
from kakeya.minkowski import (
    BALL_VOLUME_3,
    halfway,
    interpolate,
    measure,
    minkowski_sum,
    minkowski_sum2,
    minkowski_sum2_hull,
    minkowski_sum3,
    quermass,
    steiner_coeffs3,
)
from kakeya.shapes import (
    corner_tetrahedron,
    equilateral_triangle,
    rectangle,
    segment,
    square,
    unit_cube,
    unit_square,
)
from kakeya.verify import random_convex_polygon


class TestMinkowskiSum2(unittest.TestCase):
    def test_unit_squares(self):
        total = minkowski_sum2(unit_square(), unit_square())
        self.assertTrue(total.equals(square(2.0)))

    def test_square_plus_triangle_is_a_hexagon(self):
        total = minkowski_sum2(unit_square(), equilateral_triangle())
        self.assertEqual(len(total), 6)
        self.assertAlmostEqual(perimeter2(total), 7.0, places=12)

    def test_segment_operand(self):
        total = minkowski_sum2(unit_square(), segment(1.0, angle=np.pi / 4, center=(0, 0)))
        self.assertEqual(len(total), 6)
        self.assertAlmostEqual(perimeter2(total), 6.0, places=12)

    def test_point_operand_translates(self):
        total = minkowski_sum2(unit_square(), ConvexPolygon([[2.0, 3.0]]))
        self.assertTrue(total.equals(translate(unit_square(), [2, 3])))

    def test_matches_hull_of_pairwise_sums(self):
        for seed in range(20):
            first = rotate(random_convex_polygon(9, seed), Rotation.planar(0.1 * seed))
            second = random_convex_polygon(13, 1000 + seed)
            self.assertTrue(minkowski_sum2(first, second).equals(minkowski_sum2_hull(first, second), atol=1e-9))

    def test_perimeter_is_additive(self):
        for seed in range(20):
            first, second = random_convex_polygon(8, seed), random_convex_polygon(15, 50 + seed)
            total = perimeter2(minkowski_sum2(first, second))
            self.assertAlmostEqual(total, perimeter2(first) + perimeter2(second), delta=1e-12 * total)

    def test_dispatch(self):
        ball = minkowski_sum(Ball([0, 0], 1.0), Ball([1, 1], 0.5))
        np.testing.assert_allclose(ball.center, [1, 1])
        self.assertEqual(ball.radius, 1.5)
        with self.assertRaises(DimensionMismatch):
            minkowski_sum(unit_square(), unit_cube())


class TestMinkowskiSum3(unittest.TestCase):
    def test_cubes(self):
        self.assertAlmostEqual(volume3(minkowski_sum3(unit_cube(), unit_cube())), 8.0, places=12)

    def test_translation(self):
        moved = minkowski_sum3(unit_cube(), np.array([1.0, 2.0, 3.0]))
        np.testing.assert_allclose(moved.vertices.min(axis=0), [1, 2, 3])

    def test_tetrahedron_plus_reflection(self):
        # K + (-K) of a tetrahedron has volume 20 vol(K)
        body = corner_tetrahedron()
        reflected = minkowski_sum3(body, -body.vertices)
        self.assertAlmostEqual(volume3(reflected), 20 * volume3(body), places=10)


class TestInterpolate(unittest.TestCase):
    def test_endpoints_are_returned_unchanged(self):
        first, second = unit_square(), equilateral_triangle()
        self.assertIs(interpolate(first, second, 0.0), first)
        self.assertIs(interpolate(first, second, 1.0), second)

    def test_out_of_range(self):
        with self.assertRaises(InvalidParameter):
            interpolate(unit_square(), unit_square(), 1.5)

    def test_homothets_interpolate_linearly(self):
        first, second = unit_square(), translate(square(3.0), [1, 1])
        for lam in np.linspace(0, 1, 11):
            middle = interpolate(first, second, lam)
            self.assertAlmostEqual(np.sqrt(area2(middle)), 1 + 2 * lam, places=12)

    def test_area_root_is_concave(self):
        first, second = rectangle(4, 0.25), rectangle(0.25, 4)
        values = [np.sqrt(area2(interpolate(first, second, lam))) for lam in np.linspace(0, 1, 11)]
        for left, middle, right in zip(values, values[1:], values[2:]):
            self.assertGreaterEqual(middle, 0.5 * (left + right) - 1e-12)


class TestHalfway(unittest.TestCase):
    def test_square_becomes_octagon(self):
        octagon = halfway(unit_square(), Rotation.planar(np.pi / 4))
        self.assertEqual(len(octagon), 8)
        self.assertAlmostEqual(perimeter2(octagon), 4.0, places=12)
        self.assertGreater(area2(octagon), 1.0 + 1e-6)

    def test_quarter_turn_of_square_changes_nothing(self):
        self.assertAlmostEqual(area2(halfway(unit_square(), Rotation.planar(np.pi / 2))), 1.0, places=12)


class TestMeasure(unittest.TestCase):
    def test_planar(self):
        self.assertAlmostEqual(measure(unit_square(), 0), 1.0)
        self.assertAlmostEqual(measure(unit_square(), 1), 4.0)
        self.assertAlmostEqual(measure(Ball([0, 0], 0.5), 0), np.pi / 4)
        self.assertAlmostEqual(measure(Ball([0, 0], 0.5), 1), np.pi)

    def test_spatial(self):
        self.assertAlmostEqual(measure(unit_cube(), 1), 6.0)
        self.assertAlmostEqual(measure(Ball([0, 0, 0], 1.0), 0), BALL_VOLUME_3)

    def test_bad_index(self):
        with self.assertRaises(InvalidParameter):
            measure(unit_square(), 2)


class TestSteiner(unittest.TestCase):
    def test_unit_cube(self):
        coeffs = steiner_coeffs3(unit_cube())
        self.assertAlmostEqual(coeffs.v, 1.0, places=12)
        self.assertAlmostEqual(coeffs.s, 6.0, places=11)
        self.assertAlmostEqual(coeffs.m, 3 * np.pi, places=9)
        self.assertAlmostEqual(coeffs.b, 4 * np.pi / 3, places=12)
        self.assertAlmostEqual(coeffs.volume_at(1.0), 1 + 6 + 3 * np.pi + 4 * np.pi / 3, places=9)

    def test_ball_coefficients(self):
        # vol(B_r + sB) = 4/3 pi (r + s)^3
        coeffs = steiner_coeffs3(Ball([0, 0, 0], 2.0))
        self.assertAlmostEqual(coeffs.volume_at(0.5), BALL_VOLUME_3 * 2.5**3, places=9)

    def test_quermassintegrals(self):
        self.assertAlmostEqual(quermass(unit_cube(), 1), 2.0, places=11)
        self.assertAlmostEqual(quermass(unit_cube(), 2), np.pi, places=9)
        self.assertAlmostEqual(quermass(unit_square(), 1), 2.0, places=12)
        self.assertAlmostEqual(quermass(unit_square(), 2), np.pi, places=12)

    def test_negative_radius(self):
        with self.assertRaises(InvalidParameter):
            steiner_coeffs3(unit_cube()).volume_at(-0.1)


if __name__ == "__main__":
    unittest.main()
