import unittest

import numpy as np

from kakeya.errors import InvalidParameter
from kakeya.geom_core import area2, perimeter2, surface3, volume3
from kakeya.shapes import (
    ball_polytope3,
    box,
    disk,
    octahedron,
    regular_polygon,
    regular_tetrahedron,
    reuleaux_triangle,
    segment,
    sphere_points,
)


class TestPlanarShapes(unittest.TestCase):
    def test_regular_polygon_normals_face_the_axes(self):
        octagon = regular_polygon(8)
        normals = np.column_stack([octagon.edges[:, 1], -octagon.edges[:, 0]])
        normals /= np.linalg.norm(normals, axis=1)[:, None]
        for angle in 2 * np.pi * np.arange(8) / 8:
            gaps = np.linalg.norm(normals - [np.cos(angle), np.sin(angle)], axis=1)
            self.assertLess(gaps.min(), 1e-12)

    def test_disk_approximation(self):
        self.assertAlmostEqual(area2(disk(1.0)), np.pi, delta=1e-4)

    def test_reuleaux_area_and_perimeter(self):
        reuleaux = reuleaux_triangle(1.0, points_per_arc=1024)
        self.assertAlmostEqual(perimeter2(reuleaux), np.pi, delta=1e-5)
        self.assertAlmostEqual(area2(reuleaux), (np.pi - np.sqrt(3)) / 2, delta=1e-5)

    def test_reuleaux_is_centered(self):
        np.testing.assert_allclose(reuleaux_triangle(2.0, center=(1, 1)).vertices.mean(axis=0), [1, 1], atol=1e-2)

    def test_segment(self):
        self.assertTrue(segment(2.0).is_degenerate)
        with self.assertRaises(InvalidParameter):
            segment(0.0)

    def test_bad_parameters(self):
        with self.assertRaises(InvalidParameter):
            regular_polygon(2)
        with self.assertRaises(InvalidParameter):
            reuleaux_triangle(1.0, points_per_arc=1)


class TestSpatialShapes(unittest.TestCase):
    def test_box(self):
        body = box([1, 2, 3])
        self.assertAlmostEqual(volume3(body), 6.0, places=12)
        self.assertAlmostEqual(surface3(body), 22.0, places=12)

    def test_regular_tetrahedron(self):
        self.assertAlmostEqual(volume3(regular_tetrahedron(1.0)), 1 / (6 * np.sqrt(2)), places=12)

    def test_octahedron(self):
        self.assertAlmostEqual(volume3(octahedron(1.0)), 4 / 3, places=12)

    def test_sphere_points_are_unit(self):
        np.testing.assert_allclose(np.linalg.norm(sphere_points(100), axis=1), 1.0)

    def test_ball_polytope_approaches_the_ball(self):
        volume = volume3(ball_polytope3(1.0, 2000))
        self.assertLess(volume, 4 * np.pi / 3)
        self.assertAlmostEqual(volume, 4 * np.pi / 3, delta=0.02)


if __name__ == "__main__":
    unittest.main()
