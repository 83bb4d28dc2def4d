import unittest

import numpy as np
from scipy.optimize import linprog

from kakeya.errors import DegenerateShape, DimensionMismatch
from kakeya.geom_core import Ball, HPolytope, Rotation, contains, rotate, scale, translate
from kakeya.inball_lp import (
    LpProblem,
    LpStatus,
    chebyshev_center,
    erosion,
    inball_depth,
    max_scale_at,
    min_width,
    solve_lp,
)
from kakeya.shapes import (
    equilateral_triangle,
    rectangle,
    regular_polygon,
    regular_tetrahedron,
    reuleaux_triangle,
    segment,
    square,
    unit_cube,
    unit_square,
)


class TestSolveLp(unittest.TestCase):
    def test_against_linprog(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            n = int(rng.integers(2, 5))
            normals = np.vstack([rng.normal(size=(8, n)), np.eye(n), -np.eye(n)])
            offsets = np.concatenate([rng.uniform(0.5, 2.0, 8), np.full(2 * n, 10.0)])
            objective = rng.normal(size=n)
            ours = solve_lp(LpProblem(objective, normals, offsets))
            reference = linprog(-objective, A_ub=normals, b_ub=offsets, bounds=(None, None), method="highs")
            self.assertIs(ours.status, LpStatus.OPTIMAL)
            self.assertAlmostEqual(ours.value, -reference.fun, places=7)
            self.assertTrue(np.all(normals @ ours.point <= offsets + 1e-9))

    def test_phase_one(self):
        # x >= 1, y >= 2, x + y <= 4: maximize x
        solution = solve_lp(LpProblem([1, 0], [[-1, 0], [0, -1], [1, 1]], [-1, -2, 4]))
        self.assertIs(solution.status, LpStatus.OPTIMAL)
        np.testing.assert_allclose(solution.point, [2, 2], atol=1e-12)

    def test_infeasible(self):
        solution = solve_lp(LpProblem([1.0], [[1.0], [-1.0]], [-1.0, -1.0]))
        self.assertIs(solution.status, LpStatus.INFEASIBLE)

    def test_unbounded(self):
        solution = solve_lp(LpProblem([1.0, 0.0], [[-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]], [0.0, 1.0, 1.0]))
        self.assertIs(solution.status, LpStatus.UNBOUNDED)

    def test_degenerate_vertex_does_not_cycle(self):
        # many constraints through the optimal vertex (1, 1)
        angles = np.linspace(0.05, np.pi / 2 - 0.05, 12)
        normals = np.vstack([np.column_stack([np.cos(angles), np.sin(angles)]), [[-1, 0], [0, -1]]])
        offsets = np.concatenate([normals[:12] @ [1.0, 1.0], [0.0, 0.0]])
        solution = solve_lp(LpProblem([1, 1], normals, offsets))
        self.assertAlmostEqual(solution.value, 2.0, places=9)

    def test_deterministic(self):
        problem = LpProblem([1, 2], [[1, 1], [-1, 0], [0, -1], [1, 3]], [4, 0, 0, 6])
        first, second = solve_lp(problem), solve_lp(problem)
        self.assertEqual(first.point.tobytes(), second.point.tobytes())
        self.assertEqual(first.pivots, second.pivots)

    def test_shape_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            LpProblem([1, 0], [[1, 0, 0]], [1])


class TestChebyshevCenter(unittest.TestCase):
    def test_unit_square(self):
        inball = chebyshev_center(unit_square())
        np.testing.assert_allclose(inball.center, [0.5, 0.5], atol=1e-12)
        self.assertAlmostEqual(inball.radius, 0.5, places=12)

    def test_equilateral_triangle(self):
        inball = chebyshev_center(equilateral_triangle())
        self.assertAlmostEqual(inball.radius, 1 / (2 * np.sqrt(3)), places=12)
        np.testing.assert_allclose(inball.center, [0.5, np.sqrt(3) / 6], atol=1e-12)

    def test_rectangle_radius_only(self):
        self.assertAlmostEqual(chebyshev_center(rectangle(2, 1)).radius, 0.5, places=12)

    def test_unit_cube(self):
        inball = chebyshev_center(unit_cube())
        self.assertAlmostEqual(inball.radius, 0.5, places=12)

    def test_regular_polygon_inradius(self):
        polygon = regular_polygon(7, 2.0)
        self.assertAlmostEqual(chebyshev_center(polygon).radius, 2.0 * np.cos(np.pi / 7), places=10)

    def test_scaling(self):
        body = regular_polygon(5, 1.0)
        self.assertAlmostEqual(chebyshev_center(scale(body, 3.0)).radius, 3 * chebyshev_center(body).radius, places=10)

    def test_ball_is_its_own_inball(self):
        ball = Ball([1, 2], 0.75)
        self.assertIs(chebyshev_center(ball), ball)

    def test_empty_interior(self):
        slab = HPolytope([[1, 0], [-1, 0], [0, 1], [0, -1]], [0, 0, 1, 1])
        with self.assertRaises(DegenerateShape):
            chebyshev_center(slab)


class TestErosion(unittest.TestCase):
    def test_square_in_square(self):
        translations = erosion(unit_square(), square(0.5))
        center, depth = inball_depth(translations)
        np.testing.assert_allclose(center, [0.25, 0.25], atol=1e-12)
        self.assertAlmostEqual(depth, 0.25, places=12)

    def test_empty_erosion_has_negative_depth(self):
        _, depth = inball_depth(erosion(unit_square(), square(1.5)))
        self.assertAlmostEqual(depth, -0.25, places=12)

    def test_erosion_by_ball(self):
        translations = erosion(unit_square(), Ball([0, 0], 0.25))
        normals, offsets = translations.normalized()
        np.testing.assert_allclose(np.sort(offsets), [-0.25, -0.25, 0.75, 0.75], atol=1e-12)


class TestMinWidth(unittest.TestCase):
    def test_unit_square(self):
        self.assertAlmostEqual(min_width(unit_square()).value, 1.0, places=12)

    def test_equilateral_triangle(self):
        width = min_width(equilateral_triangle())
        self.assertAlmostEqual(width.value, np.sqrt(3) / 2, places=12)
        self.assertAlmostEqual(width.value / (2 * chebyshev_center(equilateral_triangle()).radius), 1.5, places=9)

    def test_reuleaux_has_constant_width(self):
        self.assertAlmostEqual(min_width(reuleaux_triangle(1.0)).value, 1.0, delta=1e-4)

    def test_unit_cube(self):
        self.assertAlmostEqual(min_width(unit_cube()).value, 1.0, places=12)

    def test_tetrahedron_edge_pair(self):
        # attained between opposite edges, not at a facet normal
        self.assertAlmostEqual(min_width(regular_tetrahedron(1.0)).value, 1 / np.sqrt(2), places=10)

    def test_approximate_is_an_upper_bound(self):
        exact = min_width(unit_cube()).value
        approximate = min_width(unit_cube(), approximate=True).value
        self.assertGreaterEqual(approximate, exact - 1e-12)
        self.assertAlmostEqual(approximate, exact, delta=1e-3)

    def test_ball(self):
        self.assertEqual(min_width(Ball([0, 0, 0], 2.0)).value, 4.0)

    def test_segment(self):
        with self.assertRaises(DegenerateShape):
            min_width(segment(1.0))


class TestMaxScaleAt(unittest.TestCase):
    def test_square_in_square(self):
        alpha, translation = max_scale_at(unit_square(), unit_square(), Rotation.planar(0.0))
        self.assertAlmostEqual(alpha, 1.0, places=12)

    def test_diagonal_square(self):
        alpha, _ = max_scale_at(unit_square(), unit_square(), Rotation.planar(np.pi / 4))
        self.assertAlmostEqual(alpha, 1 / np.sqrt(2), places=12)

    def test_placement_is_valid(self):
        shape = translate(equilateral_triangle(), [3.0, -2.0])
        alpha, translation = max_scale_at(shape, unit_square(), Rotation.planar(0.4))

        placed = translate(rotate(scale(shape, alpha), Rotation.planar(0.4)), translation)
        self.assertTrue(contains(unit_square(), placed).inside)


if __name__ == "__main__":
    unittest.main()
