import unittest

from kakeya.errors import DimensionMismatch
from kakeya.geom_core import Ball, to_hpolytope
from kakeya.shapes import segment, unit_cube, unit_square
from kakeya.svg import render_svg


class TestRenderSvg(unittest.TestCase):
    def test_document_header(self):
        text = render_svg([("Q", unit_square())], size=200)
        self.assertTrue(text.startswith("<?xml"))
        self.assertIn("<!DOCTYPE svg", text)
        self.assertIn('viewBox="0 0 200 200"', text)

    def test_shapes_and_labels(self):
        text = render_svg([("Q", to_hpolytope(unit_square())), ("inball", Ball([0.5, 0.5], 0.5)), ("P", segment(0.5))])
        self.assertIn("<polygon", text)
        self.assertIn("<circle", text)
        self.assertIn("<polyline", text)
        self.assertIn("<title>inball</title>", text)

    def test_y_axis_points_up(self):
        # (0, 0) is drawn below (1, 1)
        text = render_svg([("Q", unit_square())], size=100)
        points = text.split('points="')[1].split('"')[0].split()
        ys = [float(p.split(",")[1]) for p in points]
        self.assertGreater(ys[0], ys[2])

    def test_spatial_shapes_are_rejected(self):
        with self.assertRaises(DimensionMismatch):
            render_svg([("Q", unit_cube())])


if __name__ == "__main__":
    unittest.main()
