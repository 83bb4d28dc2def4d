import json
import tempfile
import unittest
from pathlib import Path

import numpy as np

from kakeya.errors import ShapeParseError
from kakeya.geom_core import Ball, ConvexPolygon, HPolytope, VPolytope3
from kakeya.mu_algebra import MuVector
from kakeya.parser import dump_shape, load_body, parse_shape, shape_to_dict
from kakeya.shapes import regular_polygon, unit_cube, unit_square


class TestParseShape(unittest.TestCase):
    def test_polygon(self):
        shape = parse_shape('{"type": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}')
        self.assertIsInstance(shape, ConvexPolygon)
        self.assertTrue(shape.equals(unit_square()))

    def test_ball(self):
        shape = parse_shape('{"type": "ball", "center": [0.5, 0.5], "radius": 0.5}')
        self.assertIsInstance(shape, Ball)
        self.assertEqual(shape.radius, 0.5)

    def test_hpolytope(self):
        shape = parse_shape(
            '{"type": "hpolytope", "normals": [[1, 0], [0, 1], [-1, 0], [0, -1]], "offsets": [1, 1, 0, 0]}'
        )
        self.assertIsInstance(shape, HPolytope)

    def test_mu_polygon(self):
        shape = parse_shape('{"type": "mu_polygon", "mu": 4, "lengths": [1, 2, 1, 2]}')
        self.assertIsInstance(shape, MuVector)
        np.testing.assert_array_equal(shape.lengths, [1, 2, 1, 2])

    def test_byte_offset_of_syntax_error(self):
        text = '{"type": "polygon", "vertices": }'
        with self.assertRaises(ShapeParseError) as context:
            parse_shape(text)
        self.assertEqual(context.exception.offset, text.index("}"))

    def test_offset_counts_bytes(self):
        text = '{"name": "é", "type": }'
        with self.assertRaises(ShapeParseError) as context:
            parse_shape(text)
        self.assertEqual(context.exception.offset, len(text.encode("utf-8")) - 1)

    def test_unknown_type(self):
        with self.assertRaises(ShapeParseError):
            parse_shape('{"type": "torus"}')

    def test_missing_field(self):
        with self.assertRaises(ShapeParseError):
            parse_shape('{"type": "ball", "center": [0, 0]}')

    def test_invalid_data_is_wrapped(self):
        with self.assertRaises(ShapeParseError):
            parse_shape('{"type": "polygon", "vertices": [[0, 0], [2, 0], [1, 0.5], [2, 2], [0, 2]]}')
        with self.assertRaises(ShapeParseError):
            parse_shape('{"type": "ball", "center": [0, 0], "radius": -1}')


class TestRoundTrip(unittest.TestCase):
    def test_shapes_survive_a_round_trip(self):
        for shape in (regular_polygon(7, 1.3, phase=0.1), Ball([0.1, 0.2, 0.3], 0.7), unit_cube()):
            again = parse_shape(dump_shape(shape))
            self.assertEqual(type(again), type(shape))
            self.assertEqual(shape_to_dict(again), shape_to_dict(shape))

    def test_coordinates_are_bit_exact(self):
        polygon = regular_polygon(11, np.pi)
        again = parse_shape(dump_shape(polygon))
        self.assertEqual(again.vertices.tobytes(), polygon.vertices.tobytes())

    def test_load_body_turns_mu_vectors_into_polygons(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "rect.json"
            path.write_text(json.dumps({"type": "mu_polygon", "mu": 4, "lengths": [1, 2, 1, 2]}))
            body = load_body(path)
        self.assertIsInstance(body, ConvexPolygon)
        self.assertEqual(len(body), 4)

    def test_vpolytope3(self):
        again = parse_shape(dump_shape(unit_cube()))
        self.assertIsInstance(again, VPolytope3)
        self.assertEqual(len(again.vertices), 8)

    def test_invalid_utf8_is_a_parse_error(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "latin1.json"
            path.write_bytes(b'{"type": "polygon", "name": "caf\xe9"}')
            with self.assertRaises(ShapeParseError) as caught:
                load_body(path)
        self.assertEqual(caught.exception.offset, 32)


if __name__ == "__main__":
    unittest.main()
