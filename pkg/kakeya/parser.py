import json
from pathlib import Path

import numpy as np

from kakeya.errors import KakeyaError, ShapeParseError
from kakeya.geom_core import Ball, ConvexPolygon, HPolytope, Shape, VPolytope3
from kakeya.mu_algebra import MuVector, polygon_from_phi

SHAPE_TYPES = ("polygon", "hpolytope", "vpolytope3", "ball", "mu_polygon")


def _floats(array) -> list:
    return np.asarray(array, dtype=np.float64).tolist()


def shape_to_dict(shape: Shape | MuVector) -> dict:
    """
    Encodes a shape in the JSON shape format.

    Coordinates are written with Python's shortest round-trip float repr, so decoding gives
    back the same bits.
    """
    if isinstance(shape, ConvexPolygon):
        return {"type": "polygon", "vertices": _floats(shape.vertices)}
    if isinstance(shape, HPolytope):
        return {"type": "hpolytope", "normals": _floats(shape.normals), "offsets": _floats(shape.offsets)}
    if isinstance(shape, VPolytope3):
        return {"type": "vpolytope3", "vertices": _floats(shape.vertices)}
    if isinstance(shape, Ball):
        return {"type": "ball", "center": _floats(shape.center), "radius": float(shape.radius)}
    if isinstance(shape, MuVector):
        return {"type": "mu_polygon", "mu": shape.mu, "lengths": _floats(shape.lengths)}
    raise ShapeParseError(f"Cannot encode {type(shape).__name__} as a JSON shape.")


def dump_shape(shape: Shape | MuVector) -> str:
    return json.dumps(shape_to_dict(shape))


def _field(document: dict, key: str):
    if key not in document:
        raise ShapeParseError(f"Shape of type '{document.get('type')}' is missing the '{key}' field.")
    return document[key]


def shape_from_dict(document: dict) -> Shape | MuVector:
    """
    Decodes one JSON shape object.

    Raises:
        ShapeParseError: If the object has an unknown type, a missing field, or data that
            does not describe a valid shape.
    """
    if not isinstance(document, dict):
        raise ShapeParseError(f"A shape must be a JSON object, got {type(document).__name__}.")
    kind = document.get("type")
    try:
        if kind == "polygon":
            return ConvexPolygon(_field(document, "vertices"))
        if kind == "hpolytope":
            return HPolytope(_field(document, "normals"), _field(document, "offsets"))
        if kind == "vpolytope3":
            return VPolytope3(_field(document, "vertices"))
        if kind == "ball":
            return Ball(_field(document, "center"), _field(document, "radius"))
        if kind == "mu_polygon":
            return MuVector(_field(document, "mu"), _field(document, "lengths"))
    except ShapeParseError:
        raise
    except (KakeyaError, TypeError, ValueError) as exc:
        raise ShapeParseError(f"Invalid '{kind}' shape: {exc}") from exc
    raise ShapeParseError(f"Unknown shape type '{kind}', expected one of {', '.join(SHAPE_TYPES)}.")


def parse_shape(text: str) -> Shape | MuVector:
    """
    Parses a JSON shape document.

    Raises:
        ShapeParseError: On malformed JSON, with ``offset`` set to the byte offset of the error.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ShapeParseError(
            f"Malformed JSON at byte {offset} (line {exc.lineno}, column {exc.colno}): {exc.msg}",
            offset=offset,
        ) from exc
    return shape_from_dict(document)


def load_shape(path: str | Path) -> Shape | MuVector:
    try:
        text = Path(path).read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ShapeParseError(f"{path} is not valid UTF-8: {exc.reason}", offset=exc.start) from None
    return parse_shape(text)


def load_body(path: str | Path) -> Shape:
    """Loads a shape file, turning a mu-vector into its polygon."""
    shape = load_shape(path)
    if isinstance(shape, MuVector):
        return polygon_from_phi(shape)
    return shape
