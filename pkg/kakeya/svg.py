import numpy as np

from kakeya.config import SVG_SIZE
from kakeya.errors import DimensionMismatch
from kakeya.geom_core import Ball, ConvexPolygon, HPolytope, Shape, hpolytope_vertices

STYLES = {
    "Q": "fill:none;stroke:black;stroke-width:2",
    "P": "fill:#4a90d9;fill-opacity:0.35;stroke:#1f5fa8;stroke-width:1.5",
    "average": "fill:#e0a030;fill-opacity:0.3;stroke:#b07010;stroke-width:1.5",
    "inball": "fill:none;stroke:#c0392b;stroke-width:1.5;stroke-dasharray:6,4",
}
DEFAULT_STYLE = "fill:none;stroke:gray;stroke-width:1"
MARGIN = 0.05


def _extent(shape: Shape) -> np.ndarray:
    if isinstance(shape, Ball):
        return np.array([shape.center - shape.radius, shape.center + shape.radius])
    return np.array([shape.vertices.min(axis=0), shape.vertices.max(axis=0)])


def render_svg(figure: list[tuple[str, Shape]], size: int = SVG_SIZE) -> str:
    """
    Draws planar shapes into an SVG 1.1 document with a ``size`` x ``size`` viewBox.

    The drawing is scaled to fit with a small margin and the y axis points up. Labels
    select the style: "Q" for the container, "P" for the placed shape, "inball" for the
    inscribed disk; other labels are drawn in gray.

    Raises:
        DimensionMismatch: If a shape is not planar.
    """
    shapes = []
    for label, shape in figure:
        if isinstance(shape, HPolytope):
            shape = hpolytope_vertices(shape)
        if shape.dim != 2:
            raise DimensionMismatch(f"Only planar shapes can be drawn, '{label}' is {shape.dim}-D.")
        shapes.append((label, shape))

    extents = np.vstack([_extent(shape) for _, shape in shapes]) if shapes else np.array([[0.0, 0.0], [1.0, 1.0]])
    low, high = extents.min(axis=0), extents.max(axis=0)
    span = max(float(np.max(high - low)), 1e-12)
    factor = size * (1.0 - 2.0 * MARGIN) / span
    origin = low - 0.5 * (size / factor - (high - low))

    def to_view(points: np.ndarray) -> np.ndarray:
        view = (np.atleast_2d(points) - origin) * factor
        view[:, 1] = size - view[:, 1]
        return view

    body = []
    for label, shape in shapes:
        style = STYLES.get(label, DEFAULT_STYLE)
        if isinstance(shape, Ball):
            cx, cy = to_view(shape.center)[0]
            body.append(
                f'  <circle cx="{cx:.3f}" cy="{cy:.3f}" r="{shape.radius * factor:.3f}" style="{style}">'
                f"<title>{label}</title></circle>"
            )
        elif isinstance(shape, ConvexPolygon):
            points = " ".join(f"{x:.3f},{y:.3f}" for x, y in to_view(shape.vertices))
            tag = "polyline" if shape.is_degenerate else "polygon"
            body.append(f'  <{tag} points="{points}" style="{style}"><title>{label}</title></{tag}>')

    header = (
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">\n'
        f'<svg width="{size}" height="{size}" viewBox="0 0 {size} {size}" '
        'xmlns="http://www.w3.org/2000/svg" version="1.1">\n'
    )
    return header + "\n".join(body) + "\n</svg>\n"
