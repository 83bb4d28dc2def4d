import numpy as np

from kakeya.config import ARC_POINTS, CIRCLE_POINTS
from kakeya.errors import InvalidParameter
from kakeya.geom_core import Ball, ConvexPolygon, VPolytope3, translate


def _positive(name: str, value: float) -> float:
    if not np.isfinite(value) or value <= 0:
        raise InvalidParameter(f"{name} must be a positive real, got {value}.")
    return float(value)


def unit_square() -> ConvexPolygon:
    return square(1.0)


def square(side: float) -> ConvexPolygon:
    """Axis-parallel square [0, side]^2."""
    return rectangle(side, side)


def rectangle(width: float, height: float) -> ConvexPolygon:
    width, height = _positive("width", width), _positive("height", height)
    return ConvexPolygon([[0.0, 0.0], [width, 0.0], [width, height], [0.0, height]])


def regular_polygon(
    n: int, circumradius: float = 1.0, phase: float | None = None, center=(0.0, 0.0)
) -> ConvexPolygon:
    """
    Regular n-gon with vertices at angles phase + 2*pi*k/n.

    The default phase pi/n puts the edge normals at angles 2*pi*k/n, i.e. the polygon is the
    K_n of the mu-vector convention (axis-parallel for n = 4).
    """
    if n < 3:
        raise InvalidParameter(f"A regular polygon needs n >= 3, got {n}.")
    circumradius = _positive("circumradius", circumradius)
    phase = np.pi / n if phase is None else phase
    angles = phase + 2.0 * np.pi * np.arange(n) / n
    points = circumradius * np.column_stack([np.cos(angles), np.sin(angles)])
    return ConvexPolygon(points + np.asarray(center, dtype=np.float64))


def disk(radius: float = 1.0, n: int = CIRCLE_POINTS, center=(0.0, 0.0)) -> ConvexPolygon:
    """Inscribed n-gon approximation of a disk, with a vertex at angle 0."""
    return regular_polygon(n, radius, phase=0.0, center=center)


def equilateral_triangle(side: float = 1.0) -> ConvexPolygon:
    side = _positive("side", side)
    return ConvexPolygon([[0.0, 0.0], [side, 0.0], [side / 2.0, side * np.sqrt(3.0) / 2.0]])


def reuleaux_triangle(width: float = 1.0, points_per_arc: int = ARC_POINTS, center=(0.0, 0.0)) -> ConvexPolygon:
    """
    Polygonal Reuleaux triangle of constant width ``width``, centered at ``center``.

    Each of the three arcs is centered at a corner of the equilateral triangle of side
    ``width`` and sampled at ``points_per_arc`` points including both ends, so the polygon
    is inscribed in the exact curve.
    """
    width = _positive("width", width)
    if points_per_arc < 2:
        raise InvalidParameter(f"An arc needs at least 2 points, got {points_per_arc}.")
    corners = np.array([[0.0, 0.0], [width, 0.0], [width / 2.0, width * np.sqrt(3.0) / 2.0]])
    sweep = np.linspace(0.0, np.pi / 3.0, points_per_arc)
    arcs = []
    # the arc opposite corner k starts at angle 2*pi*k/3 as seen from corner k
    for k, corner in enumerate(corners):
        angles = 2.0 * np.pi * k / 3.0 + sweep
        arcs.append(corner + width * np.column_stack([np.cos(angles), np.sin(angles)]))
    polygon = ConvexPolygon(np.concatenate(arcs))
    offset = np.asarray(center, dtype=np.float64) - corners.mean(axis=0)
    return translate(polygon, offset)


def segment(length: float = 1.0, angle: float = 0.0, center=(0.0, 0.0)) -> ConvexPolygon:
    """A segment as a degenerate two-vertex polygon."""
    length = _positive("length", length)
    half = 0.5 * length * np.array([np.cos(angle), np.sin(angle)])
    middle = np.asarray(center, dtype=np.float64)
    return ConvexPolygon([middle - half, middle + half])


def ball(center, radius: float) -> Ball:
    return Ball(center, radius)


def box(sizes) -> VPolytope3:
    """Axis-parallel box [0, a] x [0, b] x [0, c]."""
    sizes = np.array([_positive("box side", s) for s in sizes])
    corners = np.array([[i, j, k] for i in (0, 1) for j in (0, 1) for k in (0, 1)], dtype=np.float64)
    return VPolytope3(corners * sizes)


def cube(side: float = 1.0) -> VPolytope3:
    return box([side, side, side])


def unit_cube() -> VPolytope3:
    return cube(1.0)


def corner_tetrahedron() -> VPolytope3:
    """conv{0, e_1, e_2, e_3}."""
    return VPolytope3(np.vstack([np.zeros(3), np.eye(3)]))


def regular_tetrahedron(edge: float = 1.0) -> VPolytope3:
    edge = _positive("edge", edge)
    points = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=np.float64)
    return VPolytope3(points * edge / (2.0 * np.sqrt(2.0)))


def octahedron(radius: float = 1.0) -> VPolytope3:
    """conv{+-radius * e_i}."""
    radius = _positive("radius", radius)
    return VPolytope3(np.vstack([np.eye(3), -np.eye(3)]) * radius)


def sphere_points(n: int) -> np.ndarray:
    """Fibonacci lattice of ``n`` nearly uniform points on the unit sphere."""
    index = np.arange(n) + 0.5
    z = 1.0 - 2.0 * index / n
    ring = np.sqrt(1.0 - z**2)
    phi = np.pi * (1.0 + 5.0**0.5) * index
    return np.column_stack([ring * np.cos(phi), ring * np.sin(phi), z])


def ball_polytope3(radius: float = 1.0, n: int = 400, center=(0.0, 0.0, 0.0)) -> VPolytope3:
    """Polytope inscribed in a 3D ball, with ``n`` Fibonacci-lattice vertices."""
    radius = _positive("radius", radius)
    if n < 4:
        raise InvalidParameter(f"A ball approximation needs at least 4 points, got {n}.")
    return VPolytope3(radius * sphere_points(n) + np.asarray(center, dtype=np.float64))
