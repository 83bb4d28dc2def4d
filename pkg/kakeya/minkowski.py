from dataclasses import dataclass

import numpy as np
from loguru import logger

from kakeya.config import DEFAULT_TOLERANCES, Tolerances
from kakeya.errors import DimensionMismatch, InvalidParameter, InvalidShape
from kakeya.geom_core import (
    Ball,
    ConvexPolygon,
    HPolytope,
    Rotation,
    Shape,
    VPolytope3,
    area2,
    edge_table,
    hpolytope_vertices,
    hull3,
    perimeter2,
    rotate,
    scale,
    surface3,
    volume3,
)

BALL_VOLUME_3 = 4.0 * np.pi / 3.0


def _edge_walk(polygon: ConvexPolygon) -> tuple[np.ndarray, np.ndarray]:
    """Returns the lowest (then leftmost) vertex and the nonzero CCW edges starting there."""
    vertices = polygon.vertices
    start = int(np.lexsort((vertices[:, 0], vertices[:, 1]))[0])
    rolled = np.roll(vertices, -start, axis=0)
    edges = np.roll(rolled, -1, axis=0) - rolled
    return rolled[0], edges[np.any(edges != 0, axis=1)]


def minkowski_sum2(first: ConvexPolygon, second: ConvexPolygon, tol: Tolerances = DEFAULT_TOLERANCES) -> ConvexPolygon:
    """
    Computes the Minkowski sum of two convex polygons by merging their edges.

    Both edge sequences start at the lowest-then-leftmost vertex, so their polar angles
    increase through [0, 2*pi); the sum starts at the sum of those two vertices and follows
    the merged sequence. Edges whose angles differ by less than ``angle_tol`` become one edge.
    Points and segments are valid operands. Runs in O(n + m) after the angle sort.
    """
    # 1. Edge Walks
    # --------------------------------------
    # Each operand as a start vertex plus its counter-clockwise edge vectors.
    start_a, edges_a = _edge_walk(first)
    start_b, edges_b = _edge_walk(second)
    start = start_a + start_b
    edges = np.concatenate([edges_a, edges_b])
    if len(edges) == 0:
        return ConvexPolygon(start[None, :])

    # 2. Merge
    # --------------------------------------
    # One stable sort on polar angle interleaves the two edge sequences.
    angles = np.mod(np.arctan2(edges[:, 1], edges[:, 0]), 2.0 * np.pi)
    order = np.argsort(angles, kind="stable")
    edges, angles = edges[order], angles[order]

    # 3. Collapse and Rebuild
    # --------------------------------------
    # Parallel edges of the two operands collapse into a single edge; the cumulative
    # sum of the merged edges traces the sum polygon from the combined start vertex.
    group = np.concatenate([[0], np.cumsum(np.diff(angles) >= tol.angle_tol)])
    merged = np.zeros((group[-1] + 1, 2))
    np.add.at(merged, group, edges)
    vertices = start + np.concatenate([np.zeros((1, 2)), np.cumsum(merged, axis=0)[:-1]])
    return ConvexPolygon(vertices)


def minkowski_sum2_hull(first: ConvexPolygon, second: ConvexPolygon) -> ConvexPolygon:
    """Brute-force reference: the hull of all pairwise vertex sums."""
    sums = first.vertices[:, None, :] + second.vertices[None, :, :]
    return ConvexPolygon.hull(sums.reshape(-1, 2))


def minkowski_sum3(first: VPolytope3, second: VPolytope3 | np.ndarray) -> VPolytope3:
    """
    Computes a 3D Minkowski sum as the hull of all pairwise vertex sums (O(nm) candidates).

    ``second`` may also be a raw point array, e.g. a single translation vector.

    Raises:
        DegenerateShape: If the sum is flat.
    """
    other = second.vertices if isinstance(second, VPolytope3) else np.asarray(second, dtype=np.float64).reshape(-1, 3)
    sums = first.vertices[:, None, :] + other[None, :, :]
    return hull3(sums.reshape(-1, 3))


def minkowski_sum(first: Shape, second: Shape, tol: Tolerances = DEFAULT_TOLERANCES) -> Shape:
    if first.dim != second.dim:
        raise DimensionMismatch(f"Cannot add a {first.dim}-D shape to a {second.dim}-D shape.")
    if isinstance(first, Ball) and isinstance(second, Ball):
        return Ball(first.center + second.center, first.radius + second.radius)
    if isinstance(first, ConvexPolygon) and isinstance(second, ConvexPolygon):
        return minkowski_sum2(first, second, tol)
    if isinstance(first, VPolytope3) and isinstance(second, VPolytope3):
        return minkowski_sum3(first, second)
    raise InvalidShape(f"Minkowski sum of {type(first).__name__} and {type(second).__name__} is not supported.")


def interpolate(first: Shape, second: Shape, lam: float, tol: Tolerances = DEFAULT_TOLERANCES) -> Shape:
    """
    Computes the Minkowski interpolation (1 - lam) * first + lam * second.

    Args:
        first (Shape): The body at lam = 0 (returned unchanged for lam = 0).
        second (Shape): The body at lam = 1 (returned unchanged for lam = 1).
        lam (float): Interpolation parameter in [0, 1].

    Raises:
        InvalidParameter: If lam lies outside [0, 1].
        DimensionMismatch: If the bodies live in different dimensions.
    """
    if not 0.0 <= lam <= 1.0:
        raise InvalidParameter(f"Interpolation parameter must lie in [0, 1], got {lam}.")
    if first.dim != second.dim:
        raise DimensionMismatch(f"Cannot interpolate a {first.dim}-D shape with a {second.dim}-D one.")
    if lam == 0.0:
        return first
    if lam == 1.0:
        return second
    return minkowski_sum(scale(first, 1.0 - lam), scale(second, lam), tol)


def halfway(shape: Shape, rho: Rotation, tol: Tolerances = DEFAULT_TOLERANCES) -> Shape:
    """
    Averages a shape with its rotated copy: (shape + rho(shape)) / 2.

    If the shape can be placed in Q in every orientation, so can the result, and unless
    the two copies are homothets its area (volume, or surface in d >= 3) strictly grows.
    """
    return interpolate(shape, rotate(shape, rho), 0.5, tol)


def measure(shape: Shape, w: int) -> float:
    """
    Evaluates psi_w: w = 0 is area (volume in 3D), w = 1 is perimeter (surface area in 3D).
    """
    if w not in (0, 1):
        raise InvalidParameter(f"psi_w is defined for w in {{0, 1}}, got {w}.")
    if isinstance(shape, HPolytope):
        shape = hpolytope_vertices(shape)
    if isinstance(shape, ConvexPolygon):
        return area2(shape) if w == 0 else perimeter2(shape)
    if isinstance(shape, VPolytope3):
        return volume3(shape) if w == 0 else surface3(shape)
    if shape.dim == 2:
        return np.pi * shape.radius**2 if w == 0 else 2.0 * np.pi * shape.radius
    if shape.dim == 3:
        return BALL_VOLUME_3 * shape.radius**3 if w == 0 else 4.0 * np.pi * shape.radius**2
    raise InvalidParameter(f"Measures are supported in d = 2, 3, not {shape.dim}.")


@dataclass(frozen=True)
class SteinerCoeffs3:
    """
    Coefficients of the Steiner polynomial vol(K + rB) = v + s*r + m*r^2 + b*r^3.

    In quermassintegral terms v = W_0, s = 3 W_1, m = 3 W_2 and b = W_3 = 4*pi/3.
    """

    v: float
    s: float
    m: float
    b: float = BALL_VOLUME_3

    def volume_at(self, r: float) -> float:
        if r < 0:
            raise InvalidParameter(f"Steiner radius must be nonnegative, got {r}.")
        return self.v + self.s * r + self.m * r**2 + self.b * r**3

    def quermass(self, m: int) -> float:
        if m not in (0, 1, 2, 3):
            raise InvalidParameter(f"Quermassintegral index must be in 0..3, got {m}.")
        return (self.v, self.s / 3.0, self.m / 3.0, self.b)[m]


def steiner_coeffs3(body: VPolytope3 | Ball) -> SteinerCoeffs3:
    """
    Computes the Steiner coefficients of a 3D polytope.

    The quadratic coefficient is half the sum over edges of length times exterior dihedral
    angle; diagonals of flat facets have exterior angle 0 and drop out.

    Raises:
        DegenerateShape: If the body is flat.
    """
    if isinstance(body, Ball):
        if body.dim != 3:
            raise DimensionMismatch("Steiner coefficients are computed for 3D bodies.")
        r = body.radius
        return SteinerCoeffs3(BALL_VOLUME_3 * r**3, 4.0 * np.pi * r**2, 4.0 * np.pi * r)
    table = edge_table(body)
    mean_width_term = 0.5 * float(np.sum(table.lengths * table.exterior_angles))
    logger.debug(f"Steiner: {len(table.edges)} edges, quadratic term {mean_width_term:.12g}")
    return SteinerCoeffs3(volume3(body), surface3(body), mean_width_term)


def quermass(shape: Shape, m: int) -> float:
    """
    Evaluates the quermassintegral W_m = V(K[d - m], B[m]) for d in {2, 3}.

    In the plane W_0 is the area, W_1 half the perimeter and W_2 = pi; in space the values
    come from the Steiner coefficients.

    Raises:
        InvalidParameter: If d is not 2 or 3, or m is outside 0..d.
    """
    if isinstance(shape, HPolytope):
        shape = hpolytope_vertices(shape)
    dim = shape.dim
    if dim not in (2, 3) or not 0 <= m <= dim:
        raise InvalidParameter(f"Quermassintegral W_{m} is not supported in dimension {dim}.")
    if dim == 3:
        return steiner_coeffs3(shape).quermass(m)
    if m == 2:
        return float(np.pi)
    return measure(shape, 0) if m == 0 else measure(shape, 1) / 2.0
