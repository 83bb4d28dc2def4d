from dataclasses import InitVar, dataclass, field
from typing import NamedTuple, Union

import numpy as np
import numpy.typing as npt
from loguru import logger
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError
from scipy.spatial.transform import Rotation as ScipyRotation

from kakeya.config import DEFAULT_TOLERANCES, Tolerances
from kakeya.errors import (
    DegenerateShape,
    DimensionMismatch,
    InvalidDirection,
    InvalidParameter,
    InvalidShape,
    Unbounded,
)

Vector = npt.NDArray[np.float64]


def as_vector(coords, dim: int | None = None) -> Vector:
    """
    Converts a coordinate sequence into a finite float vector.

    Args:
        coords: Sequence of real numbers.
        dim (int, optional): Required dimension. Defaults to None (any d >= 1).

    Returns:
        Vector: A read-only 1-D float64 array.

    Raises:
        InvalidShape: If the coordinates are not a finite 1-D sequence.
        DimensionMismatch: If ``dim`` is given and does not match.
    """
    vec = np.array(coords, dtype=np.float64).reshape(-1)
    if np.ndim(coords) == 0 or vec.size == 0:
        raise InvalidShape("A vector needs at least one coordinate.")
    if not np.all(np.isfinite(vec)):
        raise InvalidShape(f"Vector has non-finite coordinates: {vec}")
    if dim is not None and vec.size != dim:
        raise DimensionMismatch(f"Expected a {dim}-dimensional vector, got {vec.size}.")
    vec.setflags(write=False)
    return vec


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64)
    array.setflags(write=False)
    return array


def _cross2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _normalize_cycle(points: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Drops repeated and collinear vertices and orients the cycle counter-clockwise."""
    extent = float(np.ptp(points, axis=0).max()) if len(points) > 1 else 0.0
    if extent == 0.0:
        return points[:1]

    # Repeated vertices (cyclic neighbours closer than rel_tol * extent)
    step = np.linalg.norm(np.roll(points, -1, axis=0) - points, axis=1)
    points = points[step > tol.rel_tol * extent]
    if len(points) < 2:
        return points[:1] if len(points) else points

    signed = 0.5 * np.sum(_cross2(points, np.roll(points, -1, axis=0)))
    if signed < 0:
        points = points[::-1]

    lo, hi = points.min(axis=0), points.max(axis=0)
    bbox_area = float(np.prod(hi - lo))
    threshold = tol.rel_tol * bbox_area

    while len(points) > 2:
        prev_edge = points - np.roll(points, 1, axis=0)
        next_edge = np.roll(points, -1, axis=0) - points
        cross = _cross2(prev_edge, next_edge)
        flat = 0.5 * np.abs(cross) <= threshold
        if not flat.any():
            if np.any(cross < 0):
                raise InvalidShape("Vertices do not form a convex counter-clockwise cycle.")
            break
        # never drop two neighbours in the same pass
        keep = np.ones(len(points), dtype=bool)
        for index in np.flatnonzero(flat):
            if keep[index - 1] and keep.sum() > 2:
                keep[index] = False
        points = points[keep]

    if len(points) == 2 and np.allclose(points[0], points[1]):
        return points[:1]
    return points


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """
    A planar convex body given by its vertex cycle.

    The cycle is normalized on construction: repeated and collinear vertices are dropped
    and the orientation is made counter-clockwise. Bodies with one or two vertices (points
    and segments) are valid carriers but flagged as degenerate.
    """

    vertices: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.vertices, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != 2 or len(points) == 0:
            raise InvalidShape(f"Polygon vertices must be an (n, 2) array, got shape {points.shape}.")
        if not np.all(np.isfinite(points)):
            raise InvalidShape("Polygon vertices must be finite.")
        object.__setattr__(self, "vertices", _frozen(_normalize_cycle(points, DEFAULT_TOLERANCES)))

    @classmethod
    def hull(cls, points) -> "ConvexPolygon":
        """
        Builds the convex hull of a planar point set.

        Collinear or coincident inputs produce a segment or a point instead of failing.
        """
        pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
        if len(pts) >= 3:
            try:
                return cls(pts[ConvexHull(pts).vertices])
            except QhullError:
                logger.debug("Planar hull is flat, falling back to the extreme points.")
        center = pts.mean(axis=0)
        spread = pts - center
        if not np.any(spread):
            return cls(pts[:1])
        axis = np.linalg.svd(spread, full_matrices=False)[2][0]
        along = spread @ axis
        return cls(pts[[int(np.argmin(along)), int(np.argmax(along))]])

    @property
    def dim(self) -> int:
        return 2

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3

    @property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    @property
    def edge_normals(self) -> np.ndarray:
        """Outward (unnormalized) edge normals, (dy, -dx) for each CCW edge."""
        edges = self.edges
        return np.column_stack([edges[:, 1], -edges[:, 0]])

    def __len__(self) -> int:
        return len(self.vertices)

    def equals(self, other: "ConvexPolygon", atol: float = 1e-9, up_to_translation: bool = False) -> bool:
        """Compares two polygons up to cyclic relabelling (and optionally a translation)."""
        if len(self) != len(other):
            return False
        mine, theirs = self.vertices, other.vertices
        if up_to_translation:
            mine = mine - mine.mean(axis=0)
            theirs = theirs - theirs.mean(axis=0)
        start = int(np.argmin(np.linalg.norm(theirs - mine[0], axis=1)))
        return bool(np.allclose(mine, np.roll(theirs, -start, axis=0), atol=atol, rtol=0.0))


@dataclass(frozen=True, eq=False)
class Ball:
    """A Euclidean ball in any dimension."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        radius = float(self.radius)
        if not np.isfinite(radius) or radius < 0:
            raise InvalidShape(f"Ball radius must be a nonnegative real, got {self.radius}.")
        object.__setattr__(self, "radius", radius)

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass(frozen=True, eq=False)
class HPolytope:
    """
    The intersection of halfspaces {x : <a_i, x> <= b_i}.

    Boundedness is checked on construction by maximizing each signed coordinate; pass
    ``check=False`` for derived bodies (rotations, erosions) of already checked ones.
    """

    normals: np.ndarray
    offsets: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        normals = np.atleast_2d(np.asarray(self.normals, dtype=np.float64))
        offsets = np.asarray(self.offsets, dtype=np.float64).reshape(-1)
        if len(normals) != len(offsets):
            raise InvalidShape(f"{len(normals)} normals but {len(offsets)} offsets.")
        if not (np.all(np.isfinite(normals)) and np.all(np.isfinite(offsets))):
            raise InvalidShape("Halfspace data must be finite.")
        dim = normals.shape[1]
        if dim < 2:
            raise InvalidShape("HPolytope needs dimension d >= 2.")
        if len(normals) < dim + 1:
            raise Unbounded(f"{len(normals)} halfspaces cannot bound a body in dimension {dim}.")
        if np.any(np.linalg.norm(normals, axis=1) == 0):
            raise InvalidDirection("HPolytope has a zero normal.")
        object.__setattr__(self, "normals", _frozen(normals))
        object.__setattr__(self, "offsets", _frozen(offsets))
        if check:
            self._check_bounded()

    def _check_bounded(self) -> None:
        from kakeya.inball_lp import LpProblem, LpStatus, solve_lp

        for axis in range(self.dim):
            for sign in (1.0, -1.0):
                objective = np.zeros(self.dim)
                objective[axis] = sign
                solution = solve_lp(LpProblem(objective, self.normals, self.offsets))
                if solution.status is LpStatus.UNBOUNDED:
                    raise Unbounded(f"HPolytope is unbounded along {'+' if sign > 0 else '-'}x{axis}.")
                if solution.status is LpStatus.INFEASIBLE:
                    logger.debug("HPolytope is empty.")
                    return

    @property
    def dim(self) -> int:
        return self.normals.shape[1]

    def normalized(self) -> tuple[np.ndarray, np.ndarray]:
        """Returns (normals, offsets) scaled so every normal has unit length."""
        norms = np.linalg.norm(self.normals, axis=1)
        return self.normals / norms[:, None], self.offsets / norms


@dataclass(frozen=True, eq=False)
class VPolytope3:
    """
    A 3D convex polytope given by points; only hull vertices are kept.

    ``facets`` are hull triangles indexing ``vertices``, oriented counter-clockwise seen
    from outside, with unit outward ``normals`` and ``offsets`` (<n, x> <= offset).
    """

    vertices: np.ndarray
    facets: np.ndarray = field(init=False, repr=False)
    normals: np.ndarray = field(init=False, repr=False)
    offsets: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        points = np.asarray(self.vertices, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != 3:
            raise InvalidShape(f"3D vertices must be an (n, 3) array, got shape {points.shape}.")
        if not np.all(np.isfinite(points)):
            raise InvalidShape("3D vertices must be finite.")
        if len(points) < 4:
            raise DegenerateShape("A 3D polytope needs at least 4 affinely independent points.")
        try:
            hull = ConvexHull(points)
        except QhullError as exc:
            raise DegenerateShape("Point set is flat; it spans no volume.") from exc

        keep = np.sort(hull.vertices)
        remap = np.full(len(points), -1)
        remap[keep] = np.arange(len(keep))
        kept = points[keep]
        facets = remap[hull.simplices]
        normals = hull.equations[:, :3]
        offsets = -hull.equations[:, 3]

        a, b, c = kept[facets[:, 0]], kept[facets[:, 1]], kept[facets[:, 2]]
        flipped = np.einsum("ij,ij->i", np.cross(b - a, c - a), normals) < 0
        facets[flipped] = facets[flipped][:, [0, 2, 1]]

        object.__setattr__(self, "vertices", _frozen(kept))
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "normals", _frozen(normals))
        object.__setattr__(self, "offsets", _frozen(offsets))

    @property
    def dim(self) -> int:
        return 3

    @property
    def triangles(self) -> np.ndarray:
        """Facet corner coordinates, shape (k, 3, 3)."""
        return self.vertices[self.facets]


@dataclass(frozen=True)
class Rotation:
    """
    An orientation: a planar angle in radians, or a unit quaternion (w, x, y, z) in 3D.
    """

    angle: float | None = None
    quaternion: tuple[float, float, float, float] | None = None

    def __post_init__(self):
        if (self.angle is None) == (self.quaternion is None):
            raise InvalidParameter("A rotation is either a planar angle or a quaternion.")
        if self.angle is not None:
            if not np.isfinite(self.angle):
                raise InvalidParameter(f"Rotation angle must be finite, got {self.angle}.")
            object.__setattr__(self, "angle", float(self.angle))
        else:
            q = tuple(float(x) for x in self.quaternion)
            if len(q) != 4 or abs(np.linalg.norm(q) - 1.0) > 1e-12:
                raise InvalidParameter(f"Quaternion must have 4 entries and unit norm, got {q}.")
            object.__setattr__(self, "quaternion", q)

    @classmethod
    def planar(cls, angle: float) -> "Rotation":
        return cls(angle=angle)

    @classmethod
    def from_quaternion(cls, q) -> "Rotation":
        """Builds a 3D rotation, normalizing ``q`` = (w, x, y, z)."""
        q = np.asarray(q, dtype=np.float64)
        norm = np.linalg.norm(q)
        if q.shape != (4,) or norm == 0:
            raise InvalidParameter(f"Quaternion must be 4 nonzero numbers, got {q}.")
        return cls(quaternion=tuple(q / norm))

    @classmethod
    def identity(cls, dim: int) -> "Rotation":
        if dim == 2:
            return cls(angle=0.0)
        if dim == 3:
            return cls(quaternion=(1.0, 0.0, 0.0, 0.0))
        raise InvalidParameter(f"Rotations are supported in d = 2, 3, not {dim}.")

    @property
    def dim(self) -> int:
        return 2 if self.angle is not None else 3

    def _scipy(self) -> ScipyRotation:
        w, x, y, z = self.quaternion
        return ScipyRotation.from_quat([x, y, z, w])

    @classmethod
    def _from_scipy(cls, rotation: ScipyRotation) -> "Rotation":
        x, y, z, w = rotation.as_quat()
        return cls.from_quaternion([w, x, y, z])

    def matrix(self) -> np.ndarray:
        if self.angle is not None:
            c, s = np.cos(self.angle), np.sin(self.angle)
            return np.array([[c, -s], [s, c]])
        return self._scipy().as_matrix()

    def compose(self, other: "Rotation") -> "Rotation":
        """Returns ``self`` after ``other`` (apply ``other`` first)."""
        if self.dim != other.dim:
            raise DimensionMismatch("Cannot compose a planar rotation with a 3D one.")
        if self.angle is not None:
            return Rotation(angle=self.angle + other.angle)
        return Rotation._from_scipy(self._scipy() * other._scipy())

    def power(self, k: int) -> "Rotation":
        if self.angle is not None:
            return Rotation(angle=self.angle * k)
        return Rotation._from_scipy(ScipyRotation.from_rotvec(self._scipy().as_rotvec() * k))

    def inverse(self) -> "Rotation":
        return self.power(-1)


class Containment(NamedTuple):
    inside: bool
    margin: float


Shape = Union[ConvexPolygon, HPolytope, VPolytope3, Ball]


def shape_dim(shape: Shape) -> int:
    return shape.dim


def vertices_of(shape: Shape) -> np.ndarray:
    """Vertex array of a polytopal shape; H-polytopes are enumerated first."""
    if isinstance(shape, (ConvexPolygon, VPolytope3)):
        return shape.vertices
    if isinstance(shape, HPolytope):
        return hpolytope_vertices(shape).vertices
    raise InvalidShape(f"{type(shape).__name__} has no vertex representation.")


def _directions(u, dim: int) -> tuple[np.ndarray, bool]:
    directions = np.asarray(u, dtype=np.float64)
    single = directions.ndim == 1
    directions = np.atleast_2d(directions)
    if directions.shape[1] != dim:
        raise DimensionMismatch(f"Direction of dimension {directions.shape[1]} for a {dim}-D shape.")
    if np.any(np.linalg.norm(directions, axis=1) == 0):
        raise InvalidDirection("Support direction must be nonzero.")
    return directions, single


def support(shape: Shape, u) -> float | np.ndarray:
    """
    Evaluates the support function h(u) = max <p, u> over the shape.

    Args:
        shape (Shape): Any carrier (polygon, H-polytope, 3D polytope, ball).
        u: One direction of shape (d,) or a stack of directions of shape (k, d).

    Returns:
        float | np.ndarray: h(u) for a single direction, or one value per row.

    Raises:
        InvalidDirection: If a direction is the zero vector.
        DimensionMismatch: If a direction does not match the shape's dimension.
    """
    directions, single = _directions(u, shape.dim)
    if isinstance(shape, Ball):
        values = directions @ shape.center + shape.radius * np.linalg.norm(directions, axis=1)
    elif isinstance(shape, HPolytope):
        values = np.array([_hpolytope_support(shape, direction) for direction in directions])
    else:
        values = (directions @ shape.vertices.T).max(axis=1)
    return float(values[0]) if single else values


def _hpolytope_support(shape: HPolytope, direction: np.ndarray) -> float:
    from kakeya.inball_lp import LpProblem, LpStatus, solve_lp

    solution = solve_lp(LpProblem(direction, shape.normals, shape.offsets))
    if solution.status is LpStatus.UNBOUNDED:
        raise Unbounded("Support function is infinite in this direction.")
    if solution.status is LpStatus.INFEASIBLE:
        raise DegenerateShape("Support function of an empty polytope.")
    return solution.value


def rotate(shape: Shape, rho: Rotation) -> Shape:
    """Applies a rotation about the origin; polygon orientation stays counter-clockwise."""
    if shape.dim != rho.dim:
        raise DimensionMismatch(f"Rotation of dimension {rho.dim} applied to a {shape.dim}-D shape.")
    matrix = rho.matrix()
    if isinstance(shape, ConvexPolygon):
        return ConvexPolygon(shape.vertices @ matrix.T)
    if isinstance(shape, VPolytope3):
        return VPolytope3(shape.vertices @ matrix.T)
    if isinstance(shape, Ball):
        return Ball(matrix @ shape.center, shape.radius)
    return HPolytope(shape.normals @ matrix.T, shape.offsets, check=False)


def translate(shape: Shape, t) -> Shape:
    t = as_vector(t, shape.dim)
    if isinstance(shape, ConvexPolygon):
        return ConvexPolygon(shape.vertices + t)
    if isinstance(shape, VPolytope3):
        return VPolytope3(shape.vertices + t)
    if isinstance(shape, Ball):
        return Ball(shape.center + t, shape.radius)
    return HPolytope(shape.normals, shape.offsets + shape.normals @ t, check=False)


def scale(shape: Shape, alpha: float) -> Shape:
    """Scales about the origin by ``alpha`` >= 0 (0 collapses polygons and balls to a point)."""
    if not np.isfinite(alpha) or alpha < 0:
        raise InvalidParameter(f"Scale factor must be a nonnegative real, got {alpha}.")
    if isinstance(shape, ConvexPolygon):
        return ConvexPolygon(shape.vertices * alpha)
    if isinstance(shape, VPolytope3):
        return VPolytope3(shape.vertices * alpha)
    if isinstance(shape, Ball):
        return Ball(shape.center * alpha, shape.radius * alpha)
    if alpha == 0:
        raise DegenerateShape("An H-polytope cannot be scaled to a point.")
    return HPolytope(shape.normals, shape.offsets * alpha, check=False)


def to_hpolytope(shape: Shape) -> HPolytope:
    """
    Converts a polytope to its halfspace representation.

    Polygons use their exact edge normals (dy, -dx) with offsets <a_i, v_i>; 3D polytopes
    use their facet planes with coplanar triangles merged.
    """
    if isinstance(shape, HPolytope):
        return shape
    if isinstance(shape, ConvexPolygon):
        if shape.is_degenerate:
            raise DegenerateShape("A point or segment has no halfspace representation with interior.")
        normals = shape.edge_normals
        return HPolytope(normals, np.einsum("ij,ij->i", normals, shape.vertices), check=False)
    if isinstance(shape, VPolytope3):
        planes = np.column_stack([shape.normals, shape.offsets])
        _, first = np.unique(np.round(planes, 12), axis=0, return_index=True)
        first = np.sort(first)
        return HPolytope(shape.normals[first], shape.offsets[first], check=False)
    raise InvalidShape("A ball is not a polytope.")


def hpolytope_vertices(shape: HPolytope) -> ConvexPolygon | VPolytope3:
    """
    Enumerates the vertices of a bounded H-polytope in d = 2 or 3.

    The Chebyshev center serves as the interior point of the halfspace intersection.
    """
    from kakeya.inball_lp import chebyshev_center

    if shape.dim not in (2, 3):
        raise InvalidParameter(f"Vertex enumeration is supported in d = 2, 3, not {shape.dim}.")
    inball = chebyshev_center(shape)
    halfspaces = np.column_stack([shape.normals, -shape.offsets])
    points = HalfspaceIntersection(halfspaces, inball.center).intersections
    if shape.dim == 2:
        return ConvexPolygon.hull(points)
    return VPolytope3(points)


def contains(outer: Shape, inner: Shape, tol: Tolerances = DEFAULT_TOLERANCES) -> Containment:
    """
    Tests whether ``inner`` lies inside ``outer`` and reports the minimum signed slack.

    Constraints are normalized, so the margin is a Euclidean distance: positive margins
    measure clearance, negative margins the depth of the worst violation. A ball inside a
    polytope is tested exactly with inflated constraints <a_i, c> + r |a_i| <= b_i.

    Args:
        outer (Shape): The containing body.
        inner (Shape): The contained body.
        tol (Tolerances, optional): ``abs_tol`` decides ``inside``. Defaults to DEFAULT_TOLERANCES.

    Returns:
        Containment: (inside, margin) with inside = margin >= -abs_tol.
    """
    if outer.dim != inner.dim:
        raise DimensionMismatch(f"Cannot test a {inner.dim}-D shape inside a {outer.dim}-D one.")

    if isinstance(outer, Ball):
        if isinstance(inner, Ball):
            reach = np.linalg.norm(inner.center - outer.center) + inner.radius
        else:
            reach = np.linalg.norm(vertices_of(inner) - outer.center, axis=1).max()
        margin = outer.radius - float(reach)
    else:
        normals, offsets = to_hpolytope(outer).normalized()
        if isinstance(inner, Ball):
            slack = offsets - normals @ inner.center - inner.radius
        else:
            slack = offsets[:, None] - normals @ vertices_of(inner).T
        margin = float(slack.min())
    return Containment(margin >= -tol.abs_tol, margin)


class EdgeTable(NamedTuple):
    edges: np.ndarray
    lengths: np.ndarray
    exterior_angles: np.ndarray


def edge_table(body: VPolytope3) -> EdgeTable:
    """
    Lists the undirected edges of a 3D polytope's facet triangulation.

    The exterior dihedral angle of an edge is the angle between the outward normals of
    its two triangles (pi minus the interior angle); diagonals inside a flat facet get 0.
    """
    facets = body.facets
    directed = np.concatenate([facets[:, [0, 1]], facets[:, [1, 2]], facets[:, [2, 0]]])
    owner = np.tile(np.arange(len(facets)), 3)
    keys = np.sort(directed, axis=1)
    order = np.lexsort((keys[:, 1], keys[:, 0]))
    keys, owner = keys[order], owner[order]
    # a closed triangulated surface lists every edge exactly twice
    edges = keys[0::2]
    first, second = body.normals[owner[0::2]], body.normals[owner[1::2]]
    sines = np.linalg.norm(np.cross(first, second), axis=1)
    cosines = np.einsum("ij,ij->i", first, second)
    angles = np.arctan2(sines, cosines)
    lengths = np.linalg.norm(body.vertices[edges[:, 0]] - body.vertices[edges[:, 1]], axis=1)
    return EdgeTable(edges, lengths, angles)


def area2(polygon: ConvexPolygon) -> float:
    """
    Computes the area of a convex polygon with the shoelace formula.

    Raises:
        DegenerateShape: If the polygon is a point or a segment.
    """
    if polygon.is_degenerate:
        raise DegenerateShape("Area of a point or segment is not defined here.")
    vertices = polygon.vertices - polygon.vertices[0]
    return 0.5 * float(np.sum(_cross2(vertices, np.roll(vertices, -1, axis=0))))


def perimeter2(polygon: ConvexPolygon) -> float:
    if polygon.is_degenerate:
        raise DegenerateShape("Perimeter of a point or segment is not defined here.")
    return float(np.linalg.norm(polygon.edges, axis=1).sum())


def volume3(body: VPolytope3) -> float:
    """Volume by the divergence theorem: a sum of signed tetrahedra over the facets."""
    triangles = body.triangles - body.vertices.mean(axis=0)
    a, b, c = triangles[:, 0], triangles[:, 1], triangles[:, 2]
    return float(np.einsum("ij,ij->i", a, np.cross(b, c)).sum() / 6.0)


def surface3(body: VPolytope3) -> float:
    triangles = body.triangles
    a, b, c = triangles[:, 0], triangles[:, 1], triangles[:, 2]
    return float(0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1).sum())


def hull3(points) -> VPolytope3:
    """
    Builds the 3D convex hull of a point set.

    Raises:
        DegenerateShape: If fewer than 4 affinely independent points are given.
    """
    return VPolytope3(np.asarray(points, dtype=np.float64).reshape(-1, 3))
