"""
mu-polygons and their edge-length vectors.

A mu-polygon is a convex polygon whose edges are all parallel to edges of the regular
mu-gon K_mu. Normal convention: edge k (0-based) of K_mu has outward normal at angle
2*pi*k/mu, so for mu = 4 the normals run +x, +y, -x, -y. Rotating a polygon by 2*pi/mu then
shifts its vector cyclically to the right.
"""
from dataclasses import dataclass

import numpy as np
from loguru import logger

from kakeya.config import DEFAULT_TOLERANCES, INNER_BISECT_STEPS, Tolerances
from kakeya.errors import DegenerateShape, InvalidParameter, NotAMuPolygon, NotClosed
from kakeya.geom_core import ConvexPolygon, Rotation, contains, rotate, scale, support, translate
from kakeya.inball_lp import chebyshev_center
from kakeya.minkowski import interpolate


def _check_mu(mu: int) -> int:
    if int(mu) != mu or mu < 4 or mu % 2:
        raise InvalidParameter(f"mu must be an even integer >= 4, got {mu}.")
    return int(mu)


def mu_normals(mu: int) -> np.ndarray:
    angles = 2.0 * np.pi * np.arange(_check_mu(mu)) / mu
    return np.column_stack([np.cos(angles), np.sin(angles)])


def mu_directions(mu: int) -> np.ndarray:
    """Unit CCW edge directions: each normal turned by +pi/2."""
    normals = mu_normals(mu)
    return np.column_stack([-normals[:, 1], normals[:, 0]])


def mu_rotation(mu: int) -> Rotation:
    return Rotation.planar(2.0 * np.pi / _check_mu(mu))


@dataclass(frozen=True, eq=False)
class MuVector:
    """
    Edge lengths (a_1, ..., a_mu) of a mu-polygon, one per K_mu normal; 0 marks an absent normal.

    Addition and positive scaling mirror the Minkowski sum and scaling of polygons.
    """

    mu: int
    lengths: np.ndarray

    def __post_init__(self):
        mu = _check_mu(self.mu)
        lengths = np.array(self.lengths, dtype=np.float64).reshape(-1)
        if len(lengths) != mu:
            raise InvalidParameter(f"A mu-vector for mu = {mu} needs {mu} entries, got {len(lengths)}.")
        if not np.all(np.isfinite(lengths)) or np.any(lengths < 0):
            raise InvalidParameter("mu-vector entries must be finite and nonnegative.")
        lengths.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "lengths", lengths)

    @property
    def perimeter(self) -> float:
        return float(self.lengths.sum())

    def closure_error(self) -> float:
        """Length of the gap left after walking all edges."""
        return float(np.linalg.norm(self.lengths @ mu_directions(self.mu)))

    def is_closed(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        return self.closure_error() <= tol.normal_tol * self.perimeter

    def __add__(self, other: "MuVector") -> "MuVector":
        if not isinstance(other, MuVector) or other.mu != self.mu:
            raise InvalidParameter("Only mu-vectors with the same mu can be added.")
        return MuVector(self.mu, self.lengths + other.lengths)

    def __mul__(self, alpha: float) -> "MuVector":
        if alpha < 0:
            raise InvalidParameter(f"mu-vectors scale by nonnegative factors, got {alpha}.")
        return MuVector(self.mu, self.lengths * alpha)

    __rmul__ = __mul__

    def allclose(self, other: "MuVector", atol: float = 1e-12) -> bool:
        return self.mu == other.mu and bool(np.allclose(self.lengths, other.lengths, atol=atol, rtol=0.0))


def phi(polygon: ConvexPolygon, mu: int, tol: Tolerances = DEFAULT_TOLERANCES) -> MuVector:
    """
    Computes the edge-length vector of a mu-polygon.

    Args:
        polygon (ConvexPolygon): A polygon whose edge normals are K_mu normals.
        mu (int): Even integer >= 4.
        tol (Tolerances, optional): ``normal_tol`` is the admissible angular error.

    Returns:
        MuVector: lengths[k] = length of the edge with normal at angle 2*pi*k/mu, 0 if absent.

    Raises:
        NotAMuPolygon: If some edge normal is not a K_mu normal.
    """
    mu = _check_mu(mu)
    lengths = np.zeros(mu)
    if len(polygon) < 2:
        return MuVector(mu, lengths)
    normals = polygon.edge_normals
    angles = np.mod(np.arctan2(normals[:, 1], normals[:, 0]), 2.0 * np.pi)
    step = 2.0 * np.pi / mu
    index = np.rint(angles / step).astype(int)
    error = np.abs(angles - index * step)
    if np.any(error > tol.normal_tol):
        worst = int(np.argmax(error))
        raise NotAMuPolygon(
            f"Edge {worst} has normal angle {angles[worst]:.15g}, {error[worst]:.3e} rad away from K_{mu}."
        )
    np.add.at(lengths, index % mu, np.linalg.norm(polygon.edges, axis=1))
    return MuVector(mu, lengths)


def polygon_from_phi(vector: MuVector, tol: Tolerances = DEFAULT_TOLERANCES) -> ConvexPolygon:
    """
    Rebuilds the polygon of a mu-vector, starting at the origin and walking the edges in
    normal order; zero-length edges are skipped.

    Raises:
        NotClosed: If the edges leave a gap larger than ``normal_tol`` times the perimeter.
    """
    if not vector.is_closed(tol):
        raise NotClosed(f"mu-vector leaves a gap of {vector.closure_error():.3e} (perimeter {vector.perimeter:.6g}).")
    present = vector.lengths > 0
    edges = vector.lengths[present, None] * mu_directions(vector.mu)[present]
    vertices = np.concatenate([np.zeros((1, 2)), np.cumsum(edges, axis=0)[:-1]])
    return ConvexPolygon(vertices)


def mu_rotate(vector: MuVector) -> MuVector:
    """The mu-vector of the polygon rotated by 2*pi/mu: a cyclic right shift."""
    return MuVector(vector.mu, np.roll(vector.lengths, 1))


def mu_average_vec(vector: MuVector) -> MuVector:
    """The mu-vector of the mu-average: every entry equals perimeter / mu."""
    return MuVector(vector.mu, np.full(vector.mu, vector.perimeter / vector.mu))


def mu_partial_averages(
    polygon: ConvexPolygon, mu: int, rho: Rotation | None = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[ConvexPolygon]:
    """
    Builds P_i = (1/i) * sum_{k < i} rho^k P for i = 1..mu.

    Each step is the interpolation P_i = (1 - lam) rho^(i-1) P + lam P_(i-1) with
    lam = 1 - 1/i, so every P_i keeps the perimeter of P and, when every rho^k P fits in
    some Q by translation, fits in Q as well.
    """
    mu = _check_mu(mu)
    rho = rho or mu_rotation(mu)
    averages = [polygon]
    for i in range(2, mu + 1):
        rotated = rotate(polygon, rho.power(i - 1))
        averages.append(interpolate(rotated, averages[-1], 1.0 - 1.0 / i, tol))
    logger.debug(f"mu-average with mu = {mu}: {len(averages[-1])} vertices")
    return averages


def mu_average_poly(
    polygon: ConvexPolygon, mu: int, rho: Rotation | None = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> ConvexPolygon:
    """
    Computes the mu-average (1/mu) * sum_{k=0}^{mu-1} rho^k P with exact Minkowski sums.

    Works for any convex polygon; for a mu-polygon the result is the regular mu-gon with
    vector mu_average_vec(phi(P)), up to translation.
    """
    return mu_partial_averages(polygon, mu, rho, tol)[-1]


def circumscribed_mu_polygon(polygon: ConvexPolygon, mu: int) -> ConvexPolygon:
    """Intersects the supporting halfplanes of ``polygon`` at the K_mu normals."""
    normals = mu_normals(mu)
    heights = support(polygon, normals)
    following = np.roll(np.arange(len(normals)), -1)
    vertices = np.array(
        [np.linalg.solve(np.vstack([normals[k], normals[j]]), [heights[k], heights[j]]) for k, j in enumerate(following)]
    )
    return ConvexPolygon(vertices)


def inner_mu_polygon(polygon: ConvexPolygon, mu: int, tol: Tolerances = DEFAULT_TOLERANCES) -> ConvexPolygon:
    """
    Finds a mu-polygon inside ``polygon`` whose perimeter approaches it as mu grows.

    The circumscribed mu-polygon is shrunk about the Chebyshev center of ``polygon`` by the
    largest factor t in (0, 1] (bisection) for which the copy is contained with a nonnegative
    margin, so the result never crosses the boundary of ``polygon``.

    Raises:
        DegenerateShape: If the polygon has no interior.
    """
    mu = _check_mu(mu)

    # 1. Circumscribe
    # --------------------------------------
    # Supporting lines of the polygon at the K_mu normals, centered on the inball.
    center = chebyshev_center(polygon, tol).center
    outer = translate(circumscribed_mu_polygon(polygon, mu), -center)

    def shrunk(t: float) -> ConvexPolygon:
        return translate(scale(outer, t), center)

    def fits(t: float) -> bool:
        # raw margin, no tolerance band: the result must lie inside
        return contains(polygon, shrunk(t), tol).margin >= 0.0

    # 2. Shrink
    # --------------------------------------
    # Bisection on the scale factor, keeping the last fitting one in ``low``.
    if fits(1.0):
        return shrunk(1.0)
    low, high = 0.0, 1.0
    for _ in range(INNER_BISECT_STEPS):
        mid = 0.5 * (low + high)
        if fits(mid):
            low = mid
        else:
            high = mid
    if low == 0.0:
        raise DegenerateShape("No scaled mu-polygon fits inside the polygon.")
    logger.debug(f"Inner {mu}-polygon scale factor {low:.12f}")
    return shrunk(low)


def regular_disk_gap(mu: int, inradius: float) -> float:
    """Perimeter of the regular mu-gon with the given inradius minus that of its inscribed disk."""
    mu = _check_mu(mu)
    return mu * 2.0 * inradius * np.tan(np.pi / mu) - 2.0 * np.pi * inradius
