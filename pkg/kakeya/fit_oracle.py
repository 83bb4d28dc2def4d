from dataclasses import dataclass, field

import numpy as np
from loguru import logger
from scipy.spatial.transform import Rotation as ScipyRotation

from kakeya.config import DEFAULT_TOLERANCES, LP_BISECT_STEPS, Tolerances, default_seed
from kakeya.errors import DegenerateShape, DimensionMismatch, InvalidParameter, UnsupportedCertification
from kakeya.geom_core import (
    Ball,
    ConvexPolygon,
    HPolytope,
    Rotation,
    Shape,
    Vector,
    hpolytope_vertices,
    rotate,
    scale,
    support,
    to_hpolytope,
    vertices_of,
)
from kakeya.inball_lp import chebyshev_center, erosion, inball_depth, max_scale_at

MIN_SAMPLES = 8


@dataclass(frozen=True)
class FitReport:
    """
    Verdict of a translation fit at one orientation.

    ``margin`` is the clearance (negative: depth of violation) of the best translation, the
    Chebyshev center of the erosion; ``translation`` is a valid placement when ``fits``.
    """

    fits: bool
    margin: float
    translation: Vector
    rotation: Rotation

    def to_dict(self) -> dict:
        return {
            "fits": self.fits,
            "margin": self.margin,
            "translation": [float(x) for x in self.translation],
            "rotation": _rotation_dict(self.rotation),
        }


@dataclass(frozen=True)
class SweepReport:
    """
    Summary of translation fits over a grid (2D) or a random sample (3D) of orientations.

    ``certified`` is only ever set in the plane, when the worst margin beats the Lipschitz
    bound times half the grid spacing; then the shape fits in every orientation. 3D reports
    are statistical evidence only.
    """

    samples: int
    worst_margin: float
    worst_angle: float
    certified: bool
    lipschitz_bound: float
    worst_rotation: Rotation
    worst_translation: Vector
    statistical: bool
    margins: np.ndarray = field(repr=False)

    @property
    def fits_all(self) -> bool:
        return bool(self.worst_margin >= -DEFAULT_TOLERANCES.abs_tol)

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "worst_margin": self.worst_margin,
            "worst_angle": _finite_or_none(self.worst_angle),
            "certified": self.certified,
            "lipschitz_bound": _finite_or_none(self.lipschitz_bound),
            "fits_all": self.fits_all,
            "statistical": self.statistical,
            "worst_rotation": _rotation_dict(self.worst_rotation),
            "worst_translation": [float(x) for x in self.worst_translation],
        }


def _finite_or_none(value: float) -> float | None:
    # 3D sweeps carry NaN for the planar-only fields; JSON has no NaN
    return float(value) if np.isfinite(value) else None


def _rotation_dict(rho: Rotation) -> dict:
    if rho.angle is not None:
        return {"angle": rho.angle}
    return {"quaternion": list(rho.quaternion)}


def fits_translated(shape: Shape, body: Shape, rho: Rotation, tol: Tolerances = DEFAULT_TOLERANCES) -> FitReport:
    """
    Decides whether rho(shape) can be translated into ``body``.

    The feasible translations form the erosion of ``body`` by rho(shape); its deepest point
    (in the metric of the normalized constraints) is the witness and its depth the margin.

    Args:
        shape (Shape): The body to place.
        body (Shape): The container, any polytope carrier.
        rho (Rotation): The orientation.
        tol (Tolerances, optional): ``abs_tol`` decides ``fits``. Defaults to DEFAULT_TOLERANCES.

    Returns:
        FitReport: fits = margin >= -abs_tol.
    """
    if shape.dim != body.dim:
        raise DimensionMismatch(f"Cannot fit a {shape.dim}-D shape into a {body.dim}-D body.")
    translations = erosion(to_hpolytope(body), rotate(shape, rho))
    center, depth = inball_depth(translations, tol)
    return FitReport(bool(depth >= -tol.abs_tol), float(depth), center, rho)


def orientation_grid(dim: int, n: int, seed: int | None = None) -> list[Rotation]:
    """
    Orientations for a sweep: angles 2*pi*k/n in the plane, ``n`` uniformly random unit
    quaternions (seeded) in space.
    """
    if dim == 2:
        return [Rotation.planar(2.0 * np.pi * k / n) for k in range(n)]
    if dim == 3:
        seed = default_seed() if seed is None else seed
        quats = ScipyRotation.random(n, random_state=seed).as_quat()
        return [Rotation.from_quaternion([w, x, y, z]) for x, y, z, w in quats]
    raise InvalidParameter(f"Orientation sweeps are supported in d = 2, 3, not {dim}.")


def rotation_radius(shape: Shape, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """
    Radius R_P of ``shape`` about its Chebyshev center.

    Rotating the shape by an angle delta about that center moves every support value by at
    most |u| * R_P * delta; for a ball the support function does not move at all.
    """
    if isinstance(shape, Ball):
        return 0.0
    if isinstance(shape, ConvexPolygon) and shape.is_degenerate:
        center = shape.vertices.mean(axis=0)
    else:
        center = chebyshev_center(shape, tol).center
    return float(np.linalg.norm(vertices_of(shape) - center, axis=1).max())


def sweep_fit(
    shape: Shape,
    body: Shape,
    n: int,
    certify: bool = False,
    seed: int | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SweepReport:
    """
    Runs ``fits_translated`` over ``n`` orientations and keeps the worst one.

    With ``certify`` (plane only) the grid result is upgraded to a proof when
    worst_margin >= R_P * (2*pi/n) / 2, R_P being the rotation radius: every orientation lies
    within half a grid step of a sample whose placement has that much clearance.

    Raises:
        InvalidParameter: If n < 8.
        UnsupportedCertification: If ``certify`` is requested in 3D.
    """
    if n < MIN_SAMPLES:
        raise InvalidParameter(f"A sweep needs at least {MIN_SAMPLES} samples, got {n}.")
    if certify and shape.dim != 2:
        raise UnsupportedCertification("Certified sweeps are only available in the plane.")

    # 1. Orientations
    # --------------------------------------
    # A regular angle grid in the plane, seeded random rotations in space.
    rotations = orientation_grid(shape.dim, n, seed)

    # 2. Fit
    # --------------------------------------
    # One erosion LP per orientation; the smallest margin is the verdict.
    reports = [fits_translated(shape, body, rho, tol) for rho in rotations]
    margins = np.array([report.margin for report in reports])
    worst = int(np.argmin(margins))

    # 3. Certify
    # --------------------------------------
    # The worst sample must clear R_P times half a grid step, with no tolerance band.
    lipschitz = rotation_radius(shape, tol) if shape.dim == 2 else float("nan")
    certified = False
    if certify:
        required = lipschitz * (2.0 * np.pi / n) / 2.0
        certified = bool(margins[worst] >= required)
        if not certified:
            logger.warning(
                f"Sweep not certifiable: worst margin {margins[worst]:.3e} < required {required:.3e}."
            )
    worst_rotation = rotations[worst]
    return SweepReport(
        samples=n,
        worst_margin=float(margins[worst]),
        worst_angle=float(worst_rotation.angle) if shape.dim == 2 else float("nan"),
        certified=certified,
        lipschitz_bound=lipschitz,
        worst_rotation=worst_rotation,
        worst_translation=reports[worst].translation,
        statistical=shape.dim != 2,
        margins=margins,
    )


def _width_along_axes(shape: Shape) -> np.ndarray:
    axes = np.eye(shape.dim)
    return support(shape, axes) + support(shape, -axes)


def scale_upper_bound(shape: Shape, body: Shape) -> float:
    """min over coordinate axes of width(body) / width(shape): the shape must fit unrotated."""
    if isinstance(body, HPolytope):
        body = hpolytope_vertices(body)
    body_widths = _width_along_axes(body)
    shape_widths = _width_along_axes(shape)
    spread = shape_widths > 0
    if not spread.any():
        raise DegenerateShape("A single point fits at every scale.")
    return float(np.min(body_widths[spread] / shape_widths[spread]))


def max_scale(
    shape: Shape,
    body: Shape,
    n: int,
    method: str = "bisect",
    seed: int | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    Finds the largest alpha such that alpha * shape fits in ``body`` at all ``n`` sampled
    orientations.

    ``method="bisect"`` runs 48 bisection steps on [0, alpha_ub], testing every orientation
    at each step; ``method="lp"`` solves one scale LP per orientation and takes the minimum,
    which is the limit of the bisection and much cheaper. Larger nested grids can only lower
    the result, and max_scale(shape, beta * body) = beta * max_scale(shape, body).

    Returns:
        float: The largest passing scale, 0 if the shape never fits.
    """
    rotations = orientation_grid(shape.dim, n, seed)
    if method == "lp":
        scales = [max_scale_at(shape, body, rho, tol)[0] for rho in rotations]
        return float(min(scales))
    if method != "bisect":
        raise InvalidParameter(f"Unknown max_scale method '{method}', expected 'bisect' or 'lp'.")

    def fits_everywhere(alpha: float) -> bool:
        scaled = scale(shape, alpha)
        return all(fits_translated(scaled, body, rho, tol).fits for rho in rotations)

    low, high = 0.0, scale_upper_bound(shape, body)
    if fits_everywhere(high):
        return high
    for _ in range(LP_BISECT_STEPS):
        mid = 0.5 * (low + high)
        if fits_everywhere(mid):
            low = mid
        else:
            high = mid
    logger.debug(f"max_scale bisection bracket [{low:.12g}, {high:.12g}]")
    return low
