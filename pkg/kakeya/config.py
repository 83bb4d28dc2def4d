import os
from dataclasses import dataclass, replace

from kakeya.errors import InvalidParameter


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical tolerances shared by every computation in the package.

    Attributes:
        abs_tol (float): Absolute slack for containment, fit and LP feasibility checks.
        rel_tol (float): Relative slack for measure identities (perimeter additivity,
            collinear-vertex elimination, duplicate vertices).
        angle_tol (float): Two edge directions closer than this (radians) are merged
            into one edge by Minkowski sums.
        normal_tol (float): Maximum angular distance (radians) between a polygon edge
            normal and a K_mu normal for the edge to count as a mu-edge.
        strict_gap (float): Gap required before a strict inequality is reported as strict.
        linear_tol (float): Deviation allowed from linearity for homothet interpolations.
        pivot_tol (float): Simplex entries below this magnitude are treated as zero.
        max_pivots (int): Simplex pivot budget before a NumericalFailure is raised.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-12
    angle_tol: float = 1e-12
    normal_tol: float = 1e-9
    strict_gap: float = 1e-6
    linear_tol: float = 1e-7
    pivot_tol: float = 1e-12
    max_pivots: int = 10000

    def with_overrides(self, **kwargs) -> "Tolerances":
        """Returns a copy with the given fields replaced, ignoring ``None`` values."""
        changes = {key: value for key, value in kwargs.items() if value is not None}
        return replace(self, **changes)


DEFAULT_TOLERANCES = Tolerances()

# "kake" in ASCII
DEFAULT_SEED = 0x6B616B65
SEED_ENV_VAR = "KAKEYA_SEED"

ARC_POINTS = 256
CIRCLE_POINTS = 1024
LP_BISECT_STEPS = 48
INNER_BISECT_STEPS = 40
HULL_RETRIES = 16
SVG_SIZE = 512


def default_seed() -> int:
    """
    Returns the master seed for randomized suites and 3D sweeps.

    The environment variable ``KAKEYA_SEED`` overrides ``DEFAULT_SEED``; it accepts
    decimal or ``0x``-prefixed hexadecimal integers.

    Raises:
        InvalidParameter: If the variable is set to something else.
    """
    value = os.environ.get(SEED_ENV_VAR)
    if value is None or not value.strip():
        return DEFAULT_SEED
    try:
        return int(value.strip(), 0)
    except ValueError:
        raise InvalidParameter(f"{SEED_ENV_VAR} must be an integer, got '{value}'.") from None
