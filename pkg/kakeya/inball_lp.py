from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from loguru import logger
from scipy.optimize import minimize

from kakeya.config import DEFAULT_TOLERANCES, Tolerances
from kakeya.errors import DegenerateShape, DimensionMismatch, InvalidShape, NumericalFailure, Unbounded
from kakeya.geom_core import (
    Ball,
    ConvexPolygon,
    HPolytope,
    Rotation,
    Shape,
    Vector,
    VPolytope3,
    edge_table,
    hpolytope_vertices,
    rotate,
    support,
    to_hpolytope,
)


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LpProblem:
    """maximize <objective, x> subject to normals @ x <= offsets, with x free."""

    objective: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        objective = np.asarray(self.objective, dtype=np.float64).reshape(-1)
        normals = np.atleast_2d(np.asarray(self.normals, dtype=np.float64))
        offsets = np.asarray(self.offsets, dtype=np.float64).reshape(-1)
        if normals.shape != (len(offsets), len(objective)):
            raise DimensionMismatch(
                f"LP data do not agree: objective {objective.shape}, normals {normals.shape}, "
                f"offsets {offsets.shape}."
            )
        if not all(np.all(np.isfinite(part)) for part in (objective, normals, offsets)):
            raise InvalidShape("LP data must be finite.")
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)


class LpSolution(NamedTuple):
    status: LpStatus
    point: Vector
    value: float
    pivots: int


def _pivot(tableau: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    others = np.arange(len(tableau)) != row
    tableau[others] -= np.outer(tableau[others, col], tableau[row])
    basis[row] = col


def _run_phase(
    tableau: np.ndarray,
    basis: np.ndarray,
    cost: np.ndarray,
    n_columns: int,
    tol: Tolerances,
    pivots: int,
) -> tuple[bool, int]:
    """
    Runs primal simplex pivots with Bland's rule on the first ``n_columns`` columns.

    Returns:
        tuple[bool, int]: (optimal, pivot count); ``optimal`` is False when a column with
        positive reduced cost has no blocking row (unbounded).
    """
    while True:
        reduced = cost[:n_columns] - cost[basis] @ tableau[:, :n_columns]
        entering = np.flatnonzero(reduced > tol.abs_tol)
        if entering.size == 0:
            return True, pivots
        col = int(entering[0])
        column = tableau[:, col]
        rows = np.flatnonzero(column > tol.pivot_tol)
        if rows.size == 0:
            return False, pivots
        ratios = tableau[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + tol.pivot_tol * max(1.0, abs(best))]
        row = int(ties[np.argmin(basis[ties])])

        _pivot(tableau, basis, row, col)
        pivots += 1
        if pivots > tol.max_pivots or not np.all(np.isfinite(tableau)):
            raise NumericalFailure(
                "Simplex did not converge.",
                diagnostics={
                    "pivots": pivots,
                    "entering": col,
                    "leaving_row": row,
                    "finite": bool(np.all(np.isfinite(tableau))),
                    "max_entry": float(np.nanmax(np.abs(tableau))),
                },
            )


def solve_lp(problem: LpProblem, tol: Tolerances = DEFAULT_TOLERANCES) -> LpSolution:
    """
    Solves a small dense LP with the two-phase tableau simplex method and Bland's rule.

    Free variables are split as x = u - v with u, v >= 0; every constraint gets a slack,
    and rows with negative right-hand side get an artificial variable for phase one. Bland's
    rule (lowest entering index, lowest leaving basic index on ratio ties) rules out cycling,
    so the answer is a deterministic function of the input bits.

    Args:
        problem (LpProblem): maximize <c, x> subject to A x <= b.
        tol (Tolerances, optional): Pivot and feasibility tolerances. Defaults to DEFAULT_TOLERANCES.

    Returns:
        LpSolution: status, optimal vertex (NaN when infeasible), objective value
        (+inf when unbounded, NaN when infeasible) and the number of pivots.

    Raises:
        NumericalFailure: If the pivot budget is exhausted, the tableau stops being finite,
            or the reported optimum violates a constraint by more than ``abs_tol``.
    """
    # 1. Build Tableau
    # --------------------------------------
    # Columns: u, v (x = u - v), one slack per row, then one artificial per row with b < 0.
    # Those rows are negated so every right-hand side starts nonnegative.
    A, b, c = problem.normals, problem.offsets, problem.objective
    m, n = A.shape
    negative = b < 0
    art_rows = np.flatnonzero(negative)
    first_art = 2 * n + m
    n_total = first_art + len(art_rows)

    sign = np.where(negative, -1.0, 1.0)
    tableau = np.zeros((m, n_total + 1))
    tableau[:, :n] = A * sign[:, None]
    tableau[:, n : 2 * n] = -A * sign[:, None]
    tableau[np.arange(m), 2 * n + np.arange(m)] = sign
    tableau[art_rows, first_art + np.arange(len(art_rows))] = 1.0
    tableau[:, -1] = b * sign
    basis = 2 * n + np.arange(m)
    basis[art_rows] = first_art + np.arange(len(art_rows))

    # 2. Phase One
    # --------------------------------------
    # Drive the artificials out of the basis; a positive residual means no feasible point.
    # Artificials stuck at zero mark redundant rows, which are dropped.
    pivots = 0
    if len(art_rows):
        phase_one = np.zeros(n_total)
        phase_one[first_art:] = -1.0
        _, pivots = _run_phase(tableau, basis, phase_one, n_total, tol, pivots)
        infeasibility = -float(phase_one[basis] @ tableau[:, -1])
        if infeasibility > tol.abs_tol * max(1.0, float(np.abs(b).max())):
            logger.debug(f"LP infeasible after {pivots} pivots (residual {infeasibility:.3e}).")
            return LpSolution(LpStatus.INFEASIBLE, np.full(n, np.nan), float("nan"), pivots)

        redundant = np.zeros(len(basis), dtype=bool)
        for row in range(len(basis)):
            if basis[row] >= first_art:
                candidates = np.flatnonzero(np.abs(tableau[row, :first_art]) > tol.pivot_tol)
                if candidates.size:
                    _pivot(tableau, basis, row, int(candidates[0]))
                    pivots += 1
                else:
                    redundant[row] = True
        tableau, basis = tableau[~redundant], basis[~redundant]

    # 3. Phase Two
    # --------------------------------------
    # Optimize the real objective over the non-artificial columns.
    phase_two = np.zeros(n_total)
    phase_two[:n] = c
    phase_two[n : 2 * n] = -c
    optimal, pivots = _run_phase(tableau, basis, phase_two, first_art, tol, pivots)

    # 4. Read Solution
    # --------------------------------------
    # Recover x = u - v and check the optimum against the original constraints.
    values = np.zeros(n_total)
    values[basis] = tableau[:, -1]
    point = values[:n] - values[n : 2 * n]
    if not optimal:
        logger.debug(f"LP unbounded after {pivots} pivots.")
        return LpSolution(LpStatus.UNBOUNDED, point, float("inf"), pivots)

    violation = float(np.max(A @ point - b)) if m else 0.0
    if violation > tol.abs_tol * max(1.0, float(np.abs(b).max())):
        raise NumericalFailure(
            "Simplex optimum violates its constraints.",
            diagnostics={"pivots": pivots, "violation": violation, "rows": m, "columns": n},
        )
    return LpSolution(LpStatus.OPTIMAL, point, float(c @ point), pivots)


class Inball(NamedTuple):
    center: Vector
    depth: float


def inball_depth(body: Shape, tol: Tolerances = DEFAULT_TOLERANCES) -> Inball:
    """
    Finds the deepest point of a polytope: maximize r subject to <a_i, c> + r |a_i| <= b_i.

    Unlike ``chebyshev_center`` the depth r is not restricted to be nonnegative, so for an
    empty polytope it is the (negative) amount by which the constraints must be relaxed.
    """
    polytope = to_hpolytope(body)
    norms = np.linalg.norm(polytope.normals, axis=1)
    dim = polytope.dim
    objective = np.zeros(dim + 1)
    objective[dim] = 1.0
    solution = solve_lp(LpProblem(objective, np.column_stack([polytope.normals, norms]), polytope.offsets), tol)
    if solution.status is LpStatus.UNBOUNDED:
        raise Unbounded("Polytope contains arbitrarily large balls.")
    return Inball(solution.point[:dim], float(solution.point[dim]))


def chebyshev_center(body: Shape, tol: Tolerances = DEFAULT_TOLERANCES) -> Ball:
    """
    Computes the largest inscribed ball of a polytope as a linear program.

    For bodies whose centers are not unique (a rectangle has a segment of them) the simplex
    vertex reached deterministically is returned; only the radius is canonical.

    Raises:
        DegenerateShape: If the polytope has empty interior.
        Unbounded: If the polytope is unbounded.
    """
    if isinstance(body, Ball):
        return body
    center, depth = inball_depth(body, tol)
    if depth <= tol.abs_tol:
        raise DegenerateShape(f"Polytope has empty interior (inball depth {depth:.3e}).")
    logger.debug(f"Chebyshev center {center} with radius {depth:.12g}")
    return Ball(center, depth)


def erosion(body: Shape, shape: Shape) -> HPolytope:
    """
    Returns the set {t : shape + t inside body} as an H-polytope.

    It has the normals of ``body`` and offsets b_i - h_shape(a_i); it may be empty.
    """
    polytope = to_hpolytope(body)
    if polytope.dim != shape.dim:
        raise DimensionMismatch(f"Cannot erode a {polytope.dim}-D body by a {shape.dim}-D shape.")
    return HPolytope(polytope.normals, polytope.offsets - support(shape, polytope.normals), check=False)


class Width(NamedTuple):
    value: float
    direction: Vector


def _widths(body: Shape, directions: np.ndarray) -> np.ndarray:
    return support(body, directions) + support(body, -directions)


def _sphere_directions(count: int) -> np.ndarray:
    # Fibonacci lattice on the upper hemisphere (width is even in the direction)
    index = np.arange(count) + 0.5
    z = index / count
    phi = np.pi * (1.0 + 5.0**0.5) * index
    ring = np.sqrt(1.0 - z**2)
    return np.column_stack([ring * np.cos(phi), ring * np.sin(phi), z])


def min_width(body: Shape, approximate: bool = False, tol: Tolerances = DEFAULT_TOLERANCES) -> Width:
    """
    Computes the smallest width of a convex body and a direction attaining it.

    In the plane the minimum is attained at an edge normal (rotating calipers), so the
    search over edge normals is exact. For 3D polytopes the candidates are the facet normals
    and the cross products of all edge pairs, which is exact for polytopes because the
    minimal width is attained at a facet-vertex or an edge-edge antipodal pair. With
    ``approximate=True`` the 3D search samples a sphere lattice and refines the best
    direction locally instead; the result is an upper bound only.

    Raises:
        DegenerateShape: If the body has no interior.
    """
    if isinstance(body, Ball):
        direction = np.zeros(body.dim)
        direction[0] = 1.0
        return Width(2.0 * body.radius, direction)
    if isinstance(body, HPolytope):
        body = hpolytope_vertices(body)

    if isinstance(body, ConvexPolygon):
        if body.is_degenerate:
            raise DegenerateShape("Smallest width of a point or segment is zero by definition.")
        normals = body.edge_normals
        candidates = normals / np.linalg.norm(normals, axis=1)[:, None]
    elif approximate:
        return _approximate_width3(body)
    else:
        table = edge_table(body)
        real = table.exterior_angles > tol.normal_tol
        edges = body.vertices[table.edges[real, 1]] - body.vertices[table.edges[real, 0]]
        crosses = np.cross(edges[:, None, :], edges[None, :, :]).reshape(-1, 3)
        norms = np.linalg.norm(crosses, axis=1)
        crosses = crosses[norms > tol.rel_tol * max(1.0, float(norms.max(initial=0.0)))]
        crosses /= np.linalg.norm(crosses, axis=1)[:, None]
        candidates = np.concatenate([body.normals, crosses])

    widths = _widths(body, candidates)
    best = int(np.argmin(widths))
    return Width(float(widths[best]), candidates[best])


def _approximate_width3(body: VPolytope3, samples: int = 4096) -> Width:
    directions = _sphere_directions(samples)
    widths = _widths(body, directions)
    seed = directions[int(np.argmin(widths))]

    def width_at(angles: np.ndarray) -> float:
        theta, phi = angles
        direction = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
        return float(_widths(body, direction[None, :])[0])

    start = np.array([np.arccos(np.clip(seed[2], -1.0, 1.0)), np.arctan2(seed[1], seed[0])])
    result = minimize(width_at, start, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12})
    theta, phi = result.x
    direction = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    logger.warning("3D width from sphere sampling is approximate (an upper bound).")
    return Width(float(min(result.fun, widths.min())), direction)


def max_scale_at(
    shape: Shape, body: Shape, rho: Rotation, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[float, Vector]:
    """
    Finds the largest alpha such that alpha * rho(shape) fits in ``body`` by translation.

    One LP in (t, alpha): maximize alpha subject to <a_i, t> + alpha * h(a_i) <= b_i and
    alpha >= 0, where h is the support function of the rotated shape.

    Returns:
        tuple[float, Vector]: (alpha, translation placing alpha * rho(shape)).

    Raises:
        DegenerateShape: If the shape is a single point (every scale fits).
    """
    polytope = to_hpolytope(body)
    heights = support(rotate(shape, rho), polytope.normals)
    dim = polytope.dim
    normals = np.column_stack([polytope.normals, heights])
    floor = np.zeros((1, dim + 1))
    floor[0, dim] = -1.0
    objective = np.zeros(dim + 1)
    objective[dim] = 1.0
    solution = solve_lp(
        LpProblem(objective, np.vstack([normals, floor]), np.append(polytope.offsets, 0.0)), tol
    )
    if solution.status is LpStatus.UNBOUNDED:
        raise DegenerateShape("A single point fits at every scale.")
    if solution.status is LpStatus.INFEASIBLE:
        raise DegenerateShape("Containing body is empty.")
    return float(solution.point[dim]), solution.point[:dim]
