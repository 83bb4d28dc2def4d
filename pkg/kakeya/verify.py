import hashlib
import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import pandas as pd
from loguru import logger
from tabulate import tabulate

from kakeya.config import DEFAULT_TOLERANCES, HULL_RETRIES, Tolerances, default_seed
from kakeya.errors import DegenerateShape, InvalidParameter, UnknownScenario
from kakeya.fit_oracle import fits_translated, max_scale, sweep_fit
from kakeya.geom_core import (
    Ball,
    ConvexPolygon,
    Rotation,
    Shape,
    VPolytope3,
    area2,
    contains,
    hull3,
    perimeter2,
    rotate,
    scale,
    to_hpolytope,
    translate,
    volume3,
)
from kakeya.inball_lp import chebyshev_center, erosion, max_scale_at, min_width
from kakeya.minkowski import (
    BALL_VOLUME_3,
    halfway,
    interpolate,
    measure,
    minkowski_sum2,
    minkowski_sum2_hull,
    minkowski_sum3,
    steiner_coeffs3,
)
from kakeya.mu_algebra import (
    MuVector,
    inner_mu_polygon,
    mu_average_poly,
    mu_average_vec,
    mu_directions,
    mu_rotate,
    mu_rotation,
    phi,
    polygon_from_phi,
)
from kakeya.shapes import ball_polytope3, equilateral_triangle, reuleaux_triangle, segment, square, unit_cube, unit_square
from kakeya.utils import trial_rng

LAMBDA_GRID = np.linspace(0.0, 1.0, 11)


@dataclass
class ExperimentReport:
    """
    Outcome of one experiment suite or scenario.

    Every entry of ``details`` is one trial: an input digest, the measured quantities, and
    ``checks`` mapping each asserted inequality to its violation (how far the claim fails;
    <= 0 when it holds) and tolerance. A trial fails when some check's violation exceeds
    its tolerance; trials whose preconditions fail are marked ``skipped`` and never count.
    """

    name: str
    trials: int
    failures: int
    worst_violation: float
    details: list[dict] = field(default_factory=list)
    skipped: int = 0
    seed: int | None = None
    summary: dict = field(default_factory=dict)
    figure: list = field(default_factory=list, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "failures": self.failures,
            "skipped": self.skipped,
            "worst_violation": self.worst_violation,
            "seed": self.seed,
            "summary": self.summary,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, document: dict) -> "ExperimentReport":
        return cls(
            name=document["name"],
            trials=document["trials"],
            failures=document["failures"],
            worst_violation=document["worst_violation"],
            details=document.get("details", []),
            skipped=document.get("skipped", 0),
            seed=document.get("seed"),
            summary=document.get("summary", {}),
        )

    def to_frame(self) -> pd.DataFrame:
        """One row per trial, with nested checks flattened into ``checks.<name>.<field>`` columns."""
        return pd.json_normalize(self.details)

    def __str__(self) -> str:
        rows = [
            ["Experiment", self.name],
            ["Trials", self.trials],
            ["Skipped", self.skipped],
            ["Failures", self.failures],
            ["Worst violation", f"{self.worst_violation:.3e}"],
            ["Status", "PASS" if self.passed else "FAIL"],
        ]
        rows += [[key, value] for key, value in self.summary.items()]
        return tabulate(rows, headers=["Field", "Value"])


def _digest(*shapes) -> str:
    hasher = hashlib.sha1()
    for shape in shapes:
        if isinstance(shape, Ball):
            hasher.update(np.append(shape.center, shape.radius).tobytes())
        elif isinstance(shape, MuVector):
            hasher.update(shape.lengths.tobytes())
        else:
            hasher.update(np.ascontiguousarray(shape.vertices).tobytes())
    return hasher.hexdigest()[:16]


def _clean(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def _trial(index: int, digest: str, checks: dict[str, tuple[float, float]], **measured) -> dict:
    """Builds one trial record; ``checks`` maps a name to (violation, tolerance)."""
    record = {"trial": index, "digest": digest}
    record.update({key: _clean(value) for key, value in measured.items()})
    record["checks"] = {
        name: {"violation": float(violation), "tolerance": float(tolerance)}
        for name, (violation, tolerance) in checks.items()
    }
    record["violation"] = max((float(v) for v, _ in checks.values()), default=0.0)
    record["failed"] = any(v > t for v, t in checks.values())
    return record


def _skipped(index: int, digest: str, reason: str) -> dict:
    return {"trial": index, "digest": digest, "skipped": True, "reason": reason, "failed": False}


def _report(name: str, records: list[dict], seed: int | None = None, summary: dict | None = None) -> ExperimentReport:
    checked = [r for r in records if not r.get("skipped")]
    report = ExperimentReport(
        name=name,
        trials=len(records),
        failures=sum(1 for r in checked if r["failed"]),
        worst_violation=max((r["violation"] for r in checked), default=0.0),
        details=records,
        skipped=len(records) - len(checked),
        seed=seed,
        summary={key: _clean(value) for key, value in (summary or {}).items()},
    )
    log = logger.warning if report.failures else logger.debug
    log(f"{name}: {report.failures}/{report.trials} failures, worst violation {report.worst_violation:.3e}")
    return report


def _subseed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**63 - 1))


def random_convex_polygon(n: int, seed: int) -> ConvexPolygon:
    """
    Hull of ``n`` points drawn uniformly from the unit disk, reproducible from ``seed``.

    Raises:
        InvalidParameter: If n < 3.
        DegenerateShape: If every one of the retries produced a flat hull.
    """
    if n < 3:
        raise InvalidParameter(f"A random polygon needs n >= 3 points, got {n}.")
    for attempt in range(HULL_RETRIES):
        rng = trial_rng(seed, attempt)
        radius = np.sqrt(rng.random(n))
        angle = 2.0 * np.pi * rng.random(n)
        polygon = ConvexPolygon.hull(np.column_stack([radius * np.cos(angle), radius * np.sin(angle)]))
        if not polygon.is_degenerate:
            return polygon
        logger.warning(f"Random hull of {n} points is flat (seed {seed}, attempt {attempt}), retrying.")
    raise DegenerateShape(f"No full-dimensional hull after {HULL_RETRIES} attempts.")


def random_convex_polytope3(n: int, seed: int) -> VPolytope3:
    """Hull of ``n`` points drawn uniformly from the unit ball, reproducible from ``seed``."""
    if n < 4:
        raise InvalidParameter(f"A random polytope needs n >= 4 points, got {n}.")
    for attempt in range(HULL_RETRIES):
        rng = trial_rng(seed, attempt)
        directions = rng.normal(size=(n, 3))
        directions /= np.linalg.norm(directions, axis=1)[:, None]
        try:
            return hull3(directions * np.cbrt(rng.random(n))[:, None])
        except DegenerateShape:
            logger.warning(f"Random 3D hull of {n} points is flat (seed {seed}, attempt {attempt}), retrying.")
    raise DegenerateShape(f"No full-dimensional 3D hull after {HULL_RETRIES} attempts.")


def random_mu_vector(mu: int, rng: np.random.Generator, sparsity: float = 0.25) -> MuVector:
    """
    Random closed mu-vector: random lengths, some zeroed, closed up by adding the two
    K_mu directions whose cone contains the missing edge.
    """
    lengths = rng.uniform(0.05, 1.0, mu) * (rng.random(mu) >= sparsity)
    directions = mu_directions(mu)
    gap = -(lengths @ directions)
    if np.linalg.norm(gap) > 0:
        angle = np.mod(np.arctan2(gap[1], gap[0]) - np.pi / 2.0, 2.0 * np.pi)
        k = int(np.floor(angle / (2.0 * np.pi / mu))) % mu
        j = (k + 1) % mu
        coefficients = np.linalg.solve(np.column_stack([directions[k], directions[j]]), gap)
        lengths[k] += max(coefficients[0], 0.0)
        lengths[j] += max(coefficients[1], 0.0)
    return MuVector(mu, lengths)


def _random_polygon(rng: np.random.Generator, low: int = 3, high: int = 24) -> ConvexPolygon:
    return random_convex_polygon(int(rng.integers(low, high + 1)), _subseed(rng))


def _random_angle(rng: np.random.Generator) -> Rotation:
    return Rotation.planar(float(rng.uniform(0.0, 2.0 * np.pi)))


def _random_body(dim: int, rng: np.random.Generator) -> Shape:
    if dim == 2:
        return _random_polygon(rng)
    return random_convex_polytope3(int(rng.integers(8, 21)), _subseed(rng))


def _random_rotation(dim: int, rng: np.random.Generator) -> Rotation:
    if dim == 2:
        return _random_angle(rng)
    return Rotation.from_quaternion(rng.normal(size=4))


def _concavity_violation(values: np.ndarray) -> float:
    """Largest amount by which a grid value falls below the chord of its neighbours."""
    return float(np.max(0.5 * (values[:-2] + values[2:]) - values[1:-1]))


def check_perimeter_additivity(
    trials: int = 1000, seed: int | None = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """peri(P + R) = peri(P) + peri(R) on random polygon pairs, to rel_tol relative."""
    seed = default_seed() if seed is None else seed
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        first, second = _random_polygon(rng), _random_polygon(rng)
        total = perimeter2(minkowski_sum2(first, second, tol))
        gap = abs(total - perimeter2(first) - perimeter2(second)) / total
        records.append(
            _trial(index, _digest(first, second), {"additivity": (gap, tol.rel_tol)}, perimeter_sum=total)
        )
    return _report("perimeter-additivity", records, seed)


def check_minkowski_oracle(
    trials: int = 500, seed: int | None = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """Edge-merge sums have the same vertices as the hull of all pairwise vertex sums."""
    seed = default_seed() if seed is None else seed
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        first = rotate(_random_polygon(rng), _random_angle(rng))
        second = _random_polygon(rng)
        merged = minkowski_sum2(first, second, tol)
        oracle = minkowski_sum2_hull(first, second)
        gaps = np.linalg.norm(merged.vertices[:, None, :] - oracle.vertices[None, :, :], axis=2)
        # both ways, so a vertex missing on either side shows up
        distance = float(max(gaps.min(axis=1).max(), gaps.min(axis=0).max()))
        records.append(
            _trial(
                index,
                _digest(first, second),
                {"vertex_distance": (distance, tol.abs_tol)},
                vertices=len(merged),
                oracle_vertices=len(oracle),
            )
        )
    return _report("minkowski-oracle", records, seed)


def check_erosion_oracle(
    trials: int = 10, seed: int | None = None, samples: int = 1000, tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """
    t lies in erosion(Q, P) exactly when P + t fits in Q, with matching margins, on
    ``samples`` random translations per (Q, P) pair.
    """
    seed = default_seed() if seed is None else seed
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        body = _random_polygon(rng)
        shape = scale(_random_polygon(rng), float(rng.uniform(0.1, 0.5)))
        normals, offsets = erosion(body, shape).normalized()
        lo, hi = body.vertices.min(axis=0) - 0.2, body.vertices.max(axis=0) + 0.2
        translations = rng.uniform(lo, hi, size=(samples, 2))
        eroded_margins = (offsets[:, None] - normals @ translations.T).min(axis=0)
        direct_margins = np.array([contains(body, translate(shape, t), tol).margin for t in translations])
        # samples within abs_tol of the boundary may land on either side
        decided = np.abs(direct_margins) > tol.abs_tol
        mismatches = int(np.sum(decided & ((eroded_margins >= 0) != (direct_margins >= 0))))
        gap = float(np.abs(eroded_margins - direct_margins).max())
        records.append(
            _trial(
                index,
                _digest(body, shape),
                {"margin_gap": (gap, tol.abs_tol), "membership": (mismatches, 0)},
                samples=samples,
                inside=int(np.sum(eroded_margins >= 0)),
                mismatches=mismatches,
            )
        )
    return _report("erosion-oracle", records, seed)


def check_interpolation_fit(
    trials: int = 1000,
    seed: int | None = None,
    orientations: int = 16,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ExperimentReport:
    """
    Interpolations of fitting shapes fit.

    Two claims per trial on a random container Q: if P0 and P1 lie in Q then every P_lambda
    does; and if P0, P1 fit Q at a rotation rho with translations t0, t1, then rho(P_lambda)
    fits with t = (1 - lambda) t0 + lambda t1. The second pair is scaled into K(Q) over an
    orientation grid and rho is drawn from that grid.
    """
    seed = default_seed() if seed is None else seed
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        body = scale(_random_polygon(rng), 2.0)
        identity = Rotation.planar(0.0)

        placed = []
        for shape in (_random_polygon(rng), _random_polygon(rng)):
            alpha, _ = max_scale_at(shape, body, identity, tol)
            shrunk = scale(shape, 0.999 * alpha)
            placed.append(translate(shrunk, fits_translated(shrunk, body, identity, tol).translation))
        inside = min(contains(body, interpolate(placed[0], placed[1], lam, tol), tol).margin for lam in LAMBDA_GRID)

        members = []
        for shape in (_random_polygon(rng), _random_polygon(rng)):
            members.append(scale(shape, 0.999 * max_scale(shape, body, orientations, method="lp", tol=tol)))
        rho = Rotation.planar(2.0 * np.pi * int(rng.integers(orientations)) / orientations)
        t0 = fits_translated(members[0], body, rho, tol).translation
        t1 = fits_translated(members[1], body, rho, tol).translation
        rotated_margin = min(
            contains(
                body,
                translate(rotate(interpolate(members[0], members[1], lam, tol), rho), (1.0 - lam) * t0 + lam * t1),
                tol,
            ).margin
            for lam in LAMBDA_GRID
        )
        records.append(
            _trial(
                index,
                _digest(body, *placed, *members),
                {"contained": (-inside, tol.abs_tol), "rotated_fit": (-rotated_margin, tol.abs_tol)},
                contained_margin=inside,
                rotated_margin=rotated_margin,
                angle=rho.angle,
            )
        )
    return _report("interpolation-fit", records, seed)


def check_halfway_gain(
    trials: int = 500, seed: int | None = None, w: int = 0, d: int = 2, tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """
    Halfway gain and Brunn-Minkowski concavity for psi_w in dimension d.

    Per trial: a random pair with equal psi_w must gain at the midpoint (strictly, by
    strict_gap, since a randomly rotated pair is never homothetic), f(lambda) =
    psi_w(P_lambda)^(1/(d - w)) must be midpoint concave on the 11-point grid, and a
    homothetic pair must give a linear f and no midpoint gain.

    Raises:
        InvalidParameter: Unless (w, d) is (0, 2), (0, 3) or (1, 3), i.e. d >= 2 + w.
    """
    if (w, d) not in ((0, 2), (0, 3), (1, 3)):
        raise InvalidParameter(f"Halfway gain needs d >= 2 + w with d in {{2, 3}}, got w = {w}, d = {d}.")
    seed = default_seed() if seed is None else seed
    power = 1.0 / (d - w)
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        first = _random_body(d, rng)
        second = rotate(_random_body(d, rng), _random_rotation(d, rng))
        common = measure(first, w)
        second = scale(second, (common / measure(second, w)) ** power)
        profile = np.array([measure(interpolate(first, second, lam, tol), w) ** power for lam in LAMBDA_GRID])
        gain = profile[5] ** (d - w) - common

        factor = float(rng.uniform(0.5, 2.0))
        offset = rng.normal(size=d)
        homothet = translate(scale(first, factor), offset)
        linear = np.array([measure(interpolate(first, homothet, lam, tol), w) ** power for lam in LAMBDA_GRID])
        chord = (1.0 - LAMBDA_GRID) * linear[0] + LAMBDA_GRID * linear[-1]
        translate_gain = measure(interpolate(first, translate(first, offset), 0.5, tol), w) - common

        records.append(
            _trial(
                index,
                _digest(first, second),
                {
                    "strict_gain": (tol.strict_gap - gain, 0.0),
                    "concavity": (_concavity_violation(profile), tol.abs_tol),
                    "homothet_concavity": (_concavity_violation(linear), tol.abs_tol),
                    "homothet_linearity": (float(np.abs(linear - chord).max()), tol.linear_tol),
                    "homothet_gain": (abs(translate_gain), tol.abs_tol),
                },
                common=common,
                midpoint_gain=gain,
            )
        )
    label = {(0, 2): "area", (0, 3): "volume", (1, 3): "surface"}[(w, d)]
    return _report(f"halfway-gain-{label}", records, seed, {"w": w, "d": d})


def _theorem_record(index: int, name: str, candidate: Shape, body: Shape, n: int, tol: Tolerances) -> dict:
    sweep = sweep_fit(candidate, body, n, tol=tol)
    digest = _digest(candidate)
    if not sweep.fits_all:
        return _skipped(index, digest, f"{name} fails the sweep (worst margin {sweep.worst_margin:.3e})")
    inball = chebyshev_center(body, tol)
    disk = Ball(inball.center, inball.radius)
    is_ball = isinstance(candidate, Ball)
    strict = 0.0 if is_ball else tol.strict_gap
    checks = {"volume": (measure(candidate, 0) - measure(disk, 0) + strict, tol.abs_tol)}
    if candidate.dim == 2:
        checks["perimeter"] = (measure(candidate, 1) - measure(disk, 1), tol.abs_tol)
    else:
        checks["surface"] = (measure(candidate, 1) - measure(disk, 1) + strict, tol.abs_tol)
    return _trial(
        index,
        digest,
        checks,
        candidate=name,
        measure=measure(candidate, 0),
        boundary=measure(candidate, 1),
        inball_measure=measure(disk, 0),
        inball_boundary=measure(disk, 1),
        worst_margin=sweep.worst_margin,
    )


def check_main_theorem(
    body: Shape, candidates: dict[str, Shape], n: int = 720, tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """
    Shapes placeable in every orientation are no larger than the inscribed ball.

    Each candidate must pass a sweep of ``n`` orientations (otherwise it is skipped as a
    precondition failure). Non-ball candidates must have area (volume, and in 3D surface)
    strictly below the inball's; in the plane the perimeter may tie.
    """
    records = [
        _theorem_record(index, name, candidate, body, n, tol) for index, (name, candidate) in enumerate(candidates.items())
    ]
    return _report("main-theorem", records)


def unit_square_candidates() -> dict[str, Shape]:
    return {
        "disk": Ball([0.5, 0.5], 0.5),
        "reuleaux": reuleaux_triangle(1.0),
        "square-rotor": square(1.0 / np.sqrt(2.0)),
    }


def check_main_theorem_random(
    trials: int = 1000,
    seed: int | None = None,
    body: Shape | None = None,
    orientations: int = 256,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ExperimentReport:
    """
    Random members of K(Q) (random polygons shrunk to 0.999 of their max scale) never beat
    the inscribed disk: area <= pi r^2 + strict_gap and perimeter <= 2 pi r + strict_gap.
    """
    seed = default_seed() if seed is None else seed
    body = body if body is not None else unit_square()
    radius = chebyshev_center(body, tol).radius
    disk_area, disk_perimeter = np.pi * radius**2, 2.0 * np.pi * radius
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        shape = _random_polygon(rng)
        member = scale(shape, 0.999 * max_scale(shape, body, orientations, method="lp", tol=tol))
        area, perimeter = area2(member), perimeter2(member)
        records.append(
            _trial(
                index,
                _digest(member),
                {"area": (area - disk_area, tol.strict_gap), "perimeter": (perimeter - disk_perimeter, tol.strict_gap)},
                area=area,
                perimeter=perimeter,
            )
        )
    return _report("main-theorem-random", records, seed, {"inball_radius": radius})


def check_phi_algebra(
    trials: int = 1000, seed: int | None = None, mus=(4, 8, 16, 64), tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """
    Homomorphism, scaling and cyclic-shift laws of phi, and the constant mu-average vector,
    each to rel_tol relative to the largest perimeter involved.
    """
    seed = default_seed() if seed is None else seed
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        mu = int(mus[index % len(mus)])
        first, second = random_mu_vector(mu, rng), random_mu_vector(mu, rng)
        polygon = translate(polygon_from_phi(first, tol), rng.normal(size=2))
        other = polygon_from_phi(second, tol)
        alpha = float(rng.uniform(0.1, 3.0))
        exact = tol.rel_tol * max(1.0, first.perimeter + second.perimeter, alpha * first.perimeter)

        summed = phi(minkowski_sum2(polygon, other, tol), mu, tol)
        scaled = phi(scale(polygon, alpha), mu, tol)
        shifted = phi(rotate(polygon, mu_rotation(mu)), mu, tol)
        average = mu_average_vec(first)
        records.append(
            _trial(
                index,
                _digest(first, second),
                {
                    "homomorphism": (float(np.abs(summed.lengths - (first + second).lengths).max()), exact),
                    "scaling": (float(np.abs(scaled.lengths - (alpha * first).lengths).max()), exact),
                    "cyclic_shift": (float(np.abs(shifted.lengths - mu_rotate(first).lengths).max()), exact),
                    "average_constant": (float(np.ptp(average.lengths)), 0.0),
                    "average_sum": (abs(average.lengths[0] - first.perimeter / mu), exact),
                },
                mu=mu,
                perimeter=first.perimeter,
            )
        )
    return _report("phi-algebra", records, seed)


def check_mu_average_perimeter(
    trials: int = 100, seed: int | None = None, mus=(4, 8, 16, 64), tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """
    mu-averages keep the perimeter (to 1e3 * rel_tol relative, i.e. 1e-9 by default); the
    mu-average of a mu-polygon is the regular mu-gon of its averaged vector.
    """
    seed = default_seed() if seed is None else seed
    allowance = 1e3 * tol.rel_tol
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        mu = int(mus[index % len(mus)])
        polygon = _random_polygon(rng)
        averaged = mu_average_poly(polygon, mu, tol=tol)
        drift = abs(perimeter2(averaged) - perimeter2(polygon)) / perimeter2(polygon)

        vector = random_mu_vector(mu, rng)
        regular = mu_average_poly(polygon_from_phi(vector, tol), mu, tol=tol)
        expected = polygon_from_phi(mu_average_vec(vector), tol)
        regular_gap = float(np.abs(phi(regular, mu, tol).lengths - mu_average_vec(vector).lengths).max())
        same = regular.equals(expected, atol=1e-9, up_to_translation=True)
        records.append(
            _trial(
                index,
                _digest(polygon, vector),
                {
                    "perimeter": (drift, allowance),
                    "regular_vector": (regular_gap, tol.abs_tol),
                    "regular_shape": (0.0 if same else 1.0, 0.0),
                },
                mu=mu,
                vertices=len(averaged),
            )
        )
    return _report("mu-average-perimeter", records, seed)


def check_mu_average_fit(
    trials: int = 100, seed: int | None = None, mus=(8, 16, 32), tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """
    If P fits Q at every rotation rho^k, rho = 2 pi / mu, its mu-average fits Q unrotated.
    """
    seed = default_seed() if seed is None else seed
    identity = Rotation.planar(0.0)
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        mu = int(mus[index % len(mus)])
        body = scale(_random_polygon(rng), 2.0)
        shape = _random_polygon(rng)
        member = scale(shape, 0.999 * max_scale(shape, body, mu, method="lp", tol=tol))
        averaged = mu_average_poly(member, mu, tol=tol)
        report = fits_translated(averaged, body, identity, tol)
        records.append(
            _trial(
                index,
                _digest(body, member),
                {"average_fits": (-report.margin, tol.abs_tol)},
                mu=mu,
                margin=report.margin,
            )
        )
    return _report("mu-average-fit", records, seed)


def _cube_steiner_volume_mc(r: float, samples: int, rng: np.random.Generator, chunk: int = 200_000) -> float:
    # points of [-r, 1 + r]^3 within distance r of the unit cube
    hits, drawn = 0, 0
    while drawn < samples:
        size = min(chunk, samples - drawn)
        points = rng.uniform(-r, 1.0 + r, size=(size, 3))
        outside = np.maximum(np.abs(points - 0.5) - 0.5, 0.0)
        hits += int(np.sum(np.einsum("ij,ij->i", outside, outside) <= r * r))
        drawn += size
    return hits / samples * (1.0 + 2.0 * r) ** 3


def check_steiner(
    trials: int = 20,
    seed: int | None = None,
    samples: int = 1_000_000,
    ball_points: int = 400,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ExperimentReport:
    """
    Steiner coefficients against independent references.

    Trial 0 is the unit cube: coefficients (1, 6, 3 pi, 4 pi / 3) and a Monte Carlo volume
    of cube + rB at r = 0.1 and 0.5 within 0.5 %. The other trials are random polytopes K:
    with B' a polytope inscribed in the unit ball with inradius c, K + rcB is inside
    K + rB' which is inside K + rB, so vol(K + rB') must lie between the Steiner polynomial
    at rc and at r.
    """
    seed = default_seed() if seed is None else seed
    records = []

    rng = trial_rng(seed, 0)
    cube = unit_cube()
    coeffs = steiner_coeffs3(cube)
    checks = {
        "v": (abs(coeffs.v - 1.0), tol.rel_tol),
        "s": (abs(coeffs.s - 6.0) / 6.0, tol.rel_tol),
        "m": (abs(coeffs.m - 3.0 * np.pi), tol.abs_tol),
        "b": (abs(coeffs.b - BALL_VOLUME_3), tol.rel_tol),
    }
    estimates = {}
    for r in (0.1, 0.5):
        estimate = _cube_steiner_volume_mc(r, samples, rng)
        estimates[f"mc_volume_r{r}"] = estimate
        checks[f"monte_carlo_r{r}"] = (abs(estimate - coeffs.volume_at(r)) / coeffs.volume_at(r), 5e-3)
    records.append(_trial(0, _digest(cube), checks, v=coeffs.v, s=coeffs.s, m=coeffs.m, **estimates))

    ball = ball_polytope3(1.0, ball_points)
    inradius = float(ball.offsets.min())
    for index in range(1, trials):
        rng = trial_rng(seed, index)
        body = random_convex_polytope3(int(rng.integers(6, 16)), _subseed(rng))
        coeffs = steiner_coeffs3(body)
        r = float(rng.uniform(0.05, 0.5))
        volume = volume3(minkowski_sum3(body, scale(ball, r)))
        upper, lower = coeffs.volume_at(r), coeffs.volume_at(r * inradius)
        records.append(
            _trial(
                index,
                _digest(body),
                {"below_steiner": (volume - upper, tol.abs_tol), "above_inner_steiner": (lower - volume, tol.abs_tol)},
                r=r,
                volume=volume,
                relative_gap=(upper - volume) / upper,
            )
        )
    return _report("steiner", records, seed, {"ball_points": ball_points, "ball_inradius": inradius})


def check_chebyshev_optimality(
    trials: int = 50, seed: int | None = None, samples: int = 1000, tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """
    The LP inball beats every sampled center, scales with the body, and is no wider than
    the smallest width.
    """
    seed = default_seed() if seed is None else seed
    records = []
    for index in range(trials):
        rng = trial_rng(seed, index)
        body = _random_polygon(rng)
        inball = chebyshev_center(body, tol)
        normals, offsets = to_hpolytope(body).normalized()
        weights = rng.dirichlet(np.ones(len(body)), size=samples)
        centers = weights @ body.vertices
        radii = (offsets[:, None] - normals @ centers.T).min(axis=0)
        alpha = float(rng.uniform(0.2, 5.0))
        scaled = chebyshev_center(scale(body, alpha), tol)
        width = min_width(body, tol=tol).value
        records.append(
            _trial(
                index,
                _digest(body),
                {
                    "optimality": (float(radii.max()) - inball.radius, tol.abs_tol),
                    "scaling": (abs(scaled.radius - alpha * inball.radius), tol.abs_tol * max(1.0, alpha)),
                    "width": (2.0 * inball.radius - width, tol.abs_tol),
                },
                radius=inball.radius,
                width=width,
            )
        )
    return _report("chebyshev-optimality", records, seed)


def _scenario_square_reuleaux(tol: Tolerances) -> ExperimentReport:
    body = unit_square()
    disk = Ball([0.5, 0.5], 0.5)
    reuleaux = reuleaux_triangle(1.0)
    disk_sweep = sweep_fit(disk, body, 720, certify=True, tol=tol)
    reuleaux_sweep = sweep_fit(reuleaux, body, 720, tol=tol)
    # a tight fit has no clearance to certify; 1% of slack is enough at 720 samples
    shrunk_sweep = sweep_fit(scale(reuleaux, 0.99), body, 720, certify=True, tol=tol)

    area_gap = measure(disk, 0) - area2(reuleaux)
    expected_gap = np.pi / 4.0 - (np.pi - np.sqrt(3.0)) / 2.0
    checks = {
        "reuleaux_perimeter": (abs(perimeter2(reuleaux) - np.pi), 1e-3),
        "disk_perimeter": (abs(measure(disk, 1) - np.pi), 1e-6),
        "area_gap": (abs(area_gap - expected_gap), 1e-3),
        "disk_sweep": (-disk_sweep.worst_margin, tol.strict_gap),
        "reuleaux_sweep": (-reuleaux_sweep.worst_margin, tol.strict_gap),
        "disk_certified": (0.0 if disk_sweep.certified else 1.0, 0.0),
        "shrunk_reuleaux_certified": (0.0 if shrunk_sweep.certified else 1.0, 0.0),
    }
    record = _trial(
        0,
        _digest(body, reuleaux),
        checks,
        reuleaux_perimeter=perimeter2(reuleaux),
        reuleaux_area=area2(reuleaux),
        disk_area=measure(disk, 0),
        area_gap=area_gap,
    )
    report = _report(
        "square-reuleaux",
        [record],
        summary={"area_gap": area_gap, "reuleaux_worst_margin": reuleaux_sweep.worst_margin},
    )
    placed = translate(rotate(reuleaux, reuleaux_sweep.worst_rotation), reuleaux_sweep.worst_translation)
    report.figure = [("Q", body), ("P", placed), ("inball", disk)]
    return report


def _scenario_triangle_width(tol: Tolerances) -> ExperimentReport:
    body = equilateral_triangle(1.0)
    inball = chebyshev_center(body, tol)
    width = min_width(body, tol=tol)
    ratio = width.value / (2.0 * inball.radius)
    needle = max_scale(segment(1.0), body, 720, method="lp", tol=tol)
    record = _trial(
        0,
        _digest(body),
        {
            "ratio": (abs(ratio - 1.5), tol.abs_tol),
            "inradius": (abs(inball.radius - 1.0 / (2.0 * np.sqrt(3.0))), tol.abs_tol),
            "needle": (abs(needle - np.sqrt(3.0) / 2.0), 1e-3),
        },
        width=width.value,
        inball_radius=inball.radius,
        ratio=ratio,
        needle=needle,
    )
    report = _report("triangle-width", [record], summary={"ratio": ratio, "needle": needle})
    direction = np.array([-width.direction[1], width.direction[0]])
    report.figure = [
        ("Q", body),
        ("P", ConvexPolygon([inball.center - 0.5 * needle * direction, inball.center + 0.5 * needle * direction])),
        ("inball", inball),
    ]
    return report


def _scenario_square_rotor(tol: Tolerances) -> ExperimentReport:
    body = unit_square()
    rotor = unit_square()
    alpha = max_scale(rotor, body, 720, method="lp", tol=tol)
    sweep = sweep_fit(scale(rotor, alpha), body, 720, tol=tol)
    record = _trial(
        0,
        _digest(rotor),
        {"scale": (abs(alpha - 1.0 / np.sqrt(2.0)), 1e-3), "sweep": (-sweep.worst_margin, tol.abs_tol)},
        scale=alpha,
        worst_angle=sweep.worst_angle,
    )
    report = _report("square-rotor-scale", [record], summary={"scale": alpha})
    placed = translate(rotate(scale(rotor, alpha), sweep.worst_rotation), sweep.worst_translation)
    report.figure = [("Q", body), ("P", placed), ("inball", chebyshev_center(body, tol))]
    return report


def _scenario_mu_average(tol: Tolerances, mu: int = 16) -> ExperimentReport:
    body = unit_square()
    shape = random_convex_polygon(9, default_seed())
    member = scale(shape, 0.999 * max_scale(shape, body, mu, method="lp", tol=tol))
    averaged = mu_average_poly(member, mu, tol=tol)
    fit = fits_translated(averaged, body, Rotation.planar(0.0), tol)
    inner = inner_mu_polygon(member, mu, tol)
    regular = mu_average_poly(inner, mu, tol=tol)
    regular_vector = phi(regular, mu, tol)
    inball = chebyshev_center(body, tol)
    record = _trial(
        0,
        _digest(member),
        {
            "perimeter": (abs(perimeter2(averaged) - perimeter2(member)) / perimeter2(member), 1e3 * tol.rel_tol),
            "average_fits": (-fit.margin, tol.abs_tol),
            "inner_inside": (-contains(member, inner, tol).margin, tol.abs_tol),
            "regular": (float(np.ptp(regular_vector.lengths)), tol.abs_tol),
            "perimeter_bound": (perimeter2(member) - 2.0 * np.pi * inball.radius, tol.strict_gap),
        },
        mu=mu,
        perimeter=perimeter2(member),
        average_perimeter=perimeter2(averaged),
        inner_perimeter=perimeter2(inner),
    )
    report = _report("mu-average-demo", [record], summary={"mu": mu, "perimeter": perimeter2(member)})
    report.figure = [
        ("Q", body),
        ("P", translate(member, fits_translated(member, body, Rotation.planar(0.0), tol).translation)),
        ("average", translate(averaged, fit.translation)),
        ("inball", inball),
    ]
    return report


def _scenario_halfway_improve(tol: Tolerances, steps: int = 5) -> ExperimentReport:
    body = unit_square()
    shape = scale(unit_square(), 0.999 * max_scale(unit_square(), body, 720, method="lp", tol=tol))
    disk_area = np.pi * chebyshev_center(body, tol).radius ** 2
    records = []
    for step in range(steps):
        improved = halfway(shape, Rotation.planar(np.pi / 2 ** (step + 2)), tol)
        sweep = sweep_fit(improved, body, 720, tol=tol)
        gain = area2(improved) - area2(shape)
        records.append(
            _trial(
                step,
                _digest(improved),
                {
                    "stays_in_kq": (-sweep.worst_margin, tol.abs_tol),
                    "area_grows": (tol.strict_gap - gain, 0.0),
                    "perimeter_grows": (perimeter2(shape) - perimeter2(improved), tol.abs_tol),
                    "below_disk": (area2(improved) - disk_area, 0.0),
                },
                vertices=len(improved),
                area=area2(improved),
                perimeter=perimeter2(improved),
            )
        )
        shape = improved
    report = _report("halfway-improve", records, summary={"final_area": area2(shape), "disk_area": disk_area})
    report.figure = [("Q", body), ("P", translate(shape, fits_translated(shape, body, Rotation.planar(0.0), tol).translation))]
    return report


SCENARIOS: dict[str, Callable[[Tolerances], ExperimentReport]] = {
    "square-reuleaux": _scenario_square_reuleaux,
    "triangle-width": _scenario_triangle_width,
    "square-rotor-scale": _scenario_square_rotor,
    "mu-average-demo": _scenario_mu_average,
    "halfway-improve": _scenario_halfway_improve,
}


def reproduce(scenario: str, tol: Tolerances = DEFAULT_TOLERANCES) -> ExperimentReport:
    """
    Runs a named end-to-end scenario; ``report.figure`` lists the shapes to draw.

    Raises:
        UnknownScenario: If the scenario name is not known.
    """
    if scenario not in SCENARIOS:
        raise UnknownScenario(f"Unknown scenario '{scenario}', expected one of {', '.join(SCENARIOS)}.")
    return SCENARIOS[scenario](tol)


SUITES: dict[str, Callable[..., ExperimentReport]] = {
    "perimeter-additivity": check_perimeter_additivity,
    "minkowski-oracle": check_minkowski_oracle,
    "erosion-oracle": check_erosion_oracle,
    "interpolation-fit": check_interpolation_fit,
    "halfway-gain-area": lambda **kw: check_halfway_gain(w=0, d=2, **kw),
    "halfway-gain-volume": lambda **kw: check_halfway_gain(w=0, d=3, **kw),
    "halfway-gain-surface": lambda **kw: check_halfway_gain(w=1, d=3, **kw),
    "phi-algebra": check_phi_algebra,
    "mu-average-perimeter": check_mu_average_perimeter,
    "mu-average-fit": check_mu_average_fit,
    "main-theorem": check_main_theorem_random,
    "steiner": check_steiner,
    "chebyshev-optimality": check_chebyshev_optimality,
}


def run_suite(
    name: str, trials: int | None = None, seed: int | None = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> ExperimentReport:
    """Runs one registered suite; ``trials=None`` keeps the suite's own default size."""
    if name not in SUITES:
        raise UnknownScenario(f"Unknown suite '{name}', expected one of {', '.join(SUITES)}.")
    kwargs = {"seed": seed, "tol": tol}
    if trials is not None:
        kwargs["trials"] = trials
    return SUITES[name](**kwargs)


class KakeyaVerifier:
    """
    Runs every experiment suite and scenario and keeps their reports.

    Example:
        >>> verifier = KakeyaVerifier(trials=20)
        >>> verifier.run_all_suites()
        >>> print(verifier)
    """

    def __init__(self, trials: int | None = None, seed: int | None = None, tol: Tolerances = DEFAULT_TOLERANCES):
        self.trials = trials
        self.seed = default_seed() if seed is None else seed
        self.tol = tol
        self.reports: dict[str, ExperimentReport] = {}

    def run_all_suites(self) -> None:
        self._run_minkowski_suites()
        self._run_brunn_minkowski_suites()
        self._run_mu_suites()
        self._run_inball_suites()
        self._run_scenarios()

    def _run(self, name: str) -> None:
        logger.debug(f"Running {name} ...")
        self.reports[name] = run_suite(name, self.trials, self.seed, self.tol)

    def _run_minkowski_suites(self):
        for name in ("perimeter-additivity", "minkowski-oracle", "erosion-oracle", "interpolation-fit"):
            self._run(name)

    def _run_brunn_minkowski_suites(self):
        for name in ("halfway-gain-area", "halfway-gain-volume", "halfway-gain-surface", "steiner"):
            self._run(name)

    def _run_mu_suites(self):
        for name in ("phi-algebra", "mu-average-perimeter", "mu-average-fit"):
            self._run(name)

    def _run_inball_suites(self):
        for name in ("chebyshev-optimality", "main-theorem"):
            self._run(name)
        self.reports["main-theorem-candidates"] = check_main_theorem(unit_square(), unit_square_candidates(), tol=self.tol)

    def _run_scenarios(self):
        for name in SCENARIOS:
            logger.debug(f"Reproducing {name} ...")
            self.reports[name] = reproduce(name, self.tol)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports.values())

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "reports": {name: report.to_dict() for name, report in self.reports.items()},
        }

    def __str__(self) -> str:
        return tabulate(
            [
                [
                    name,
                    report.trials,
                    report.skipped,
                    report.failures,
                    f"{report.worst_violation:.3e}",
                    "PASS" if report.passed else "FAIL",
                ]
                for name, report in self.reports.items()
            ],
            headers=["Experiment", "Trials", "Skipped", "Failures", "Worst violation", "Status"],
        )
