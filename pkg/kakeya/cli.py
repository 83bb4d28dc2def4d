import argparse
import json
import sys

import numpy as np
import pandas as pd
from loguru import logger

from kakeya.config import DEFAULT_TOLERANCES, Tolerances, default_seed
from kakeya.errors import InvalidParameter, KakeyaError, ShapeParseError
from kakeya.fit_oracle import fits_translated, max_scale, sweep_fit
from kakeya.geom_core import Rotation, rotate, translate
from kakeya.inball_lp import chebyshev_center, min_width
from kakeya.minkowski import interpolate, minkowski_sum, steiner_coeffs3
from kakeya.mu_algebra import MuVector, mu_average_poly, phi, polygon_from_phi
from kakeya.parser import load_body, load_shape, shape_to_dict
from kakeya.svg import render_svg
from kakeya.utils import atomic_write, parse_angle
from kakeya.verify import SCENARIOS, SUITES, KakeyaVerifier, reproduce, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class Outcome:
    """What a command produced: a JSON document, whether its claim held, and an optional figure."""

    def __init__(self, document: dict, ok: bool = True, figure: list | None = None, frame: pd.DataFrame | None = None):
        self.document = document
        self.ok = ok
        self.figure = figure or []
        self.frame = frame


def _tolerances(args) -> Tolerances:
    return DEFAULT_TOLERANCES.with_overrides(abs_tol=args.tol_abs, rel_tol=args.tol_rel)


def _rotation(args, dim: int) -> Rotation:
    if args.quaternion:
        try:
            components = [float(x) for x in args.quaternion.split(",")]
        except ValueError:
            raise InvalidParameter(f"Quaternion must be four numbers w,x,y,z, got '{args.quaternion}'.") from None
        return Rotation.from_quaternion(components)
    if dim == 3:
        return Rotation.identity(3)
    return Rotation.planar(parse_angle(args.angle))


def _planar(*shapes) -> bool:
    return all(getattr(shape, "dim", 0) == 2 for shape in shapes)


def cmd_inball(args, tol: Tolerances) -> Outcome:
    body = load_body(args.shape)
    inball = chebyshev_center(body, tol)
    document = {"center": inball.center.tolist(), "radius": inball.radius}
    return Outcome(document, figure=[("Q", body), ("inball", inball)] if _planar(body) else None)


def cmd_min_width(args, tol: Tolerances) -> Outcome:
    body = load_body(args.shape)
    width = min_width(body, approximate=args.approximate, tol=tol)
    figure = [("Q", body)] if _planar(body) else None
    return Outcome({"width": width.value, "direction": np.asarray(width.direction).tolist()}, figure=figure)


def cmd_minkowski_sum(args, tol: Tolerances) -> Outcome:
    first, second = load_body(args.p), load_body(args.q)
    result = minkowski_sum(first, second, tol) if args.lam is None else interpolate(first, second, args.lam, tol)
    figure = [("Q", result), ("P", first), ("average", second)] if _planar(result) else None
    return Outcome(shape_to_dict(result), figure=figure)


def cmd_mu_average(args, tol: Tolerances) -> Outcome:
    polygon = load_body(args.shape)
    averaged = mu_average_poly(polygon, args.mu, tol=tol)
    return Outcome(shape_to_dict(averaged), figure=[("P", polygon), ("average", averaged)])


def cmd_phi(args, tol: Tolerances) -> Outcome:
    shape = load_shape(args.shape)
    if isinstance(shape, MuVector):
        return Outcome(shape_to_dict(polygon_from_phi(shape, tol)))
    return Outcome(shape_to_dict(phi(shape, args.mu, tol)), figure=[("P", shape)])


def cmd_fit(args, tol: Tolerances) -> Outcome:
    shape, body = load_body(args.p), load_body(args.q)
    rho = _rotation(args, shape.dim)
    report = fits_translated(shape, body, rho, tol)
    figure = None
    if _planar(body):
        figure = [("Q", body), ("P", translate(rotate(shape, rho), report.translation))]
    return Outcome(report.to_dict(), ok=report.fits, figure=figure)


def cmd_sweep(args, tol: Tolerances) -> Outcome:
    shape, body = load_body(args.p), load_body(args.q)
    report = sweep_fit(shape, body, args.samples, certify=args.certify, seed=args.seed, tol=tol)
    ok = report.fits_all and (report.certified or not args.certify)
    figure = None
    if _planar(body):
        placed = translate(rotate(shape, report.worst_rotation), report.worst_translation)
        figure = [("Q", body), ("P", placed), ("inball", chebyshev_center(body, tol))]
    return Outcome(report.to_dict(), ok=ok, figure=figure)


def cmd_max_scale(args, tol: Tolerances) -> Outcome:
    shape, body = load_body(args.p), load_body(args.q)
    alpha = max_scale(shape, body, args.samples, method=args.method, seed=args.seed, tol=tol)
    return Outcome({"scale": alpha, "samples": args.samples, "method": args.method})


def cmd_steiner(args, tol: Tolerances) -> Outcome:
    coeffs = steiner_coeffs3(load_body(args.shape))
    return Outcome({"v": coeffs.v, "s": coeffs.s, "m": coeffs.m, "b": coeffs.b})


def cmd_verify(args, tol: Tolerances) -> Outcome:
    if args.suite == "all":
        verifier = KakeyaVerifier(trials=args.trials, seed=args.seed, tol=tol)
        verifier.run_all_suites()
        logger.info(f"\n{verifier}")
        frames = [report.to_frame().assign(experiment=name) for name, report in verifier.reports.items()]
        return Outcome(verifier.to_dict(), ok=verifier.passed, frame=pd.concat(frames, ignore_index=True))
    report = run_suite(args.suite, args.trials, args.seed, tol)
    logger.info(f"\n{report}")
    return Outcome(report.to_dict(), ok=report.passed, frame=report.to_frame())


def cmd_reproduce(args, tol: Tolerances) -> Outcome:
    report = reproduce(args.scenario, tol)
    logger.info(f"\n{report}")
    return Outcome(report.to_dict(), ok=report.passed, figure=report.figure, frame=report.to_frame())


def _add_tolerance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol-abs", type=float, default=None, help="Absolute tolerance (default 1e-9).")
    parser.add_argument("--tol-rel", type=float, default=None, help="Relative tolerance (default 1e-12).")
    parser.add_argument("--verbose", action="store_true", help="Log per-step debug output to stderr.")
    outputs = parser.add_mutually_exclusive_group()
    outputs.add_argument("--json", metavar="PATH", help="Write the JSON result to PATH instead of stdout.")
    outputs.add_argument("--csv", metavar="PATH", help="Write the result table to PATH as CSV.")
    outputs.add_argument("--svg", metavar="PATH", help="Write an SVG figure to PATH.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kakeya", description="Inscribed balls, Minkowski sums and fit oracles for convex bodies."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        _add_tolerance_flags(sub)
        return sub

    for name, handler, help_text in (
        ("inball", cmd_inball, "Chebyshev center and inradius of a body."),
        ("min-width", cmd_min_width, "Minimum width of a body."),
        ("steiner", cmd_steiner, "Steiner coefficients of a 3D polytope."),
    ):
        sub = command(name, handler, help_text)
        sub.add_argument("--shape", required=True, help="JSON shape file.")
        if name == "min-width":
            sub.add_argument("--approximate", action="store_true", help="Sphere-sampled 3D width.")

    sub = command("minkowski-sum", cmd_minkowski_sum, "Minkowski sum (or interpolation) of two shapes.")
    sub.add_argument("--p", required=True)
    sub.add_argument("--q", required=True)
    sub.add_argument("--lam", type=float, default=None, help="Return (1 - lam) P + lam Q instead of P + Q.")

    for name, handler, help_text in (
        ("mu-average", cmd_mu_average, "mu-average of a polygon."),
        ("phi", cmd_phi, "mu-vector of a mu-polygon, or the polygon of a mu-vector."),
    ):
        sub = command(name, handler, help_text)
        sub.add_argument("--shape", required=True)
        sub.add_argument("--mu", type=int, default=8, help="Even number of directions (default 8).")

    sub = command("fit", cmd_fit, "Does P fit Q by translation after a rotation?")
    sub.add_argument("--p", required=True)
    sub.add_argument("--q", required=True)
    sub.add_argument("--angle", default="0", help="Planar angle, e.g. 45deg or 0.3rad (default radians).")
    sub.add_argument("--quaternion", default=None, help="3D rotation as w,x,y,z.")

    for name, handler, help_text in (
        ("sweep", cmd_sweep, "Translation fits over an orientation grid."),
        ("max-scale", cmd_max_scale, "Largest scale of P fitting Q at every sampled orientation."),
    ):
        sub = command(name, handler, help_text)
        sub.add_argument("--p", required=True)
        sub.add_argument("--q", required=True)
        sub.add_argument("--samples", type=int, default=360)
        sub.add_argument("--seed", type=lambda v: int(v, 0), default=None)
        if name == "sweep":
            sub.add_argument("--certify", action="store_true", help="Upgrade a planar grid to a proof.")
        else:
            sub.add_argument("--method", choices=("bisect", "lp"), default="bisect")

    sub = command("verify", cmd_verify, "Run an experiment suite.")
    sub.add_argument("suite", choices=[*SUITES, "all"])
    sub.add_argument("--trials", type=int, default=None, help="Override the suite's trial count.")
    sub.add_argument("--seed", type=lambda v: int(v, 0), default=None)

    sub = command("reproduce", cmd_reproduce, "Run a named end-to-end scenario.")
    sub.add_argument("scenario", choices=list(SCENARIOS))
    return parser


def _emit(outcome: Outcome, args) -> None:
    text = json.dumps(outcome.document, indent=2)
    if args.json:
        atomic_write(args.json, text + "\n")
    elif args.csv:
        frame = outcome.frame if outcome.frame is not None else pd.json_normalize(outcome.document)
        atomic_write(args.csv, frame.to_csv(index=False))
    elif args.svg:
        if not outcome.figure:
            raise KakeyaError(f"'{args.command}' has no planar figure to draw.")
        atomic_write(args.svg, render_svg(outcome.figure))
        if args.command == "reproduce":
            print(text)
    else:
        print(text)


def run(argv: list[str] | None = None) -> int:
    """
    Runs one command and returns its exit code: 0 on success, 1 when the command's claim
    fails (no fit, failed sweep, failed experiment), 2 on usage or input errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if args.verbose else "INFO")
    try:
        if getattr(args, "seed", None) is None and hasattr(args, "seed"):
            args.seed = default_seed()
        outcome = args.handler(args, _tolerances(args))
        _emit(outcome, args)
    except ShapeParseError as exc:
        where = f" (byte offset {exc.offset})" if exc.offset is not None else ""
        logger.error(f"Cannot parse shape{where}: {exc}")
        return EXIT_USAGE
    except KakeyaError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        logger.error(f"Cannot access {exc.filename or 'file'}: {exc.strerror or exc}")
        return EXIT_USAGE

    if not outcome.ok:
        logger.error(f"'{args.command}' failed its check.")
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
