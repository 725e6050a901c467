"""Command-line front end.

    ksurf sphere   --space h2r --K 1            profile CSV, OBJ, report JSON
    ksurf helicoid --profile quadratic          OBJ, simple-end and curvature JSON
    ksurf verify   --K 1 --space h2r            acceptance report JSON
    ksurf ck-table --K 0.1 0.5 1 2 10           CSV K,epsilon,c_K

Exit codes: 0 success, 2 usage, 3 numeric failure, 4 precondition failure.
"""

import argparse
import math
from pathlib import Path
import sys

from . import __version__
from .ambient import Space
from .errors import DomainError, GeometryError, PreconditionError, QuadratureError
from .estimates import ck_table
from .helicoidal import (DEFAULT_T_RANGE, PROFILES, build_helicoidal, curvature_formula,
                         polynomial_profile, simple_end_check)
from .io import csv_text, dumps_json, obj_text
from .rotational import build_sphere
from .sections import triangulate
from .surface import fundamental_forms
from .verification import BOUNDS, DEFAULT_SEED, VerifyConfig, run_verification

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_PRECONDITION = 0, 2, 3, 4

CURVATURE_Y = 1.5
CURVATURE_T = 2.0


def positive_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return x


def resolution(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 8:
        raise argparse.ArgumentTypeError(f"resolution must be >= 8, got {n}")
    return n


def space(text):
    try:
        return Space.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def tolerance(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return name.strip(), float(value)


def build_parser():
    parser = argparse.ArgumentParser(prog="ksurf", description="Constant extrinsic curvature surfaces in H2xR and S2xR.")
    parser.add_argument("--version", action="version", version=f"ksurf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized spot checks")
        p.add_argument("--output-dir", type=Path, default=Path("."), help="directory for emitted files")

    p = sub.add_parser("sphere", help="rotational K-sphere: profile CSV, OBJ mesh, report JSON")
    p.add_argument("--space", type=space, default=Space.H2R)
    p.add_argument("--K", type=positive_float, default=1.0)
    p.add_argument("--C", type=float, default=0.0, help="height of the lowest point")
    p.add_argument("--n-u", type=resolution, default=65)
    p.add_argument("--n-v", type=resolution, default=64)
    p.add_argument("--disk-obj", action="store_true", help="also write the Poincare disk x R mesh (h2r only)")
    common(p)

    p = sub.add_parser("helicoid", help="helicoidal surface with a simple end")
    p.add_argument("--profile", default="quadratic",
                   help="quadratic, cosh, or poly:c0,c1,... (coefficients, constant term first)")
    p.add_argument("--window", type=positive_float, default=3.0, help="profile window y in [-W, W]")
    p.add_argument("--t-range", type=float, nargs=2, default=list(DEFAULT_T_RANGE), metavar=("T0", "T1"))
    p.add_argument("--n-y", type=resolution, default=64)
    p.add_argument("--n-t", type=resolution, default=64)
    p.add_argument("--disk-obj", action="store_true", help="also write the Poincare disk x R mesh")
    common(p)

    p = sub.add_parser("verify", help="run the acceptance suite, print the JSON report")
    p.add_argument("--K", type=positive_float, default=1.0)
    p.add_argument("--space", type=space, default=Space.H2R)
    p.add_argument("--grid", type=resolution, default=32)
    p.add_argument("--mesh", type=resolution, default=64)
    p.add_argument("--tol", type=tolerance, action="append", default=[], metavar="NAME=VALUE",
                   help="override a criterion bound")
    p.add_argument("--no-replay", action="store_true", help="skip the reproducibility replay")
    p.add_argument("--output", type=Path, help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("ck-table", help="CSV table of the height constant c_K")
    p.add_argument("--K", type=positive_float, nargs="+", default=[0.1, 0.5, 1.0, 2.0, 10.0])
    p.add_argument("--epsilon", type=int, choices=(-1, 1), default=-1)
    p.add_argument("--output", type=Path, help="write the CSV here instead of stdout")
    return parser


def _write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


def _emit(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        _write(path, text)


def _header(args, extra=None):
    fields = {"command": args.command}
    for key in sorted(vars(args)):
        if key in ("command", "output_dir", "output", "disk_obj"):
            continue
        value = getattr(args, key)
        fields[key] = value.name.lower() if isinstance(value, Space) else value
    if extra:
        fields.update(extra)
    return fields


def cmd_sphere(args):
    build = build_sphere(args.K, args.C, args.space, args.n_u, args.n_v)
    stem = f"sphere_{args.space.name.lower()}_K{args.K:g}"
    out = args.output_dir
    mesh = triangulate(build.surface, args.n_u, args.n_v)
    report = build.report.to_dict()
    report["space"] = args.space.name.lower()
    report["seed"] = args.seed
    files = [
        _write(out / f"{stem}_profile.csv", csv_text(("u", "k", "h"), build.curve.rows())),
        _write(out / f"{stem}.obj", obj_text(mesh, _header(args), "ambient")),
        _write(out / f"{stem}_report.json", dumps_json(report)),
    ]
    if args.disk_obj:
        if args.space != Space.H2R:
            raise DomainError("--disk-obj needs --space h2r")
        files.append(_write(out / f"{stem}_disk.obj", obj_text(mesh, _header(args), "disk")))
    for f in files:
        print(f)
    return EXIT_OK


def parse_profile(text):
    if text in PROFILES:
        return PROFILES[text]()
    if text.startswith("poly:"):
        try:
            coeffs = [float(c) for c in text[5:].split(",") if c.strip()]
        except ValueError:
            raise PreconditionError(f"malformed coefficient list {text!r}")
        if len(coeffs) < 3:
            raise PreconditionError("a convex polynomial profile needs degree >= 2")
        return polynomial_profile(coeffs)
    raise PreconditionError(f"unknown profile {text!r}; use quadratic, cosh or poly:c0,c1,...")


def curvature_match(p, surface, n=32):
    """Numeric II curvature against the closed form on a moderate sub-window.

    Far out on a wide window the hyperboloid coordinates grow like exp(rho),
    and Lorentz inner products lose every digit, so the check is confined to
    |y| <= 1.5, |t| <= 2 intersected with the surface's domain.
    """
    (y0, y1), (t0, t1) = surface.domain
    ya, yb = max(y0, -CURVATURE_Y), min(y1, CURVATURE_Y)
    ta, tb = max(t0, -CURVATURE_T), min(t1, CURVATURE_T)
    num = surface.numeric_second()
    worst = 0.0
    for i in range(1, n + 1):
        y = ya + (yb - ya) * i / (n + 1)
        target = curvature_formula(p, y)
        for j in range(1, n + 1):
            t = ta + (tb - ta) * j / (n + 1)
            k = fundamental_forms(num, y, t, with_intrinsic=False).K_ext
            worst = max(worst, abs(k - target))
    return {"window": [[ya, yb], [ta, tb]], "grid": n, "max_error": worst, "bound": 1e-4,
            "pass": worst < 1e-4}


def cmd_helicoid(args):
    p = parse_profile(args.profile)
    t0, t1 = args.t_range
    if not t0 < t1:
        raise DomainError("--t-range needs T0 < T1")
    surface = build_helicoidal(p, args.n_y, args.n_t, (t0, t1), (-args.window, args.window))
    stem = f"helicoid_{p.name}"
    out = args.output_dir
    mesh = triangulate(surface, args.n_y, args.n_t)
    end = simple_end_check(p, surface)
    end_report = end.to_dict()
    end_report["profile"] = p.name
    end_report["seed"] = args.seed
    match = curvature_match(p, surface)
    match["profile"] = p.name
    match["seed"] = args.seed
    files = [
        _write(out / f"{stem}.obj", obj_text(mesh, _header(args), "ambient")),
        _write(out / f"{stem}_simple_end.json", dumps_json(end_report)),
        _write(out / f"{stem}_curvature.json", dumps_json(match)),
    ]
    if args.disk_obj:
        files.append(_write(out / f"{stem}_disk.obj", obj_text(mesh, _header(args), "disk")))
    for f in files:
        print(f)
    return EXIT_OK if match["pass"] else EXIT_NUMERIC


def cmd_verify(args):
    tolerances = dict(args.tol)
    cfg = VerifyConfig(K=args.K, space=args.space, seed=args.seed, grid=args.grid, mesh=args.mesh,
                       tolerances=tolerances)
    unknown = [k for k in tolerances if k not in BOUNDS]
    if unknown:
        raise DomainError(f"unknown tolerance names: {', '.join(unknown)}")
    report = run_verification(cfg, replay=not args.no_replay)
    _emit(args.output, dumps_json(report))
    return EXIT_OK if report["pass"] else EXIT_NUMERIC


def cmd_ck_table(args):
    rows, monotone = ck_table(args.K, args.epsilon)
    _emit(args.output, csv_text(("K", "epsilon", "c_K"), rows,
                                trailer=f"monotone_decreasing: {str(monotone).lower()}"))
    return EXIT_OK


COMMANDS = {"sphere": cmd_sphere, "helicoid": cmd_helicoid, "verify": cmd_verify, "ck-table": cmd_ck_table}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except PreconditionError as exc:
        print(f"ksurf: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except DomainError as exc:
        print(f"ksurf: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GeometryError, QuadratureError, ArithmeticError) as exc:
        print(f"ksurf: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
