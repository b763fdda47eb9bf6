"""Command-line entry point.

Four commands: ``verify`` runs classification suites and writes verdict
JSON, ``sweep`` evaluates a residual system along a parameter grid into
CSV, ``integrate`` runs a flow reduction and exports the trajectory, and
``oracle-compare`` checks closed-form curvature data against the
embedding oracle.  A JSON config file mirrors every flag; explicit flags
win over the config.  Exit codes: 0 all requested checks passed, 1 a
claim was violated, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import odes, oracle, suites
from .errors import ConsistencyError, DomainError
from .odes import Termination
from .profiles import ProfileKind, RotationProfile, load_profile
from .reports import GridRow, summary_payload, write_grid_csv, write_json, write_trajectory_csv
from .residuals import (
    DEFAULT_TOLERANCE,
    hyperbolic_surface_residuals,
    rotation_residual_normal,
    rotation_residual_tangential,
    sphere_surface_residuals,
)

EXIT_PASS = 0
EXIT_VIOLATED = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

SWEEP_SYSTEMS = ("rotation-tangential", "rotation-normal", "sphere-surface", "hyperbolic-surface")
FLOW_SYSTEMS = (
    "rotation",
    "sphere-surface",
    "hyperbolic-surface",
    "minimal-hypersurface",
    "minimal-sphere-surface",
    "minimal-hyperbolic-surface",
)


def _parse_range(spec: str) -> np.ndarray:
    """Parse 'a:b:h' into an inclusive grid with spacing h."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise DomainError(f"range must be 'start:stop:step', got {spec!r}")
    a, b, h = (float(p) for p in parts)
    if h <= 0 or b <= a:
        raise DomainError(f"range needs stop > start and step > 0, got {spec!r}")
    count = int(round((b - a) / h))
    grid = a + h * np.arange(count + 1)
    return grid[grid <= b + 1e-12 * max(1.0, abs(b))]


def _parse_profile(spec: str) -> RotationProfile:
    """Parse 'family' or 'family:key=value,key=value' into a profile."""
    name, _, raw = spec.partition(":")
    params: dict = {}
    if raw:
        for item in raw.split(","):
            key, _, value = item.partition("=")
            if not _:
                raise DomainError(f"bad profile parameter {item!r}")
            try:
                params[key] = json.loads(value)
            except json.JSONDecodeError:
                params[key] = value
    return load_profile({"expr": name, "params": params})


def _out_dir(path: Optional[str]) -> Path:
    out = Path(path) if path else Path(".")
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise DomainError(f"output directory {out} is not writable: {exc}") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biharmonic-lab",
        description="Verification engine for biharmonic hypersurfaces in "
        "sphere-line and hyperbolic-line products.",
    )
    parser.add_argument("--config", help="JSON file mirroring the flags of a command")
    sub = parser.add_subparsers(dest="command")

    verify = sub.add_parser("verify", help="run classification suites")
    verify.add_argument("--suite", default="all", help=f"one of {sorted(suites.SUITES)} or 'all'")
    verify.add_argument("--m", type=int, default=2, help="space-form factor dimension")
    verify.add_argument("--c", type=int, default=1, help="curvature sign for suites that take one")
    verify.add_argument("--tol", type=float, default=None, help="override suite tolerance")
    verify.add_argument("--out", default=None, help="output directory")

    sweep = sub.add_parser("sweep", help="evaluate a residual system on a grid")
    sweep.add_argument("--system", required=True, choices=SWEEP_SYSTEMS)
    sweep.add_argument("--profile", required=True, help="family[:key=value,...]")
    sweep.add_argument("--m", type=int, default=3)
    sweep.add_argument("--c", type=int, default=1)
    sweep.add_argument("--C", type=float, default=0.0, help="flux constant of the surface systems")
    sweep.add_argument("--s", required=True, help="parameter grid start:stop:step")
    sweep.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    sweep.add_argument("--out", default=None)

    integ = sub.add_parser("integrate", help="integrate a flow reduction")
    integ.add_argument("--system", required=True, choices=FLOW_SYSTEMS)
    integ.add_argument("--initial", required=True, help="comma-separated initial state")
    integ.add_argument("--s", required=True, help="integration range start:stop[:ignored]")
    integ.add_argument("--m", type=int, default=2)
    integ.add_argument("--c", type=int, default=1)
    integ.add_argument("--C", type=float, default=0.0)
    integ.add_argument("--tol", type=float, default=1e-10)
    integ.add_argument("--out", default=None)

    cmp_ = sub.add_parser("oracle-compare", help="closed form vs embedding oracle")
    cmp_.add_argument("--profile", required=True, help="surface profile family[:key=value,...]")
    cmp_.add_argument("--s", required=True, help="sample grid start:stop:step")
    cmp_.add_argument("--step", type=float, default=1e-3, help="finite-difference step")
    cmp_.add_argument("--tol", type=float, default=1e-4)
    cmp_.add_argument("--out", default=None)
    return parser


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> argparse.Namespace:
    if not args.config:
        return args
    with open(args.config, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    command = payload.pop("command", args.command)
    if command is None:
        raise DomainError("config file must carry a 'command' entry")
    argv = [command]
    for key, value in payload.items():
        argv.extend([f"--{key}", str(value)])
    merged = parser.parse_args(argv)
    # explicit flags win over the config
    for key, value in vars(args).items():
        if key in ("config", "command"):
            continue
        default = parser.get_default(key)
        if value != default and hasattr(merged, key):
            setattr(merged, key, value)
    return merged


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _run_verify(args: argparse.Namespace) -> int:
    out = _out_dir(args.out)
    if args.suite == "all":
        verdicts = suites.run_all()
    elif args.suite == "cylinder":
        kwargs = {"m": args.m}
        if args.tol is not None:
            kwargs["tolerance"] = args.tol
        verdicts = [suites.run_suite("cylinder", **kwargs)]
    elif args.suite == "semiparallel":
        verdicts = [suites.run_suite("semiparallel", m=args.m)]
    elif args.suite == "umbilic":
        verdicts = [suites.run_suite("umbilic", c=args.c)]
    else:
        verdicts = [suites.run_suite(args.suite)]

    payload = {
        "verdicts": [v.to_payload() for v in verdicts],
        "overall": all(v.overall for v in verdicts),
    }
    write_json(out / "verdicts.json", payload)
    for v in verdicts:
        name = v.suite_name.replace("(", "_").replace(")", "").replace("=", "").replace(",", "_")
        write_json(out / f"verdict_{name}.json", v.to_payload())
    print(f"suites: {len(verdicts)}  overall: {'PASS' if payload['overall'] else 'FAIL'}")
    for v in verdicts:
        print(f"  {v.suite_name}: {'pass' if v.overall else 'FAIL'} ({len(v.claims)} claims)")
    return EXIT_PASS if payload["overall"] else EXIT_VIOLATED


def _sweep_rows(args: argparse.Namespace, grid: np.ndarray, profile: RotationProfile):
    rows: list[GridRow] = []
    skipped = 0
    for s in grid:
        s = float(s)
        try:
            if args.system in ("rotation-tangential", "rotation-normal"):
                jet = profile.u_jet(s)
                if args.system == "rotation-tangential":
                    value = rotation_residual_tangential(jet, s, args.m, c=args.c)
                    name = "tangential"
                else:
                    value = rotation_residual_normal(jet, s, args.m, c=args.c)
                    name = "normal"
                rows.append(GridRow(s, name, value, abs(value) <= args.tol))
            else:
                fn = (
                    sphere_surface_residuals
                    if args.system == "sphere-surface"
                    else hyperbolic_surface_residuals
                )
                report = fn(profile.k_jet(s), profile.h_jet(s), args.C, tolerance=args.tol)
                for name, value in zip(report.names, report.values):
                    rows.append(GridRow(s, name, value, abs(value) <= args.tol))
        except DomainError:
            skipped += 1
    return rows, skipped


def _run_sweep(args: argparse.Namespace) -> int:
    out = _out_dir(args.out)
    profile = _parse_profile(args.profile)
    if not profile.certified:
        raise DomainError(
            "interpolated table profiles are not admissible for residual sweeps; "
            "use oracle-compare"
        )
    grid = _parse_range(args.s)
    rows, skipped = _sweep_rows(args, grid, profile)
    if not rows:
        raise DomainError("sweep grid lies entirely outside the profile domain")
    write_grid_csv(out / "sweep.csv", rows)
    max_abs = max(abs(r.value) for r in rows)
    payload = summary_payload(f"sweep:{args.system}:{profile.label}", max_abs, args.tol)
    payload["points"] = len(rows)
    payload["skipped"] = skipped
    write_json(out / "sweep_summary.json", payload)
    print(f"sweep {args.system} over {len(grid)} points: max |residual| = {max_abs:.6e}")
    return EXIT_PASS


def _flow_system(args: argparse.Namespace):
    if args.system == "rotation":
        return odes.reduce_rotation_biharmonic(args.m, args.c)
    if args.system == "sphere-surface":
        return odes.reduce_surface_biharmonic("sphere", args.C)
    if args.system == "hyperbolic-surface":
        return odes.reduce_surface_biharmonic("hyperbolic", args.C)
    if args.system == "minimal-hypersurface":
        return odes.minimal_profile_system("sphere_hypersurface", m=args.m)
    if args.system == "minimal-sphere-surface":
        return odes.minimal_profile_system("sphere_surface")
    return odes.minimal_profile_system("hyperbolic_surface")


def _run_integrate(args: argparse.Namespace) -> int:
    out = _out_dir(args.out)
    system = _flow_system(args)
    initial = np.array([float(v) for v in args.initial.split(",")])
    parts = args.s.split(":")
    if len(parts) < 2:
        raise DomainError("integration range must be 'start:stop'")
    span = (float(parts[0]), float(parts[1]))
    trajectory = odes.integrate(system, initial, span, tolerances=(args.tol, args.tol))
    write_trajectory_csv(
        out / "trajectory.csv",
        trajectory.parameters,
        trajectory.states,
        system.state_names or tuple(f"y{i}" for i in range(system.dimension)),
        monitors=trajectory.monitor_values,
    )
    write_json(
        out / "trajectory_run.json",
        {
            "system": system.label or args.system,
            "tolerances": list(trajectory.tolerances),
            "termination": trajectory.termination.value,
            "t_stop": trajectory.t_stop,
            "max_monitor": trajectory.max_monitor,
            "samples": len(trajectory.parameters),
        },
    )
    print(
        f"integrated {args.system}: {len(trajectory.parameters)} samples, "
        f"termination {trajectory.termination.value}"
    )
    if trajectory.termination is Termination.STEP_UNDERFLOW:
        return EXIT_NUMERICAL
    return EXIT_PASS


def _run_oracle_compare(args: argparse.Namespace) -> int:
    out = _out_dir(args.out)
    profile = _parse_profile(args.profile)
    if profile.kind is ProfileKind.SPHERE_HYPERSURFACE:
        raise DomainError("oracle-compare works on the surface kinds")
    sampler = oracle.profile_sampler(profile, step=args.step)
    grid = _parse_range(args.s)
    hyperbolic = profile.kind is ProfileKind.HYPERBOLIC_SURFACE
    rows: list[GridRow] = []
    worst = 0.0
    for r in grid:
        r = float(r)
        k_jet, h_jet = profile.k_jet(r), profile.h_jet(r)
        from .profiles import (
            gauss_curvature_surface,
            mean_curvature_surface,
        )

        forms = oracle.fundamental_forms(sampler, (r, 0.4))
        closed_H = mean_curvature_surface(k_jet, h_jet, profile.kind)
        closed_K = gauss_curvature_surface(k_jet, h_jet, profile.kind)
        oracle_H = oracle.mean_curvature(forms)
        oracle_K = oracle.intrinsic_gauss_curvature(sampler, (r, 0.4))
        cos_alpha = oracle.angle_and_T(sampler, (r, 0.4)).cos_alpha
        for name, err in (
            ("mean_curvature", abs(closed_H - oracle_H)),
            ("gauss_curvature", abs(closed_K - oracle_K)),
            ("angle", abs(cos_alpha - k_jet.d1)),
        ):
            rows.append(GridRow(r, name, err, err <= args.tol))
            worst = max(worst, err)
    write_grid_csv(out / "oracle_compare.csv", rows)
    payload = summary_payload(f"oracle-compare:{profile.label}", worst, args.tol)
    payload["finite_difference_step"] = args.step
    payload["hyperbolic"] = hyperbolic
    write_json(out / "oracle_compare.json", payload)
    print(f"oracle-compare {profile.label}: max |closed - oracle| = {worst:.3e}")
    return EXIT_PASS if worst <= args.tol else EXIT_VIOLATED


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _apply_config(args, parser)
        if args.command is None:
            parser.print_help()
            return EXIT_INVALID
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "sweep":
            return _run_sweep(args)
        if args.command == "integrate":
            return _run_integrate(args)
        if args.command == "oracle-compare":
            return _run_oracle_compare(args)
        parser.error(f"unknown command {args.command}")
        return EXIT_INVALID
    except (DomainError, ConsistencyError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
