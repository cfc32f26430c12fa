"""Command-line front end.

Three subcommands driven by one JSON config file:

* ``solve --config cfg.json --shock X``: build the family member with its
  shock at X, write a CSV of the sampled solution.
* ``sweep --config cfg.json``: sweep shock locations, write a CSV of exit
  speeds, optionally an SVG; exit 0 iff the exit-speed spread stays below the
  configured threshold.
* ``check --config cfg.json --shock X``: jump identity residuals plus the
  residual convergence study; writes a report CSV; exit 0 iff all pass.

Exit codes: 0 success (or verdict), 2 choked, 3 no subsonic root,
4 validation error, 5 invariance violation, 6 check failure.  Output files
are written to a temporary name and renamed, so failures leave no partial
files.  All paths in the config resolve relative to the config file.
"""

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import family, residuals, shock, svgplot
from .errors import (
    Choked,
    NoSubsonicRoot,
    NotSupersonic,
    OutOfDomain,
    SpeedOutOfRange,
    TranshockError,
    ValidationError,
)
from .gas import GasParams
from .geometry import CoshLike, Linear, MetricProfile, Sphere, Tabulated

EXIT_OK = 0
EXIT_CHOKED = 2
EXIT_NO_SUBSONIC = 3
EXIT_VALIDATION = 4
EXIT_SPREAD = 5
EXIT_CHECK = 6

#: band for the second-order convergence ratios checked by ``check``
RATIO_BAND = residuals.RATIO_BAND

_NUMERIC_DEFAULTS = {
    "root_tol": 1e-12,
    # base differencing step of the residual convergence study; kept well
    # above 1e-3 so float64 potential samples do not drown the h**2 signal
    "ode_step": 1e-2,
    "quadrature_panels": 10_000,
    "sweep_count": 100,
    "spread_threshold": 1e-9,
}


@dataclass
class RunConfig:
    gas: GasParams
    geom: MetricProfile
    problem: family.NozzleProblem
    root_tol: float
    ode_step: float
    quadrature_panels: int
    sweep_count: int
    spread_threshold: float
    csv_path: Path
    svg_path: Path | None
    precision: int


def _build_geometry(cfg, base_dir, msgs):
    kind = str(cfg.get("kind", "")).lower()
    try:
        if kind == "sphere":
            return Sphere(float(cfg["x_lo"]), float(cfg["x_hi"]))
        if kind == "linear":
            return Linear(float(cfg["a"]), float(cfg["b"]), float(cfg["x_lo"]), float(cfg["x_hi"]))
        if kind == "cosh":
            return CoshLike(float(cfg["a"]), float(cfg["b"]), float(cfg["x_lo"]), float(cfg["x_hi"]))
        if kind == "tabulated":
            table = base_dir / str(cfg["table"])
            return Tabulated.from_file(table, x_lo=cfg.get("x_lo"), x_hi=cfg.get("x_hi"))
        msgs.append(
            f"geometry: unknown kind {kind!r} (expected sphere, linear, cosh or tabulated)"
        )
    except KeyError as exc:
        msgs.append(f"geometry: missing field {exc}")
    except (TypeError, ValueError, OSError) as exc:
        msgs.append(f"geometry: {exc}")
    return None


def load_config(path, command, *, out_dir=None, threshold=None) -> RunConfig:
    """Parse and validate a run config, collecting every violation."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError([f"cannot read config {path}: {exc}"])
    if not isinstance(raw, dict):
        raise ValidationError([f"config root must be a JSON object, got {type(raw).__name__}"])
    base_dir = path.parent
    msgs = []

    gas = None
    gas_cfg = raw.get("gas")
    if not isinstance(gas_cfg, dict):
        msgs.append("missing or malformed 'gas' section")
    else:
        try:
            gas = GasParams(gamma=float(gas_cfg["gamma"]), c0=float(gas_cfg["c0"]))
        except KeyError as exc:
            msgs.append(f"gas: missing field {exc}")
        except (TypeError, ValueError) as exc:
            msgs.append(f"gas: {exc}")

    geom = None
    geom_cfg = raw.get("geometry")
    if not isinstance(geom_cfg, dict):
        msgs.append("missing or malformed 'geometry' section")
    else:
        geom = _build_geometry(geom_cfg, base_dir, msgs)

    problem = None
    prob_cfg = raw.get("problem")
    if not isinstance(prob_cfg, dict):
        msgs.append("missing or malformed 'problem' section")
    elif gas is not None and geom is not None:
        try:
            c_exit = prob_cfg.get("c_exit")
            problem = family.NozzleProblem(
                gas=gas,
                geom=geom,
                x0=float(prob_cfg["x0"]),
                x1=float(prob_cfg["x1"]),
                u0=float(prob_cfg["u0"]),
                c_exit=None if c_exit is None else float(c_exit),
            )
        except KeyError as exc:
            msgs.append(f"problem: missing field {exc}")
        except ValidationError as exc:
            msgs.extend(f"problem: {m}" for m in exc.messages)
        except (TypeError, ValueError) as exc:
            msgs.append(f"problem: {exc}")

    num_cfg = raw.get("numerics") or {}
    numerics = dict(_NUMERIC_DEFAULTS)
    if not isinstance(num_cfg, dict):
        msgs.append("malformed 'numerics' section")
    else:
        for key in numerics:
            if key in num_cfg:
                try:
                    numerics[key] = type(_NUMERIC_DEFAULTS[key])(num_cfg[key])
                except (TypeError, ValueError):
                    msgs.append(f"numerics: {key} must be numeric")
    if threshold is not None:
        numerics["spread_threshold"] = float(threshold)
    if not numerics["root_tol"] > 0.0:
        msgs.append("numerics: root_tol must be positive")
    if not numerics["ode_step"] > 0.0:
        msgs.append("numerics: ode_step must be positive")
    if numerics["quadrature_panels"] < 2:
        msgs.append("numerics: quadrature_panels must be at least 2")
    if numerics["sweep_count"] < 2:
        msgs.append("numerics: sweep_count must be at least 2")
    if not numerics["spread_threshold"] > 0.0:
        msgs.append("numerics: spread_threshold must be positive")

    out_cfg = raw.get("output") or {}
    precision = 12
    csv_name = f"{command}.csv"
    svg_name = None
    if not isinstance(out_cfg, dict):
        msgs.append("malformed 'output' section")
    else:
        csv_name = out_cfg.get("csv_path", csv_name)
        svg_name = out_cfg.get("svg_path")
        precision = int(out_cfg.get("precision", precision))
        if precision < 1:
            msgs.append("output: precision must be at least 1")

    if msgs:
        raise ValidationError(msgs)

    out_base = Path(out_dir) if out_dir is not None else base_dir
    csv_path = out_base / Path(csv_name).name if out_dir else base_dir / csv_name
    svg_path = None
    if svg_name is not None:
        svg_path = out_base / Path(svg_name).name if out_dir else base_dir / svg_name
    return RunConfig(
        gas=gas,
        geom=geom,
        problem=problem,
        root_tol=numerics["root_tol"],
        ode_step=numerics["ode_step"],
        quadrature_panels=numerics["quadrature_panels"],
        sweep_count=numerics["sweep_count"],
        spread_threshold=numerics["spread_threshold"],
        csv_path=csv_path,
        svg_path=svg_path,
        precision=precision,
    )


def _atomic_write(path: Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _formatter(precision):
    def fmt(v):
        return format(float(v), f".{precision}g")

    return fmt


def cmd_solve(config: RunConfig, x_b) -> int:
    solution = family.build_solution(config.problem, x_b, panels=config.quadrature_panels)
    fmt = _formatter(config.precision)
    jump = solution.jump
    lines = ["# transonic shock solution"]
    for name in ("x_b", "u_minus", "u_plus", "rho_minus", "rho_plus", "p_minus", "p_plus"):
        lines.append(f"# {name} = {fmt(getattr(jump, name))}")
    lines.append(f"# u1 = {fmt(solution.u1)}")
    lines.append("x,u,rho,c,p,regime,phi")
    gamma = config.gas.gamma
    for profile, phi in (
        (solution.supersonic_profile, solution.phi_minus),
        (solution.subsonic_profile, solution.phi_plus),
    ):
        regime = profile.branch.value
        p = profile.rho**gamma
        for i in range(len(profile)):
            lines.append(
                f"{fmt(profile.grid[i])},{fmt(profile.speeds[i])},{fmt(profile.rho[i])},"
                f"{fmt(profile.c[i])},{fmt(p[i])},{regime},{fmt(phi[i])}"
            )
    _atomic_write(config.csv_path, "\n".join(lines) + "\n")
    print(f"u1 = {fmt(solution.u1)}")
    print(f"wrote {config.csv_path}", file=sys.stderr)
    return EXIT_OK


def _sweep_svg(config: RunConfig, report) -> str:
    locs = report.shock_locations
    ok = ~np.isnan(report.exit_speeds)
    panels = [
        (
            "exit speed vs shock location",
            [("u1", list(locs[ok]), list(report.exit_speeds[ok]))],
        )
    ]
    picks = sorted({0, locs.size // 2, locs.size - 1})
    series = []
    for idx in picks:
        sol = family.build_solution(config.problem, locs[idx], panels=256)
        series.append(
            (f"x_b = {locs[idx]:.4g}", list(sol.grid), list(sol.speeds))
        )
    panels.append(("speed profiles of three family members", series))
    return svgplot.render(panels)


def cmd_sweep(config: RunConfig) -> int:
    report = family.sweep(config.problem, config.sweep_count)
    fmt = _formatter(config.precision)
    lines = [
        f"# relative_spread = {fmt(report.relative_spread)}",
        f"# max_exit_derivative = {fmt(report.max_exit_derivative)}",
        "x_b,u1,u_minus,u_plus,identity_residual",
    ]
    for i in range(report.shock_locations.size):
        lines.append(
            f"{fmt(report.shock_locations[i])},{fmt(report.exit_speeds[i])},"
            f"{fmt(report.u_minus[i])},{fmt(report.u_plus[i])},"
            f"{fmt(report.identity_residuals[i])}"
        )
    _atomic_write(config.csv_path, "\n".join(lines) + "\n")
    if config.svg_path is not None:
        _atomic_write(config.svg_path, _sweep_svg(config, report))
        print(f"wrote {config.svg_path}", file=sys.stderr)
    n_ok = int(np.sum(~np.isnan(report.exit_speeds)))
    print(
        f"relative_spread = {report.relative_spread:.6e} over {n_ok} locations "
        f"(threshold {config.spread_threshold:.6e})"
    )
    for index, message in report.failures:
        print(f"location {index} failed: {message}", file=sys.stderr)
    print(f"wrote {config.csv_path}", file=sys.stderr)
    if report.relative_spread >= config.spread_threshold:
        print(
            "error: exit-speed spread exceeds the threshold, the shock-location "
            "invariance is violated",
            file=sys.stderr,
        )
        return EXIT_SPREAD
    return EXIT_OK


def cmd_check(config: RunConfig, x_b) -> int:
    rows = []  # (name, value, bound, ok)

    solution = family.build_solution(config.problem, x_b, panels=config.quadrature_panels)
    identity = shock.jump_identity_residual(config.gas, solution.jump)
    rows.append(("jump_identity_residual", identity, "|r| <= 1e-11", abs(identity) <= 1e-11))
    relation = shock.jump_relation_residual(config.gas, solution.jump)
    rows.append(("jump_relation_residual", relation, "r <= 1e-12", relation <= 1e-12))

    try:
        residuals.classify_field(config.gas, solution)
        rows.append(("piecewise_regimes", 0.0, "supersonic then subsonic", True))
    except TranshockError:
        rows.append(("piecewise_regimes", math.nan, "supersonic then subsonic", False))

    lo, hi = RATIO_BAND
    try:
        study = residuals.residual_convergence(
            config.problem, x_b, base_step=config.ode_step
        )
        for label, ratios in (("ode", study.ode_ratios), ("pde", study.pde_ratios)):
            for i, ratio in enumerate(ratios):
                rows.append(
                    (
                        f"{label}_residual_ratio_{i + 1}",
                        ratio,
                        f"in [{lo}, {hi}]",
                        lo <= ratio <= hi,
                    )
                )
    except ValueError as exc:
        rows.append(("residual_convergence", math.nan, str(exc), False))

    fmt = _formatter(config.precision)
    lines = ["check,value,bound,status"]
    for name, value, bound, ok in rows:
        lines.append(f"{name},{fmt(value)},\"{bound}\",{'pass' if ok else 'fail'}")
    _atomic_write(config.csv_path, "\n".join(lines) + "\n")
    print(f"wrote {config.csv_path}", file=sys.stderr)

    if config.problem.c_exit is not None:
        verdict = family.solvability(config.problem)
        print(
            f"solvability: {verdict.verdict} (prescribed c_exit = {fmt(verdict.c_exit)}, "
            f"admissible u1 = {fmt(verdict.u1)})"
        )

    failed = [name for name, _, _, ok in rows if not ok]
    if failed:
        print(f"error: check failed: {failed[0]}", file=sys.stderr)
        return EXIT_CHECK
    print(f"all {len(rows)} checks passed")
    return EXIT_OK


def _dispatch(args) -> int:
    config = load_config(
        args.config,
        args.command,
        out_dir=args.out_dir,
        threshold=getattr(args, "threshold", None),
    )
    if args.command == "solve":
        return cmd_solve(config, args.shock)
    if args.command == "sweep":
        return cmd_sweep(config)
    return cmd_check(config, args.shock)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="transhock",
        description="Transonic shock families in curved axisymmetric nozzles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text, needs_shock in (
        ("solve", "build one family member and write its sampled solution", True),
        ("sweep", "sweep shock locations and verify the exit-speed invariance", False),
        ("check", "run jump identity and residual convergence checks", True),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to the JSON run config")
        cmd.add_argument("--out-dir", default=None, help="directory overriding output paths")
        if needs_shock:
            cmd.add_argument("--shock", required=True, type=float, help="shock coordinate x_b")
        if name == "sweep":
            cmd.add_argument(
                "--threshold", default=None, type=float,
                help="override the exit-speed spread threshold",
            )
    args = parser.parse_args(argv)

    try:
        return _dispatch(args)
    except ValidationError as exc:
        for message in exc.messages:
            print(f"error: {message}", file=sys.stderr)
        return EXIT_VALIDATION
    except Choked as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHOKED
    except NoSubsonicRoot as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SUBSONIC
    except (OutOfDomain, NotSupersonic, SpeedOutOfRange, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
