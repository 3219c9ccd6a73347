"""Command line interface.

Every subcommand reads a run configuration (except validate, which is
self-contained), computes, and prints rows in one of three formats:

    table    aligned columns for eyes
    csv      comma separated, header row first
    ndjson   one JSON object per row

table and csv are preceded by '#' metadata lines; ndjson instead starts
with one {"_meta": {...}} object. Output is deterministic for a given
input: floats print with repr (shortest round-trip), no timestamps.

Exit codes: 0 success, 2 configuration or usage problems, 1 runtime
failures. Errors go to stderr as a single 'error: ...' line.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

import numpy as np

from . import classical, filters, overlap, quantum, validation
from .config import ConfigError, load_and_build
from .optimizer import AXIS_NAMES, SweepAxis, optimize_focus, sweep
from .quantities import from_si, to_si

__all__ = ["main"]

_FORMATS = ("table", "csv", "ndjson")

# Units used for sweep axis values on the command line; bare names are
# dimensionless. The engine itself works in SI.
_SWEEP_UNITS = {"z_R": "mm", "Gamma_s": "MHz", "Gamma_i": "MHz", "P_p": "mW"}


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, np.generic):
        # numpy scalars repr as np.float64(...) under numpy 2; unwrap first
        value = value.item()
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def emit(rows: list[dict], meta: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    if fmt == "ndjson":
        out.write(json.dumps({"_meta": meta}) + "\n")
        for row in rows:
            out.write(json.dumps({k: _jsonable(v) for k, v in row.items()}) + "\n")
        return
    for key, value in meta.items():
        out.write(f"# {key}: {value}\n")
    if fmt == "csv":
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join(_fmt(row.get(c)) for c in columns) + "\n")
        return
    cells = [[_fmt(row.get(c)) for c in columns] for row in rows]
    widths = [
        max(len(col), *(len(r[j]) for r in cells)) if cells else len(col)
        for j, col in enumerate(columns)
    ]
    out.write("  ".join(col.ljust(w) for col, w in zip(columns, widths)).rstrip() + "\n")
    for r in cells:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _base_meta(args, command: str) -> dict:
    meta = {"command": command}
    if getattr(args, "config", None):
        meta["config"] = str(args.config)
    return meta


def _cmd_sfg(args) -> int:
    built = load_and_build(args.config)
    fp = built.fp
    ups = overlap.upsilon(fp, quad_tol=args.quad_tol)
    i_sfg = overlap.i_sfg_gaussian(built.waves, built.crystal, fp, quad_tol=args.quad_tol)
    if built.waves.degenerate:
        q_name = "q_shg_per_W"
        q_value = classical.q_shg(built.waves, built.crystal, i_sfg.abs_sq)
    else:
        q_name = "q_sfg_per_W"
        q_value = classical.q_sfg(built.waves, built.crystal, i_sfg.abs_sq)
    row = {
        "kappa": fp.kappa,
        "zeta_R": fp.zeta_r,
        "R_k": fp.r_k,
        "upsilon_re": ups.value.real,
        "upsilon_im": ups.value.imag,
        "abs_upsilon_sq": ups.abs_sq,
        "objective": fp.zeta_r * ups.abs_sq,
        "i_sfg_re": i_sfg.i_value.real,
        "i_sfg_im": i_sfg.i_value.imag,
        "abs_i_sfg_sq": i_sfg.abs_sq,
        q_name: q_value,
    }
    emit([row], _base_meta(args, "sfg"), args.format)
    return 0


def _evaluate(args, built):
    return quantum.evaluate_source(
        built.waves,
        built.crystal,
        built.fp,
        built.filter_s,
        built.filter_i,
        built.pump_power,
        basis_order=args.basis_order,
        quad_tol=args.quad_tol,
    )


def _cmd_pairs(args) -> int:
    built = load_and_build(args.config)
    report = _evaluate(args, built)
    gamma_mhz = from_si(report.gamma_eff, "MHz")
    power_mw = from_si(report.pump_power, "mW")
    eff = report.efficiencies
    q_value = eff.q_shg if built.waves.degenerate else eff.q_sfg
    q_name = "q_shg_per_W" if built.waves.degenerate else "q_sfg_per_W"
    row = {
        "gamma_eff_rad_s": report.gamma_eff,
        "gamma_eff_MHz": gamma_mhz,
        q_name: q_value,
        "w2_per_s": report.pair_rate_w2,
        "pairs_per_s_mW_MHz": report.pair_rate_w2 / (power_mw * gamma_mhz),
    }
    emit([row], _base_meta(args, "pairs"), args.format)
    return 0


def _cmd_singles(args) -> int:
    built = load_and_build(args.config)
    report = _evaluate(args, built)
    row = {
        "w2_per_s": report.pair_rate_w2,
        "w1_signal_per_s": report.singles_rate_signal,
        "w1_idler_per_s": report.singles_rate_idler,
        "eta_signal": report.eta_signal,
        "eta_idler": report.eta_idler,
        "gamma_eff_rad_s": report.gamma_eff,
        "gamma_s_rad_s": report.gamma_eff_s,
        "gamma_i_rad_s": report.gamma_eff_i,
    }
    emit([row], _base_meta(args, "singles"), args.format)
    return 0


def _cmd_correlation(args) -> int:
    built = load_and_build(args.config)
    waves = built.waves
    i_sfg = overlap.i_sfg_gaussian(waves, built.crystal, built.fp, quad_tol=args.quad_tol)
    if waves.degenerate:
        q_value = classical.q_shg(waves, built.crystal, i_sfg.abs_sq)
    else:
        q_value = classical.q_sfg(waves, built.crystal, i_sfg.abs_sq)
    scale = quantum.correlation_amplitude_sq(waves, built.pump_power, q_value)
    if args.tau_max is not None:
        if args.tau_max <= 0:
            raise ValueError("--tau-max must be positive seconds")
        tau = np.linspace(-args.tau_max, args.tau_max, args.points)
    else:
        tau = filters.default_tau_grid(built.filter_s, built.filter_i, points=args.points)
    trace = filters.correlation_shape(
        built.filter_s, built.filter_i, tau=tau, w2_prefactor=scale.w2_prefactor
    )
    rows = [
        {
            "tau_s": float(t),
            "f_re": float(f.real),
            "f_im": float(f.imag),
            "abs_f_sq": float(abs(f) ** 2),
            "w2_density_per_s2": float(w),
        }
        for t, f, w in zip(trace.tau, trace.f, trace.w2_density)
    ]
    meta = _base_meta(args, "correlation")
    meta["gamma_eff_rad_s"] = repr(trace.gamma_eff)
    meta["a_sq"] = repr(scale.a_sq)
    emit(rows, meta, args.format)
    return 0


def _cmd_optimize(args) -> int:
    built = None
    if args.rk is not None:
        r_k = args.rk
    elif args.config:
        built = load_and_build(args.config)
        r_k = built.fp.r_k
    else:
        print("error: optimize needs --rk or --config", file=sys.stderr)
        return 2
    result = optimize_focus(
        r_k,
        kappa_bounds=(args.kappa_min, args.kappa_max),
        zeta_bounds=(args.zeta_min, args.zeta_max),
        rel_tol=args.tol,
        restarts=args.restarts,
        seed=args.seed,
        quad_tol=args.quad_tol,
    )
    meta = _base_meta(args, "optimize")
    meta["r_k"] = repr(r_k)
    if args.trace:
        rows = [
            {"kappa": k, "zeta_R": z, "objective": f}
            for k, z, f in result.trace
        ]
        meta["best_objective"] = repr(result.best_objective)
        meta["converged"] = _fmt(result.converged)
        emit(rows, meta, args.format)
        return 0
    row = {
        "r_k": r_k,
        "best_kappa": result.best_kappa,
        "best_zeta_R": result.best_zeta_r,
        "best_objective": result.best_objective,
        "evaluations": result.evaluations,
        "converged": result.converged,
    }
    if built is not None:
        # Translate the dimensionless optimum back to hardware numbers.
        length = built.crystal.length
        q = built.waves.k_minus0 - result.best_kappa / length
        row["z_R_m"] = result.best_zeta_r * length
        row["poling_period_m"] = None if q <= 0 else 2.0 * np.pi / q
    emit([row], meta, args.format)
    return 0


def _cmd_sweep(args) -> int:
    built = load_and_build(args.config)
    axes = []
    display = []
    for text in args.sweep:
        axis = SweepAxis.parse(text)
        unit = _SWEEP_UNITS.get(axis.name)
        display.append((axis.name + (f"_{unit}" if unit else ""), axis.values))
        if unit is not None:
            axis = SweepAxis(axis.name, tuple(to_si(v, unit) for v in axis.values))
        axes.append(axis)
    rows_out = []
    results = sweep(
        built.waves,
        built.crystal,
        built.z_r,
        built.filter_s,
        built.filter_i,
        built.pump_power,
        axes,
        threads=args.threads,
        quad_tol=args.quad_tol,
        basis_order=args.basis_order,
    )
    # Rows arrive in product order; rebuild the display coordinates the same way.
    coords_disp = [
        dict(zip((name for name, _ in display), combo))
        for combo in itertools.product(*(vals for _, vals in display))
    ]
    for disp, res in zip(coords_disp, results):
        row = dict(disp)
        rep = res.report
        row["w2_per_s"] = None if rep is None else rep.pair_rate_w2
        row["eta_signal"] = None if rep is None else rep.eta_signal
        row["eta_idler"] = None if rep is None else rep.eta_idler
        row["gamma_eff_rad_s"] = None if rep is None else rep.gamma_eff
        row["error"] = res.error
        rows_out.append(row)
    emit(rows_out, _base_meta(args, "sweep"), args.format)
    return 0


def _cmd_validate(args) -> int:
    reports = validation.run_all_oracles()
    rows = [
        {
            "name": r.name,
            "main_value": r.main_value,
            "oracle_value": r.oracle_value,
            "rel_diff": r.rel_diff,
            "tolerance": r.tolerance,
            "passed": r.passed,
        }
        for r in reports
    ]
    emit(rows, {"command": "validate"}, args.format)
    return 0 if all(r.passed for r in reports) else 1


def _add_common(p, *, config_required=True, basis=False, threads=False):
    if config_required:
        p.add_argument("--config", required=True, help="run configuration file")
    p.add_argument("--format", choices=_FORMATS, default="table")
    p.add_argument("--quad-tol", type=float, default=1e-9, help="relative quadrature tolerance")
    if basis:
        p.add_argument("--basis-order", type=int, default=40, help="highest radial mode order")
    if threads:
        p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spdckit",
        description="Narrow-band photon pair source rates, overlaps and optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sfg", help="focusing integral and conversion efficiency")
    _add_common(p)
    p.set_defaults(func=_cmd_sfg)

    p = sub.add_parser("pairs", help="filtered pair rate")
    _add_common(p, basis=True)
    p.set_defaults(func=_cmd_pairs)

    p = sub.add_parser("singles", help="singles rates and heralding efficiencies")
    _add_common(p, basis=True)
    p.set_defaults(func=_cmd_singles)

    p = sub.add_parser("correlation", help="signal-idler correlation trace")
    _add_common(p)
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--tau-max", type=float, default=None, help="half-span in seconds")
    p.set_defaults(func=_cmd_correlation)

    p = sub.add_parser("optimize", help="maximize zeta_R |Upsilon|^2 over focusing")
    p.add_argument("--config", help="take R_k (and hardware translation) from a config")
    p.add_argument("--rk", type=float, default=None, help="wavenumber ratio R_k")
    p.add_argument("--kappa-min", type=float, default=-20.0)
    p.add_argument("--kappa-max", type=float, default=5.0)
    p.add_argument("--zeta-min", type=float, default=0.02)
    p.add_argument("--zeta-max", type=float, default=5.0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--restarts", type=int, default=5)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trace", action="store_true", help="print every evaluation")
    p.add_argument("--format", choices=_FORMATS, default="table")
    p.add_argument("--quad-tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("sweep", help="re-evaluate the source over a parameter grid")
    _add_common(p, basis=True, threads=True)
    p.add_argument(
        "--sweep",
        action="append",
        required=True,
        metavar="NAME=START:STOP:COUNT",
        help=f"axis to sweep (repeatable, max 2); names: {', '.join(AXIS_NAMES)}; "
        "units: z_R mm, Gamma_s/Gamma_i MHz, P_p mW, others dimensionless",
    )
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("validate", help="run the independent oracle suite")
    p.add_argument("--format", choices=_FORMATS, default="table")
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
