"""Command-line interface.

Subcommands: state, sweep-z, sweep-states, profile, plane. Sweeps write CSV
(or JSON records) with a fixed column set documented in docs/csv-schema.md;
single-state reports are JSON. Exit codes: 0 success, 2 domain error on the
inputs, 3 quadrature tolerance failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from .errors import DomainError, ToleranceNotMet
from .hydrogenic import KLEIN_Z_LIMIT, QuantumState
from .measures import ratios_from_sets
from .sweeps import (
    MEASURE_COLUMNS,
    PLANE_COLUMNS,
    PROFILE_COLUMNS,
    SweepSpec,
    default_jobs,
    enumerate_states,
    measure_set_cached,
    parse_state_token,
    plane_rows,
    profile_rows,
    rows_to_csv,
    sweep_measure_rows,
)

STATE_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["input", "results"],
    "additionalProperties": False,
    "properties": {
        "input": {
            "type": "object",
            "required": ["z", "n", "l", "j", "mj", "kappa", "frameworks",
                         "rel_tol", "abs_tol"],
            "additionalProperties": False,
            "properties": {
                "z": {"type": "number", "exclusiveMinimum": 0},
                "n": {"type": "integer", "minimum": 1},
                "l": {"type": "integer", "minimum": 0},
                "j": {"type": "number"},
                "mj": {"type": "number"},
                "kappa": {"type": "integer"},
                "frameworks": {"type": "array", "items": {"type": "string"}},
                "rel_tol": {"type": "number"},
                "abs_tol": {"type": "number"},
            },
        },
        "results": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["energy", "binding", "S", "D", "I", "J",
                             "C_LMC", "C_FS", "fisher_divergent", "quad_errors"],
                "additionalProperties": False,
                "properties": {
                    "energy": {"type": "number"},
                    "binding": {"type": "number"},
                    "S": {"type": "number"},
                    "D": {"type": ["number", "null"]},
                    "I": {"type": ["number", "null"]},
                    "J": {"type": ["number", "null"]},
                    "C_LMC": {"type": ["number", "null"]},
                    "C_FS": {"type": ["number", "null"]},
                    "fisher_divergent": {"type": "boolean"},
                    "quad_errors": {"type": "object",
                                    "additionalProperties": {"type": "number"}},
                },
            },
        },
        "ratios": {
            "type": "object",
            "required": ["zeta_LMC", "zeta_FS"],
            "additionalProperties": False,
            "properties": {
                "zeta_LMC": {"type": ["number", "null"]},
                "zeta_FS": {"type": ["number", "null"]},
            },
        },
    },
}


def _add_tolerance_args(p: argparse.ArgumentParser):
    p.add_argument("--rel-tol", type=float, default=1e-10,
                   help="relative quadrature tolerance (default 1e-10)")
    p.add_argument("--abs-tol", type=float, default=1e-14,
                   help="absolute quadrature tolerance (default 1e-14)")


def _add_output_args(p: argparse.ArgumentParser, default_format: str):
    p.add_argument("--out", type=str, default=None,
                   help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=default_format)


def _add_state_args(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--j", type=float, required=True)
    p.add_argument("--mj", type=float, default=None,
                   help="magnetic quantum number (default: j)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracinfo",
        description="Complexity measures of Dirac and Schrodinger hydrogenic states")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="single-state report (JSON)")
    p.add_argument("--Z", type=float, required=True)
    _add_state_args(p)
    p.add_argument("--framework", choices=("dirac", "schrodinger", "both"),
                   default="both")
    _add_tolerance_args(p)
    _add_output_args(p, "json")

    p = sub.add_parser("sweep-z", help="measures along a nuclear-charge grid")
    p.add_argument("--z-from", type=float, required=True)
    p.add_argument("--z-to", type=float, required=True)
    p.add_argument("--z-steps", type=int, required=True)
    p.add_argument("--states", type=str, default="1s",
                   help="comma list of tokens like 1s,2p,3d-:0.5")
    p.add_argument("--n-max", type=int, default=None,
                   help="use the full catalog with n <= N instead of --states")
    p.add_argument("--framework", choices=("dirac", "schrodinger", "both"),
                   default="both")
    p.add_argument("--jobs", type=int, default=None)
    _add_tolerance_args(p)
    _add_output_args(p, "csv")

    p = sub.add_parser("sweep-states", help="measures for all states with n <= n-max")
    p.add_argument("--Z", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--framework", choices=("dirac", "schrodinger", "both"),
                   default="both")
    p.add_argument("--jobs", type=int, default=None)
    _add_tolerance_args(p)
    _add_output_args(p, "csv")

    p = sub.add_parser("profile", help="radial distribution and Fisher kernels on a grid")
    p.add_argument("--Z", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--j", type=float, required=True)
    p.add_argument("--r-min", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True)
    p.add_argument("--points", type=int, default=500)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    _add_tolerance_args(p)
    _add_output_args(p, "csv")

    p = sub.add_parser("plane", help="information-plane dataset (m_j = j = l + 1/2)")
    p.add_argument("--Z", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--framework", choices=("dirac", "schrodinger"), default="dirac")
    p.add_argument("--jobs", type=int, default=None)
    _add_tolerance_args(p)
    _add_output_args(p, "csv")
    return parser


def _write(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _frameworks(arg: str) -> tuple[str, ...]:
    return ("dirac", "schrodinger") if arg == "both" else (arg,)


def _check_z(z: float):
    if z <= 0.0:
        raise DomainError(f"Z must be positive, got Z={z}")
    if z >= KLEIN_Z_LIMIT:
        raise DomainError(f"Z >= 137 (Klein regime), got Z={z}")


def cmd_state(args) -> int:
    _check_z(args.Z)
    state = QuantumState.from_nlj(args.n, args.l, args.j, args.mj)
    frameworks = _frameworks(args.framework)
    results = {}
    sets = {}
    for fw in frameworks:
        ms = measure_set_cached(args.Z, state, fw, args.rel_tol, args.abs_tol)
        sets[fw] = ms
        results[fw] = {
            "energy": ms.energy,
            "binding": ms.binding,
            "S": ms.s,
            "D": ms.d,
            "I": ms.i,
            "J": ms.j,
            "C_LMC": ms.c_lmc,
            "C_FS": ms.c_fs,
            "fisher_divergent": ms.fisher_divergent,
            "quad_errors": ms.quad_errors,
        }
    report = {
        "input": {
            "z": args.Z, "n": state.n, "l": state.l, "j": state.j,
            "mj": state.m_j, "kappa": state.kappa,
            "frameworks": list(frameworks),
            "rel_tol": args.rel_tol, "abs_tol": args.abs_tol,
        },
        "results": results,
    }
    if len(frameworks) == 2:
        ratios = ratios_from_sets(sets["dirac"], sets["schrodinger"])
        report["ratios"] = {"zeta_LMC": ratios.zeta_lmc, "zeta_FS": ratios.zeta_fs}
    if args.format == "json":
        _write(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    else:
        spec = SweepSpec(z_values=(args.Z,), states=(state,), frameworks=frameworks,
                         rel_tol=args.rel_tol, abs_tol=args.abs_tol, jobs=1)
        _write(rows_to_csv(MEASURE_COLUMNS, sweep_measure_rows(spec)), args.out)
    return 0


def _sweep_states_arg(args) -> tuple[QuantumState, ...]:
    if args.n_max is not None:
        return enumerate_states(args.n_max)
    return tuple(parse_state_token(tok) for tok in args.states.split(","))


def _emit_rows(columns, rows, args) -> int:
    if args.format == "csv":
        _write(rows_to_csv(columns, rows), args.out)
    else:
        _write(json.dumps([{c: (row[c] if row[c] != "" else None) for c in columns}
                           for row in rows], indent=2) + "\n", args.out)
    return 0


def cmd_sweep_z(args) -> int:
    if args.z_steps < 1:
        raise DomainError("--z-steps must be >= 1")
    zs = np.linspace(args.z_from, args.z_to, args.z_steps)
    for z in zs:
        _check_z(float(z))
    spec = SweepSpec(
        z_values=tuple(float(z) for z in zs),
        states=_sweep_states_arg(args),
        frameworks=_frameworks(args.framework),
        rel_tol=args.rel_tol, abs_tol=args.abs_tol,
        jobs=args.jobs if args.jobs is not None else default_jobs(),
    )
    return _emit_rows(MEASURE_COLUMNS, sweep_measure_rows(spec), args)


def cmd_sweep_states(args) -> int:
    _check_z(args.Z)
    spec = SweepSpec(
        z_values=(args.Z,),
        states=enumerate_states(args.n_max),
        frameworks=_frameworks(args.framework),
        rel_tol=args.rel_tol, abs_tol=args.abs_tol,
        jobs=args.jobs if args.jobs is not None else default_jobs(),
    )
    return _emit_rows(MEASURE_COLUMNS, sweep_measure_rows(spec), args)


def cmd_profile(args) -> int:
    _check_z(args.Z)
    state = QuantumState.from_nlj(args.n, args.l, args.j)
    if args.r_min <= 0.0 or args.r_max <= args.r_min:
        raise DomainError("need 0 < r-min < r-max")
    if args.points < 2:
        raise DomainError("--points must be >= 2")
    if args.spacing == "log":
        grid = np.geomspace(args.r_min, args.r_max, args.points)
    else:
        grid = np.linspace(args.r_min, args.r_max, args.points)
    rows = profile_rows(args.Z, state, grid, args.rel_tol, args.abs_tol)
    return _emit_rows(PROFILE_COLUMNS, rows, args)


def cmd_plane(args) -> int:
    _check_z(args.Z)
    rows = plane_rows(args.Z, args.n_max, args.framework,
                      args.rel_tol, args.abs_tol,
                      args.jobs if args.jobs is not None else default_jobs())
    return _emit_rows(PLANE_COLUMNS, rows, args)


_HANDLERS = {
    "state": cmd_state,
    "sweep-z": cmd_sweep_z,
    "sweep-states": cmd_sweep_states,
    "profile": cmd_profile,
    "plane": cmd_plane,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except ToleranceNotMet as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
