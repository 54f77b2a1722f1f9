"""Sweep orchestration: state catalogs, cached evaluation, CSV/JSON rows.

Rows are computed by pure functions of (Z, state, framework, tolerances), so
a sweep is an order-preserving map over its task list; worker count affects
wall time only, never the bytes produced. Radial parts are cached per
(framework, Z, n, kappa) and angular parts per (l, j, |m_j|), which is what
makes full-catalog sweeps cheap: the angular factor is framework-independent
and the radial factor is m_j-independent.
"""
from __future__ import annotations

import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, ToleranceNotMet
from .hydrogenic import (
    FINE_STRUCTURE_ALPHA,
    PhysicalContext,
    QuantumState,
    angular_density,
    schrodinger_energy,
)
from .measures import (
    AngularMeasures,
    MeasureSet,
    RadialMeasures,
    angular_measures,
    build_radial_density,
    compose_measures,
    component_split,
    radial_measures,
    radial_profile,
    ratios_from_sets,
)
from .quadrature import QuadratureConfig

__all__ = [
    "SweepSpec",
    "MEASURE_COLUMNS",
    "PROFILE_COLUMNS",
    "PLANE_COLUMNS",
    "enumerate_states",
    "parse_state_token",
    "measure_set_cached",
    "sweep_measure_rows",
    "profile_rows",
    "plane_rows",
    "rows_to_csv",
]

_SPECTRO = {"s": 0, "p": 1, "d": 2, "f": 3, "g": 4, "h": 5, "i": 6, "k": 7}

MEASURE_COLUMNS = (
    "z", "n", "l", "j", "mj", "kappa", "framework", "energy", "binding",
    "S", "D", "I", "J", "C_LMC", "C_FS", "zeta_LMC", "zeta_FS",
    "S_err", "D_err", "I_err", "status",
)
PROFILE_COLUMNS = (
    "r", "d_schrodinger", "d_dirac", "i_kernel_schrodinger", "i_kernel_dirac",
    "r2g2", "r2f2",
)
PLANE_COLUMNS = (
    "z", "n", "l", "j", "mj", "kappa", "framework",
    "D", "exp_S", "I", "J", "C_LMC", "C_FS", "lmc_bound", "fs_bound",
)


@dataclass(frozen=True)
class SweepSpec:
    z_values: tuple[float, ...]
    states: tuple[QuantumState, ...]
    frameworks: tuple[str, ...] = ("dirac", "schrodinger")
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    jobs: int = 1

    def __post_init__(self):
        if not self.z_values or not self.states:
            raise DomainError("sweep needs at least one Z value and one state")
        for fw in self.frameworks:
            if fw not in ("dirac", "schrodinger"):
                raise DomainError(f"unknown framework {fw!r}")


def enumerate_states(n_max: int, mj: str = "all") -> tuple[QuantumState, ...]:
    """Canonically ordered catalog of states with n <= n_max.

    mj: "all" for every magnetic substate, "stretched" for m_j = j only.
    """
    if n_max < 1 or n_max > 8:
        raise DomainError(f"n_max must be in 1..8, got {n_max}")
    out = []
    for n in range(1, n_max + 1):
        for l in range(0, n):
            js = [l - 0.5, l + 0.5] if l >= 1 else [0.5]
            for j in js:
                if mj == "stretched":
                    mjs = [j]
                else:
                    mjs = [-j + i for i in range(int(round(2 * j)) + 1)]
                for m in mjs:
                    out.append(QuantumState.from_nlj(n, l, j, m))
    return tuple(out)


def parse_state_token(token: str) -> QuantumState:
    """Spectroscopic shorthand: '2s', '3p-', '4d:1.5' (':mj' optional).

    A trailing '-' selects j = l - 1/2; the default is j = l + 1/2. Without
    ':mj' the stretched substate m_j = j is used.
    """
    m = re.fullmatch(r"(\d+)([a-z])(-?)(?::(-?\d+(?:\.\d+)?|-?\d+/2))?", token.strip().lower())
    if not m:
        raise DomainError(f"cannot parse state token {token!r}")
    n = int(m.group(1))
    letter = m.group(2)
    if letter not in _SPECTRO:
        raise DomainError(f"unknown orbital letter {letter!r} in {token!r}")
    l = _SPECTRO[letter]
    j = l - 0.5 if m.group(3) else l + 0.5
    m_j: Optional[float] = None
    if m.group(4):
        frac = m.group(4)
        m_j = float(frac.split("/")[0]) / 2.0 if frac.endswith("/2") else float(frac)
    return QuantumState.from_nlj(n, l, j, m_j)


# --- cached pure evaluation ---------------------------------------------------

@lru_cache(maxsize=4096)
def _radial_cached(framework: str, z: float, n: int, kappa: int,
                   rel_tol: float, abs_tol: float, alpha: float) -> RadialMeasures:
    state = QuantumState(n=n, kappa=kappa, m_j=abs(kappa) - 0.5)
    ctx = PhysicalContext.for_state(z, state, alpha)
    rad = build_radial_density(ctx, state, framework)
    cfg = QuadratureConfig(rel_tol=rel_tol, abs_tol=abs_tol)
    return radial_measures(rad, cfg)


@lru_cache(maxsize=4096)
def _angular_cached(l: int, two_j: int, two_mj_abs: int,
                    rel_tol: float, abs_tol: float) -> AngularMeasures:
    # |m_j| -> m_j: the polar density is invariant under m_j sign flip
    state = QuantumState.from_nlj(l + 1, l, two_j / 2.0, two_mj_abs / 2.0)
    cfg = QuadratureConfig(rel_tol=rel_tol, abs_tol=abs_tol)
    return angular_measures(angular_density(state), cfg)


def measure_set_cached(z: float, state: QuantumState, framework: str,
                       rel_tol: float = 1e-10, abs_tol: float = 1e-14,
                       alpha: float = FINE_STRUCTURE_ALPHA) -> MeasureSet:
    # the Schrodinger radial part depends on l only, so both j partners of an
    # (n, l) pair share one cache entry (and bitwise-identical values)
    kappa_key = -(state.l + 1) if framework == "schrodinger" else state.kappa
    rm = _radial_cached(framework, float(z), state.n, kappa_key, rel_tol, abs_tol, alpha)
    am = _angular_cached(state.l, round(2 * state.j), abs(round(2 * state.m_j)),
                         rel_tol, abs_tol)
    if framework == "dirac":
        ctx = PhysicalContext.for_state(z, state, alpha)
        energy, binding = ctx.energy, ctx.binding
    else:
        energy = schrodinger_energy(z, state.n)
        binding = -energy
    return compose_measures(framework, float(z), state, energy, binding, rm, am)


# --- row building --------------------------------------------------------------

def _fmt(v) -> str:
    return format(v, ".11e")


def _measure_cell(v, divergent: bool) -> str:
    if v is None:
        return "divergent" if divergent else ""
    return _fmt(v)


def _rows_for_state(z: float, state: QuantumState, frameworks: Sequence[str],
                    rel_tol: float, abs_tol: float) -> list[dict]:
    sets = {}
    status = {}
    for fw in frameworks:
        try:
            sets[fw] = measure_set_cached(z, state, fw, rel_tol, abs_tol)
            status[fw] = "fisher_divergent" if sets[fw].fisher_divergent else "ok"
            if sets[fw].d is None:
                status[fw] = "divergent"
        except ToleranceNotMet as exc:
            sets[fw] = None
            status[fw] = f"error: {exc}"
    if len(frameworks) == 2 and all(sets.get(fw) for fw in ("dirac", "schrodinger")):
        ratios = ratios_from_sets(sets["dirac"], sets["schrodinger"])
    else:
        ratios = None
    rows = []
    for fw in frameworks:
        ms = sets[fw]
        row = {
            "z": format(z, ".10g"),
            "n": str(state.n),
            "l": str(state.l),
            "j": format(state.j, "g"),
            "mj": format(state.m_j, "g"),
            "kappa": str(state.kappa),
            "framework": fw,
            "status": status[fw],
        }
        if ms is None:
            for col in ("energy", "binding", "S", "D", "I", "J", "C_LMC", "C_FS",
                        "zeta_LMC", "zeta_FS", "S_err", "D_err", "I_err"):
                row[col] = ""
            rows.append(row)
            continue
        div = ms.fisher_divergent
        row.update({
            "energy": _fmt(ms.energy),
            "binding": _fmt(ms.binding),
            "S": _fmt(ms.s),
            "D": _measure_cell(ms.d, ms.d is None),
            "I": _measure_cell(ms.i, div),
            "J": _measure_cell(ms.j, div),
            "C_LMC": _measure_cell(ms.c_lmc, ms.c_lmc is None),
            "C_FS": _measure_cell(ms.c_fs, div),
            "S_err": _fmt(ms.quad_errors.get("S", 0.0)),
            "D_err": _fmt(ms.quad_errors["D"]) if "D" in ms.quad_errors else "divergent",
            "I_err": _fmt(ms.quad_errors["I"]) if "I" in ms.quad_errors else (
                "divergent" if div else ""),
        })
        if ratios is None:
            row["zeta_LMC"] = ""
            row["zeta_FS"] = ""
        else:
            row["zeta_LMC"] = _measure_cell(ratios.zeta_lmc, ratios.zeta_lmc is None)
            row["zeta_FS"] = _measure_cell(ratios.zeta_fs, ratios.zeta_fs is None)
        rows.append(row)
    return rows


def _task(args) -> list[dict]:
    z, state, frameworks, rel_tol, abs_tol = args
    return _rows_for_state(z, state, frameworks, rel_tol, abs_tol)


def _run_tasks(tasks: list, jobs: int) -> list[list[dict]]:
    if jobs <= 1 or len(tasks) <= 1:
        return [_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(tasks) // (4 * jobs))
        return list(pool.map(_task, tasks, chunksize=chunk))


def sweep_measure_rows(spec: SweepSpec) -> list[dict]:
    """One row per (Z, state, framework), canonically ordered."""
    tasks = [(z, state, tuple(spec.frameworks), spec.rel_tol, spec.abs_tol)
             for z in spec.z_values for state in spec.states]
    out: list[dict] = []
    for rows in _run_tasks(tasks, spec.jobs):
        out.extend(rows)
    return out


def profile_rows(z: float, state: QuantumState, grid: np.ndarray,
                 rel_tol: float = 1e-10, abs_tol: float = 1e-14) -> list[dict]:
    """Radial distribution and Fisher kernels of both frameworks on a grid."""
    ctx = PhysicalContext.for_state(z, state)
    prof_s = radial_profile(ctx, state, "schrodinger", grid)
    prof_d = radial_profile(ctx, state, "dirac", grid)
    r2g2, r2f2 = component_split(ctx, state, grid)
    rows = []
    for ps, pd, g2, f2 in zip(prof_s, prof_d, r2g2, r2f2):
        rows.append({
            "r": _fmt(ps.r),
            "d_schrodinger": _fmt(ps.d_of_r),
            "d_dirac": _fmt(pd.d_of_r),
            "i_kernel_schrodinger": _fmt(ps.i_kernel),
            "i_kernel_dirac": _fmt(pd.i_kernel),
            "r2g2": _fmt(g2),
            "r2f2": _fmt(f2),
        })
    return rows


def _plane_task(args) -> dict:
    z, state, framework, rel_tol, abs_tol = args
    ms = measure_set_cached(z, state, framework, rel_tol, abs_tol)
    div = ms.fisher_divergent
    return {
        "z": format(z, ".10g"),
        "n": str(state.n),
        "l": str(state.l),
        "j": format(state.j, "g"),
        "mj": format(state.m_j, "g"),
        "kappa": str(state.kappa),
        "framework": framework,
        "D": _measure_cell(ms.d, ms.d is None),
        "exp_S": _fmt(math.exp(ms.s)),
        "I": _measure_cell(ms.i, div),
        "J": _measure_cell(ms.j, div),
        "C_LMC": _measure_cell(ms.c_lmc, ms.c_lmc is None),
        "C_FS": _measure_cell(ms.c_fs, div),
        "lmc_bound": _fmt(1.0),
        "fs_bound": _fmt(3.0),
    }


def plane_rows(z: float, n_max: int, framework: str = "dirac",
               rel_tol: float = 1e-10, abs_tol: float = 1e-14,
               jobs: int = 1) -> list[dict]:
    """Information-plane coordinates for the stretched j = l + 1/2 catalog."""
    states = tuple(QuantumState.from_nlj(n, l, l + 0.5, l + 0.5)
                   for n in range(1, n_max + 1) for l in range(0, n))
    tasks = [(z, state, framework, rel_tol, abs_tol) for state in states]
    if jobs <= 1 or len(tasks) <= 1:
        return [_plane_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_plane_task, tasks))


def rows_to_csv(columns: Sequence[str], rows: list[dict]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(row[c] for c in columns))
    return "\n".join(lines) + "\n"


def default_jobs() -> int:
    return os.cpu_count() or 1
