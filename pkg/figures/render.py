#!/usr/bin/env python3
"""Render publication-style figures from the CLI's CSV outputs.

Thin consumer of the documented CSV schemas (docs/csv-schema.md): no physics
is recomputed here. Divergent cells are tolerated and skipped with a console
note. Recipes fig1..fig9 cover complexities vs nuclear charge (with ratio
insets), relativistic-ratio panels, radial density + Fisher-kernel profiles,
the large/small component split, m_j / energy / kappa dependence, and the
log-log information planes with their rigorous borders.

Usage:
    python figures/render.py --recipe fig3 --in prof_a.csv --in prof_b.csv --out fig3.png
"""
from __future__ import annotations

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


class RecipeError(Exception):
    pass


def read_table(path: str) -> dict[str, np.ndarray]:
    """CSV -> column arrays; non-numeric markers become NaN with a note."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise RecipeError(f"{path}: empty file, no header row")
        rows = list(reader)
    if not rows:
        raise RecipeError(f"{path}: no data rows")
    out: dict[str, np.ndarray] = {}
    skipped = 0
    for name in reader.fieldnames:
        vals = []
        numeric = True
        for row in rows:
            cell = row[name]
            if cell in ("divergent", "", None):
                vals.append(np.nan)
                skipped += cell == "divergent"
            else:
                try:
                    vals.append(float(cell))
                except ValueError:
                    numeric = False
                    break
        if numeric:
            out[name] = np.asarray(vals, dtype=float)
        else:
            out[name] = np.asarray([row[name] for row in rows], dtype=object)
    if skipped:
        print(f"note: {path}: skipped {skipped} divergent cells", file=sys.stderr)
    return out


def need(table: dict, path: str, *columns: str):
    missing = [c for c in columns if c not in table]
    if missing:
        raise RecipeError(f"{path}: missing columns {missing}")


def split_frameworks(t: dict):
    dirac = t["framework"] == "dirac"
    return dirac, ~dirac


def state_key(t: dict, i: int) -> str:
    letters = "spdfghik"
    l = int(t["l"][i])
    tag = letters[l] if l < len(letters) else f"l{l}"
    suffix = "-" if t["j"][i] < l else ""
    return f"{int(t['n'][i])}{tag}{suffix}"


def group_states(t: dict):
    keys = {}
    for i in range(len(t["n"])):
        keys.setdefault((int(t["n"][i]), int(t["l"][i]), float(t["j"][i])), []).append(i)
    return keys


# --- recipes -----------------------------------------------------------------

def fig_complexities_vs_z(tables, paths):
    """Ground-state C_LMC / C_FS against Z with zeta insets (fig1)."""
    (t,), (path,) = tables, paths
    need(t, path, "z", "framework", "C_LMC", "C_FS", "zeta_LMC", "zeta_FS")
    d, s = split_frameworks(t)
    fig, axes = plt.subplots(1, 2, figsize=(10.5, 4.2))
    for ax, col, zcol, title in ((axes[0], "C_LMC", "zeta_LMC", "LMC complexity"),
                                 (axes[1], "C_FS", "zeta_FS", "Fisher-Shannon complexity")):
        ax.plot(t["z"][d], t[col][d], "r-", lw=1.6, label="Dirac")
        ax.plot(t["z"][s], t[col][s], "b--", lw=1.4, label="Schrodinger")
        ax.set_xlabel("Z")
        ax.set_ylabel(col)
        ax.set_title(title)
        ax.legend(loc="upper left", fontsize=8)
        inset = ax.inset_axes([0.58, 0.14, 0.37, 0.34])
        inset.plot(t["z"][d], t[zcol][d], "k-", lw=1.0)
        inset.axhline(0.0, color="0.6", lw=0.6)
        inset.set_title(zcol, fontsize=7)
        inset.tick_params(labelsize=6)
    return fig


def fig_ratios_vs_z(tables, paths):
    """zeta_LMC (left) and zeta_FS (right) against Z per state (fig2)."""
    (t,), (path,) = tables, paths
    need(t, path, "z", "framework", "n", "l", "j", "zeta_LMC", "zeta_FS")
    d, _ = split_frameworks(t)
    idx_d = np.flatnonzero(d)
    fig, axes = plt.subplots(1, 2, figsize=(10.5, 4.2))
    for (n, l, j), rows in group_states(t).items():
        rows = [i for i in rows if i in set(idx_d)]
        if not rows:
            continue
        rows.sort(key=lambda i: t["z"][i])
        z = t["z"][rows]
        label = state_key(t, rows[0])
        axes[0].plot(z, t["zeta_LMC"][rows], marker=".", ms=3, lw=1.1, label=label)
        axes[1].plot(z, t["zeta_FS"][rows], marker=".", ms=3, lw=1.1, label=label)
    for ax, name in zip(axes, ("zeta_LMC", "zeta_FS")):
        ax.axhline(0.0, color="0.6", lw=0.6)
        ax.set_xlabel("Z")
        ax.set_ylabel(name)
        ax.legend(fontsize=8)
    return fig


def _profile_panel(ax, t):
    ax.plot(t["r"], t["d_dirac"], "r-", lw=1.5, label="D(r) Dirac")
    ax.plot(t["r"], t["d_schrodinger"], "b--", lw=1.3, label="D(r) Schrodinger")
    ax.set_xlabel("r (bohr)")
    ax.set_ylabel("D(r)")
    twin = ax.twinx()
    twin.plot(t["r"], t["i_kernel_dirac"], "r-", lw=0.8, alpha=0.55,
              label="Fisher kernel Dirac")
    twin.plot(t["r"], t["i_kernel_schrodinger"], "b--", lw=0.8, alpha=0.55,
              label="Fisher kernel Schrodinger")
    twin.set_ylabel("I_kernel(r)")
    h1, l1 = ax.get_legend_handles_labels()
    h2, l2 = twin.get_legend_handles_labels()
    ax.legend(h1 + h2, l1 + l2, fontsize=7)


def fig_profiles(tables, paths):
    """Radial distributions and Fisher kernels, one panel per input (fig3/fig5)."""
    for t, path in zip(tables, paths):
        need(t, path, "r", "d_schrodinger", "d_dirac",
             "i_kernel_schrodinger", "i_kernel_dirac")
    fig, axes = plt.subplots(1, len(tables), figsize=(5.4 * len(tables), 4.2),
                             squeeze=False)
    for ax, t in zip(axes[0], tables):
        _profile_panel(ax, t)
    return fig


def fig_component_split(tables, paths):
    """r^2 g^2 and r^2 f^2 contributions with a zoom inset (fig4)."""
    (t,), (path,) = tables, paths
    need(t, path, "r", "r2g2", "r2f2")
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.plot(t["r"], t["r2g2"], "r-", lw=1.5, label="r^2 g^2")
    ax.plot(t["r"], t["r2f2"], "b-", lw=1.2, label="r^2 f^2")
    ax.set_xlabel("r (bohr)")
    ax.set_ylabel("component density")
    ax.legend(fontsize=8)
    inset = ax.inset_axes([0.55, 0.45, 0.4, 0.45])
    inset.plot(t["r"], t["r2f2"], "b-", lw=1.0)
    inset.set_title("small component", fontsize=7)
    inset.tick_params(labelsize=6)
    return fig


def fig_ratio_vs_mj(tables, paths):
    """zeta_LMC and zeta_FS against m_j, one column per input charge (fig6)."""
    fig, axes = plt.subplots(2, len(tables), figsize=(5.4 * len(tables), 7.6),
                             squeeze=False)
    for col, (t, path) in enumerate(zip(tables, paths)):
        need(t, path, "z", "framework", "n", "l", "j", "mj", "zeta_LMC", "zeta_FS")
        d, _ = split_frameworks(t)
        idx_d = set(np.flatnonzero(d))
        for (n, l, j), rows in group_states(t).items():
            rows = [i for i in rows if i in idx_d]
            if not rows:
                continue
            rows.sort(key=lambda i: t["mj"][i])
            mj = t["mj"][rows]
            axes[0][col].plot(mj, t["zeta_LMC"][rows], marker="o", ms=2.5, lw=0.8)
            axes[1][col].plot(mj, t["zeta_FS"][rows], marker="o", ms=2.5, lw=0.8)
        z = t["z"][0]
        axes[0][col].set_title(f"Z = {z:g}")
        axes[0][col].set_ylabel("zeta_LMC")
        axes[1][col].set_ylabel("zeta_FS")
        axes[1][col].set_xlabel("m_j")
        axes[1][col].axhline(0.0, color="0.6", lw=0.6)
    return fig


def _dirac_stretched(t):
    d, _ = split_frameworks(t)
    return d & (t["mj"] == t["j"])


def fig_vs_energy(tables, paths):
    """Complexities against binding energy, m_j = j slice (fig7)."""
    (t,), (path,) = tables, paths
    need(t, path, "framework", "n", "l", "j", "mj", "binding", "C_LMC", "C_FS")
    sel = _dirac_stretched(t)
    fig, axes = plt.subplots(1, 2, figsize=(10.5, 4.2))
    for ax, col in ((axes[0], "C_LMC"), (axes[1], "C_FS")):
        for n in sorted(set(int(v) for v in t["n"][sel])):
            rows = np.flatnonzero(sel & (t["n"] == n))
            rows = rows[np.argsort(-t["binding"][rows])]
            ax.plot(-t["binding"][rows], t[col][rows], marker="o", ms=3, lw=0.9,
                    label=f"n={n}")
        ax.set_xlabel("E (hartree)")
        ax.set_ylabel(col)
        ax.legend(fontsize=7)
    return fig


def fig_vs_kappa(tables, paths):
    """Complexities against the Dirac quantum number, m_j = j slice (fig8)."""
    (t,), (path,) = tables, paths
    need(t, path, "framework", "n", "kappa", "j", "mj", "C_LMC", "C_FS")
    sel = _dirac_stretched(t)
    fig, axes = plt.subplots(1, 2, figsize=(10.5, 4.2))
    for ax, col in ((axes[0], "C_LMC"), (axes[1], "C_FS")):
        for n in sorted(set(int(v) for v in t["n"][sel])):
            rows = np.flatnonzero(sel & (t["n"] == n))
            rows = rows[np.argsort(t["kappa"][rows])]
            ax.plot(t["kappa"][rows], t[col][rows], marker="o", ms=3, lw=0.9,
                    label=f"n={n}")
        ax.axvline(-1.0, color="0.6", lw=0.6)
        ax.set_xlabel("kappa")
        ax.set_ylabel(col)
        ax.legend(fontsize=7)
    return fig


def fig_information_planes(tables, paths):
    """Log-log D-e^S and I-J planes with the rigorous borders (fig9)."""
    (t,), (path,) = tables, paths
    need(t, path, "D", "exp_S", "I", "J", "lmc_bound", "fs_bound")
    fig, axes = plt.subplots(1, 2, figsize=(10.5, 4.4))

    ok = np.isfinite(t["D"]) & np.isfinite(t["exp_S"])
    axes[0].loglog(t["exp_S"][ok], t["D"][ok], "o", ms=4, color="tab:red")
    xs = np.geomspace(np.nanmin(t["exp_S"][ok]) / 3, np.nanmax(t["exp_S"][ok]) * 3, 200)
    axes[0].loglog(xs, t["lmc_bound"][0] / xs, "k-", lw=1.2, label="C_LMC = 1")
    axes[0].set_xlabel("e^S")
    axes[0].set_ylabel("D")
    axes[0].set_title("Disequilibrium-Shannon plane")
    axes[0].legend(fontsize=8)

    ok = np.isfinite(t["I"]) & np.isfinite(t["J"])
    if not np.all(ok):
        print(f"note: {path}: {np.count_nonzero(~ok)} divergent points skipped "
              "in the Fisher-Shannon plane", file=sys.stderr)
    axes[1].loglog(t["J"][ok], t["I"][ok], "o", ms=4, color="tab:red")
    xs = np.geomspace(np.nanmin(t["J"][ok]) / 3, np.nanmax(t["J"][ok]) * 3, 200)
    axes[1].loglog(xs, t["fs_bound"][0] / xs, "k-", lw=1.2, label="C_FS = 3")
    axes[1].set_xlabel("J")
    axes[1].set_ylabel("I")
    axes[1].set_title("Fisher-Shannon plane")
    axes[1].legend(fontsize=8)
    return fig


RECIPES = {
    "fig1": (fig_complexities_vs_z, 1),
    "fig2": (fig_ratios_vs_z, 1),
    "fig3": (fig_profiles, 2),
    "fig4": (fig_component_split, 1),
    "fig5": (fig_profiles, 2),
    "fig6": (fig_ratio_vs_mj, 2),
    "fig7": (fig_vs_energy, 1),
    "fig8": (fig_vs_kappa, 1),
    "fig9": (fig_information_planes, 1),
}


def render(recipe: str, inputs: list[str]):
    """Build the matplotlib Figure for a recipe from CSV paths."""
    if recipe not in RECIPES:
        raise RecipeError(f"unknown recipe {recipe!r}; choose from {sorted(RECIPES)}")
    builder, n_inputs = RECIPES[recipe]
    if len(inputs) != n_inputs:
        raise RecipeError(f"{recipe} needs exactly {n_inputs} --in file(s), got {len(inputs)}")
    tables = [read_table(p) for p in inputs]
    return builder(tables, inputs)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--recipe", required=True, choices=sorted(RECIPES))
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="CSV", help="input CSV (repeat for multi-input recipes)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        fig = render(args.recipe, args.inputs)
    except (RecipeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fig.savefig(args.out, dpi=args.dpi, bbox_inches="tight")
    plt.close(fig)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
