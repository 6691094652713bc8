"""Figures for the report command, written to files with the Agg backend."""

from __future__ import annotations

from pathlib import Path
from typing import List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .algebra import AlgebraCtx  # noqa: E402
from .linalg import Subspace, ideal_generators, ideal_power_step  # noqa: E402
from .simples import oracle_radical, simples  # noqa: E402
from .verify import CheckReport  # noqa: E402

_COLORS = {"pass": "tab:green", "fail": "tab:red", "skipped": "tab:gray"}


def radical_series(rad: Subspace) -> List[int]:
    """Dimensions of rad, rad^2, ... down to 0."""
    gens = ideal_generators(rad)
    dims = [rad.dim]
    power = rad
    while power.dim:
        power = ideal_power_step(power, gens)
        if power.dim == dims[-1]:
            break
        dims.append(power.dim)
    return dims


def plot_radical_series(ctx: AlgebraCtx, path: Path, allow_large: bool = False) -> Path:
    dims = radical_series(oracle_radical(ctx, allow_large))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar(range(1, len(dims) + 1), dims, color="tab:blue")
    for k, d in enumerate(dims, start=1):
        ax.annotate(str(d), (k, d), ha="center", va="bottom", fontsize=8)
    ax.set_xlabel("k")
    ax.set_ylabel("dim rad^k")
    ax.set_title(f"Radical powers of U_{ctx.r}, p={ctx.p}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_radical_pattern(ctx: AlgebraCtx, path: Path, allow_large: bool = False) -> Path:
    rad = oracle_radical(ctx, allow_large)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.imshow(rad.rows != 0, aspect="auto", interpolation="nearest", cmap="Greys")
    ax.set_xlabel("basis monomial (lexicographic in m, a, m')")
    ax.set_ylabel("echelon row")
    ax.set_title(f"Support of the radical basis, dim {rad.dim} of {ctx.dim}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_simple_dims(ctx: AlgebraCtx, path: Path) -> Path:
    mods = simples(ctx)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar([m.lam for m in mods], [m.dim for m in mods], color="tab:purple")
    ax.set_xlabel("highest weight")
    ax.set_ylabel("dim L")
    ax.set_title(f"Simple modules, sum of squares {sum(m.dim ** 2 for m in mods)}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_check_times(reports: Sequence[CheckReport], path: Path) -> Path:
    names, times, colors = [], [], []
    for rep in reports:
        for name, entry in rep.details.get("invariants", {}).items():
            names.append(f"{rep.name}: {name}")
            times.append(max(entry["elapsed_ms"], 0.5))
            colors.append(_COLORS[entry["status"]])
    fig, ax = plt.subplots(figsize=(8, max(3, 0.18 * len(names))))
    y = np.arange(len(names))
    ax.barh(y, times, color=colors)
    ax.set_yticks(y)
    ax.set_yticklabels(names, fontsize=6)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("elapsed ms")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_figures(ctx: AlgebraCtx, reports: Sequence[CheckReport], outdir, allow_large: bool = False) -> List[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"p{ctx.p}_r{ctx.r}"
    paths = [plot_simple_dims(ctx, out / f"{stem}_simples.png")]
    if ctx.dim <= 1000 or allow_large:
        paths.append(plot_radical_series(ctx, out / f"{stem}_radical_series.png", allow_large))
        paths.append(plot_radical_pattern(ctx, out / f"{stem}_radical_support.png", allow_large))
    if reports:
        paths.append(plot_check_times(reports, out / f"{stem}_check_times.png"))
    return paths
