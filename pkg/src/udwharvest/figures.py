"""Matplotlib renderings of scan products, written next to the CSV payloads.

Figures are a reporting convenience on top of the delimited output, never a
data source; everything shown is recomputable from the CSV + manifest.
"""

from __future__ import annotations

import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .core import Scenario


def _criterion_overlays(ax, w_axis, scenario):
    w = np.asarray(w_axis)
    if scenario in (Scenario.PARALLEL, Scenario.DESITTER):
        ax.plot(2 * np.sin(w), w, color="tab:green", lw=1.2, label="closed criterion")
    elif scenario is Scenario.THERMAL:
        # boundary of (a/2) tanh(a/2) = sin^2 w, solved coarsely for display
        from .scan import boundary_trace
        ws = np.linspace(w.min(), w.max(), 60)
        bs = [boundary_trace(Scenario.THERMAL, float(x)) for x in ws]
        ax.plot(bs, ws, color="tab:red", lw=1.2, label="closed criterion")
    ax.plot(2 * w, w, color="tab:blue", lw=1.0, ls="--", label="inertial line a = 2w")


def negativity_map(grid, path):
    """Region map of the scan: entangled cells shaded by log10 |X~| - log10 A~
    scale, overlaid with the closed boundaries and the critical-distance curve."""
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    n = np.array(grid.negativity, dtype=float)
    ent = np.array(grid.entangled, dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        shade = np.where(ent, grid.log10_abs_x, np.nan)
    mesh = ax.pcolormesh(grid.a_axis, grid.w_axis, shade, shading="nearest",
                         cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=r"log10 |X~| (entangled cells)")
    _criterion_overlays(ax, grid.w_axis, grid.scenario)
    if grid.scenario is Scenario.ANTIPARALLEL:
        w = np.asarray(grid.w_axis)
        ax.plot(2 * (1 - np.cos(w)), w, color="tab:orange", lw=1.4,
                label="critical distance")
    ax.set_xlabel(r"a = L kappa")
    ax.set_ylabel(r"w = kappa sigma^2 Omega")
    ax.set_xlim(grid.a_axis[0], grid.a_axis[-1])
    ax.set_ylim(grid.w_axis[0], grid.w_axis[-1])
    ax.set_title(f"{grid.scenario.value} negativity regions (g = {grid.g:g}, "
                 f"method = {grid.method})")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def corridor_figure(sweep, path):
    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    ax.plot(sweep.deltaL_axis, sweep.re_x, marker="o", ms=3, lw=1.0,
            color="tab:blue")
    ax.axhline(0.0, color="k", lw=0.8)
    if sweep.sign_change_interval is not None:
        lo, hi = sweep.sign_change_interval
        ax.axvspan(lo, hi, color="tab:orange", alpha=0.3, label="sign change")
        ax.legend(fontsize=8)
    ax.set_xlabel("deltaL = L - L_crit")
    ax.set_ylabel("Re X~ (residue-free)")
    ax.set_title(f"coherence corridor: kappa={sweep.kappa:g}, sigma={sweep.sigma:g}, "
                 f"Omega={sweep.omega:g}, L_crit={sweep.L_crit:.4g}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def resonance_figure(locus, path):
    locus = np.asarray(locus)
    fig, ax = plt.subplots(figsize=(5.5, 4.2))
    ax.plot(locus[:, 1], locus[:, 0], color="tab:orange", lw=1.5)
    ax.set_xlabel("a_crit = L_crit kappa")
    ax.set_ylabel("w = kappa sigma^2 Omega")
    ax.set_title("critical-distance curve a = 2 (1 - cos w)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def rangefind_figure(verdicts, path):
    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    dl = [v.deltaL for v in verdicts]
    est = [v.estimate_4_re_x for v in verdicts]
    err = [v.standard_error for v in verdicts]
    colors = ["tab:green" if v.at_critical_distance else "tab:gray" for v in verdicts]
    ax.errorbar(dl, est, yerr=err, fmt="none", ecolor="k", elinewidth=0.8, capsize=2)
    ax.scatter(dl, est, c=colors, zorder=3, s=25)
    ax.plot(dl, [4 * v.true_re_x for v in verdicts], color="tab:blue", lw=1.0,
            label="4 Re X (exact)")
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xlabel("deltaL = L - L_crit")
    ax.set_ylabel("estimated 4 Re X")
    ax.set_title("corridor rangefinding verdicts (green: at critical distance)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
