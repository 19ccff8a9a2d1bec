"""Figure renderers: one function per figure family.

Each renderer reads columns from a sweep CSV and draws heatmaps (2D grids)
or curves (1D sweeps). Panel layouts follow the usual 2x2 arrangement for
the four-quantity figures; styling beyond that is unconstrained. Output is
deterministic for identical CSV input.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvdata import RenderError, SweepData, pivot

TEMP_LABEL = {
    "T1": r"$T_1$ [$\hbar\omega/k_B$]",
    "T2": r"$T_2$ [$\hbar\omega/k_B$]",
    "J": r"$J$ [$\hbar\omega$]",
}

QUANTITY_LABEL = {
    "C_T1": r"$C_{T_1}$ [$k_B$]",
    "C_T2": r"$C_{T_2}$ [$k_B$]",
    "U": r"$U$ [$\hbar\omega$]",
    "S": r"$S$ [$k_B$]",
    "F_gibbs_T1": r"$F(\rho_S, \rho_{th}(T_1))$",
    "F_gibbs_T2": r"$F(\rho_S, \rho_{th}(T_2))$",
}


def _heatmap(ax, data: SweepData, xname: str, yname: str, zname: str):
    xs, ys, grid = pivot(data.floats(xname), data.floats(yname), data.floats(zname))
    mesh = ax.pcolormesh(xs, ys, grid, shading="nearest")
    ax.set_xlabel(TEMP_LABEL.get(xname, xname))
    ax.set_ylabel(TEMP_LABEL.get(yname, yname))
    ax.set_title(QUANTITY_LABEL.get(zname, zname))
    plt.colorbar(mesh, ax=ax)


def _panel_grid(data: SweepData, quantities, xname: str, yname: str, ncols=2):
    nrows = (len(quantities) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(5.0 * ncols, 4.0 * nrows), squeeze=False)
    for ax, name in zip(axes.ravel(), quantities):
        _heatmap(ax, data, xname, yname, name)
    for ax in axes.ravel()[len(quantities):]:
        ax.set_axis_off()
    fig.tight_layout()
    return fig


def _surface_axes(data: SweepData) -> tuple[str, str]:
    axes = data.varying_axes()
    if len(axes) < 2:
        raise RenderError(f"{data.path}: need a 2D grid, found varying axes {axes}")
    return axes[0], axes[1]


def render_fig2(data: SweepData):
    data.require("C_T1", "C_T2", "U", "S")
    x, y = _surface_axes(data)
    return _panel_grid(data, ("C_T1", "C_T2", "U", "S"), x, y)


def render_fig3(data: SweepData):
    data.require("C_T1", "C_T2")
    x, y = _surface_axes(data)
    return _panel_grid(data, ("C_T1", "C_T2"), x, y)


def render_fig4(data: SweepData):
    data.require("C_T1", "C_T2", "J")
    axes = data.varying_axes()
    if "J" not in axes:
        raise RenderError(f"{data.path}: the coupling sweep needs a varying J column")
    temp_axis = next((a for a in axes if a != "J"), None)
    if temp_axis is None:
        raise RenderError(f"{data.path}: no varying temperature axis alongside J")
    return _panel_grid(data, ("C_T1", "C_T2"), temp_axis, "J")


def render_fig5(data: SweepData):
    return render_fig2(data)


def render_fig6(data: SweepData):
    fidelity_columns = [
        name
        for name in ("F_gibbs_T1", "F_gibbs_T2")
        if name in data.columns and not np.all(np.isnan(data.floats(name)))
    ]
    if not fidelity_columns:
        raise RenderError(f"{data.path}: missing column 'F_gibbs_T1'")
    axes = data.varying_axes()
    if len(axes) >= 2:
        return _panel_grid(data, fidelity_columns, axes[0], axes[1])
    if not axes:
        raise RenderError(f"{data.path}: no varying axis to plot against")
    x = data.floats(axes[0])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for name in fidelity_columns:
        ax.plot(x, data.floats(name), marker="o", label=QUANTITY_LABEL[name])
    ax.set_xlabel(TEMP_LABEL.get(axes[0], axes[0]))
    ax.set_ylabel("fidelity")
    ax.legend()
    fig.tight_layout()
    return fig


def render_fig7(data: SweepData):
    pops = data.population_columns()
    if not pops:
        raise RenderError(f"{data.path}: missing column 'p1'")
    axes = data.varying_axes()
    if not axes:
        raise RenderError(f"{data.path}: no varying axis to plot against")
    x = data.floats(axes[0])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for k, name in enumerate(pops, start=1):
        ax.plot(x, data.floats(name), marker="o", label=f"({k})")
    ax.set_xlabel(TEMP_LABEL.get(axes[0], axes[0]))
    ax.set_ylabel("eigenstate population")
    ax.legend(title="by ascending eigenvalue")
    fig.tight_layout()
    return fig


RENDERERS = {
    "fig2": render_fig2,
    "fig3": render_fig3,
    "fig4": render_fig4,
    "fig5": render_fig5,
    "fig6": render_fig6,
    "fig7": render_fig7,
}


def render(csv_path: str, figure: str, out_path: str) -> None:
    """Render one figure analog from a sweep CSV to an image file."""
    if figure not in RENDERERS:
        raise RenderError(f"unknown figure '{figure}'; choose from {sorted(RENDERERS)}")
    data = SweepData.load(csv_path)
    fig = RENDERERS[figure](data)
    try:
        fig.savefig(out_path, dpi=130)
    finally:
        plt.close(fig)
