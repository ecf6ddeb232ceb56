"""Deterministic result emission: CSV tables, SVG plots, metadata blocks.

CSV is the canonical output: fixed column order, 9 significant digits,
'\\n' line endings, empty cells for unavailable values, no timestamps.
Re-running a command over the same inputs reproduces every byte.  SVG
plots are a convenience rendering of the same data; version information
goes into a separate metadata JSON, never into the data files.
"""

from __future__ import annotations

import json
from pathlib import Path


def fmt(value) -> str:
    """Format one CSV cell: 9 significant digits, empty for missing."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if value != value:  # nan
            return ""
        return f"{value:.9g}"
    return str(value)


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        cells = [fmt(v) for v in row]
        for cell in cells:
            if "," in cell or "\n" in cell:
                raise ValueError(f"CSV cell would need quoting: {cell!r}")
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_meta(path, payload: dict) -> Path:
    """Version and provenance live here, outside the data files."""
    from . import __version__

    path = Path(path)
    meta = {"wingwrap_version": __version__, **payload}
    path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    matplotlib.rcParams["svg.hashsalt"] = "wingwrap"
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    import matplotlib.pyplot as plt

    plt.close(fig)


def sweep_heatmaps(cells, diameters, mu_values, out_dir, stem="sweep") -> list[Path]:
    """Three heatmaps over the (diameter, mu_static) grid."""
    import numpy as np

    plt = _pyplot()
    by_key = {(c.diameter, c.mu_static): c for c in cells}
    panels = [
        ("squeeze_force", "Net squeeze force by the wings [N]"),
        ("max_payload", "Maximum static payload [kg]"),
        ("vertical_fraction", "Vertical share of the friction force"),
    ]
    paths = []
    for attr, title in panels:
        grid = np.full((len(mu_values), len(diameters)), np.nan)
        for j, d in enumerate(diameters):
            for i, mu in enumerate(mu_values):
                cell = by_key[(d, mu)]
                grid[i, j] = getattr(cell, attr)
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        mesh = ax.pcolormesh(np.array(diameters) * 1e3, np.array(mu_values), grid,
                             shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax)
        ax.set_xlabel("pole diameter [mm]")
        ax.set_ylabel("static friction coefficient")
        ax.set_title(title)
        path = Path(out_dir) / f"{stem}_{attr}.svg"
        _save(fig, path)
        paths.append(path)
    return paths


def prediction_plot(rows, out_dir, stem="predict") -> Path:
    """Bar chart of predicted maximum supported mass per pole."""
    plt = _pyplot()
    labels = [(r.pole.label or f"{r.pole.diameter * 1e3:.0f}mm")
              + ("*" if r.below_model_min else "") for r in rows]
    values = [0.0 if r.predicted_total_mass != r.predicted_total_mass
              else r.predicted_total_mass for r in rows]
    fig, ax = plt.subplots(figsize=(7.2, 4.0))
    ax.bar(range(len(rows)), values, color="#4878a8")
    ax.set_xticks(range(len(rows)), labels)
    ax.set_ylabel("predicted max supported mass [kg]")
    ax.set_title("Static perch capacity per pole ('*' = below model minimum diameter)")
    path = Path(out_dir) / f"{stem}.svg"
    _save(fig, path)
    return path


def segmentation_plot(results, pole_labels, out_dir, stem="design") -> Path:
    """Grouped bars: per-pole payload for each segmentation candidate."""
    import numpy as np

    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8.0, 4.2))
    n_poles = len(pole_labels)
    width = 0.8 / max(len(results), 1)
    for k, res in enumerate(results):
        offset = (k - (len(results) - 1) / 2) * width
        ax.bar(np.arange(n_poles) + offset, res.payloads, width,
               label=res.config.label)
    ax.set_xticks(range(n_poles), pole_labels)
    ax.set_ylabel("max static payload [kg]")
    ax.set_title("Wing segmentation comparison")
    ax.legend(title="segment width")
    path = Path(out_dir) / f"{stem}.svg"
    _save(fig, path)
    return path
