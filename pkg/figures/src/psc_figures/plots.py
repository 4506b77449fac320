"""Render bound curves and FER curves to deterministic image files."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .curves import REFERENCES, CurveSpec, group_rows, load_rows

_HASHSALT = "psc-figures"


def _new_figure():
    plt.rcParams["svg.hashsalt"] = _HASHSALT
    return plt.subplots(figsize=(6.4, 4.8), dpi=100)


def _save(fig, out_path: str) -> None:
    fmt = os.path.splitext(out_path)[1].lstrip(".").lower() or "svg"
    if fmt not in ("svg", "png"):
        raise ValueError(f"unsupported output format {fmt!r} (use .svg or .png)")
    metadata = {"Date": None} if fmt == "svg" else None
    fig.savefig(out_path, format=fmt, metadata=metadata)
    plt.close(fig)


def plot_bounds(spec: CurveSpec, out_path: str) -> None:
    """One projected-rate curve per t plus optional channel reference lines."""
    rows = load_rows(spec)
    groups = group_rows(spec, rows)
    fig, ax = _new_figure()
    for key in sorted(groups, key=lambda v: (len(v), v)):
        pts = groups[key]
        ax.plot(
            [float(r[spec.x_column]) for r in pts],
            [float(r[spec.y_column]) for r in pts],
            linewidth=1.2,
            label=f"t={key}",
        )
    for name in spec.references:
        if name not in REFERENCES:
            raise ValueError(f"unknown reference curve {name!r}")
        xs, ys = REFERENCES[name]()
        ax.plot(xs, ys, linestyle="--", color="black", linewidth=0.9,
                label=name.upper())
    ax.set_xlabel("code rate")
    ax.set_ylabel("projected code rate")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.grid(True, linewidth=0.3, alpha=0.6)
    ax.legend(fontsize=7, ncol=2)
    _save(fig, out_path)


def plot_fer(spec: CurveSpec, out_path: str) -> None:
    """Log-scale FER over erasure probability with CI whiskers per point.

    Zero-FER points are clipped to 1/(10*trials) and drawn with an open
    marker so Monte-Carlo floors stay visible.
    """
    rows = load_rows(spec)
    groups = group_rows(spec, rows)
    fig, ax = _new_figure()
    for key in sorted(groups):
        pts = groups[key]
        xs = [float(r[spec.x_column]) for r in pts]
        clip = [1.0 / (10.0 * max(float(r["trials"]), 1.0)) for r in pts]
        raw = [float(r[spec.y_column]) for r in pts]
        ys = [max(v, c) for v, c in zip(raw, clip)]
        low = [max(float(r["ci_low"]), c) for r, c in zip(pts, clip)]
        high = [max(float(r["ci_high"]), c) for r, c in zip(pts, clip)]
        err_lo = [y - lo for y, lo in zip(ys, low)]
        err_hi = [hi - y for y, hi in zip(ys, high)]
        line = ax.errorbar(
            xs, ys, yerr=[err_lo, err_hi],
            marker="o", markersize=3, linewidth=1.1, capsize=2, label=key,
        )
        clipped = [(x, y) for x, y, v in zip(xs, ys, raw) if v < y]
        if clipped:
            color = line.lines[0].get_color()
            ax.plot(
                [x for x, _ in clipped], [y for _, y in clipped],
                linestyle="none", marker="v", markersize=6,
                markerfacecolor="white", markeredgecolor=color,
            )
    ax.set_yscale("log")
    ax.set_xlabel("erasure probability")
    ax.set_ylabel("frame error rate")
    ax.grid(True, which="both", linewidth=0.3, alpha=0.6)
    ax.legend(fontsize=7)
    _save(fig, out_path)
