"""Bin-averaged heatmaps written as standalone SVG."""

from xml.sax.saxutils import escape

import numpy as np

from .errors import NoData

# fixed linear scale: dark blue -> light yellow
_STOPS = np.array([[0.0, 68, 1, 84], [0.25, 59, 82, 139], [0.5, 33, 145, 140],
                   [0.75, 94, 201, 98], [1.0, 253, 231, 37]])


def color(t):
    t = float(np.clip(t, 0.0, 1.0))
    rgb = [np.interp(t, _STOPS[:, 0], _STOPS[:, k]) for k in (1, 2, 3)]
    return "#{:02x}{:02x}{:02x}".format(*(int(round(c)) for c in rgb))


def bin_means(x, y, z, nx, ny, xrange=None, yrange=None):
    """Mean of ``z`` over a regular ``nx x ny`` grid; empty bins are ``nan``."""
    x, y, z = (np.asarray(a, dtype=float) for a in (x, y, z))
    keep = np.isfinite(x) & np.isfinite(y) & np.isfinite(z)
    x, y, z = x[keep], y[keep], z[keep]
    if x.size == 0:
        raise NoData("no finite rows to bin")
    x0, x1 = xrange or (x.min(), x.max())
    y0, y1 = yrange or (y.min(), y.max())
    if x1 <= x0:
        x1 = x0 + 1.0
    if y1 <= y0:
        y1 = y0 + 1.0
    ix = np.clip(((x - x0) / (x1 - x0) * nx).astype(int), 0, nx - 1)
    iy = np.clip(((y - y0) / (y1 - y0) * ny).astype(int), 0, ny - 1)
    sums = np.zeros((nx, ny))
    counts = np.zeros((nx, ny))
    np.add.at(sums, (ix, iy), z)
    np.add.at(counts, (ix, iy), 1)
    with np.errstate(invalid="ignore"):
        means = sums / counts
    return means, (x0, x1), (y0, y1)


def render_svg(means, xr, yr, xlabel, ylabel, title="", vrange=None, cell=8):
    """SVG text for a grid of bin means, with the bin table embedded as metadata."""
    nx, ny = means.shape
    finite = means[np.isfinite(means)]
    vmin, vmax = vrange or (float(finite.min()), float(finite.max()))
    span = vmax - vmin if vmax > vmin else 1.0
    left, top = 60, 30
    width, height = nx * cell, ny * cell
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{left + width + 90}" height="{top + height + 50}">',
        f'<title>{escape(title)}</title>',
        "<metadata>",
        "bins " + " ".join(f"{v:.12g}" for v in means.ravel()),
        "</metadata>",
    ]
    for i in range(nx):
        for j in range(ny):
            v = means[i, j]
            if not np.isfinite(v):
                continue
            yy = top + (ny - 1 - j) * cell
            parts.append(f'<rect x="{left + i * cell}" y="{yy}" width="{cell}" height="{cell}" '
                         f'fill="{color((v - vmin) / span)}"/>')
    parts.append(f'<rect x="{left}" y="{top}" width="{width}" height="{height}" fill="none" stroke="black"/>')
    parts.append(f'<text x="{left + width / 2}" y="{top + height + 35}" text-anchor="middle">{escape(xlabel)}</text>')
    parts.append(f'<text x="15" y="{top + height / 2}" transform="rotate(-90 15 {top + height / 2})" '
                 f'text-anchor="middle">{escape(ylabel)}</text>')
    parts.append(f'<text x="{left}" y="{top + height + 15}" font-size="10">{xr[0]:.3g}</text>')
    parts.append(f'<text x="{left + width}" y="{top + height + 15}" font-size="10" text-anchor="end">{xr[1]:.3g}</text>')
    parts.append(f'<text x="{left - 4}" y="{top + height}" font-size="10" text-anchor="end">{yr[0]:.3g}</text>')
    parts.append(f'<text x="{left - 4}" y="{top + 10}" font-size="10" text-anchor="end">{yr[1]:.3g}</text>')
    # color bar
    bar_x = left + width + 20
    for k in range(50):
        parts.append(f'<rect x="{bar_x}" y="{top + height - (k + 1) * height / 50:.2f}" width="15" '
                     f'height="{height / 50 + 0.5:.2f}" fill="{color(k / 49)}"/>')
    parts.append(f'<text x="{bar_x + 20}" y="{top + height}" font-size="10">{vmin:.3g}</text>')
    parts.append(f'<text x="{bar_x + 20}" y="{top + 10}" font-size="10">{vmax:.3g}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_heatmap(rows, xcol, ycol, zcol, out_path, nx=64, ny=64, title=None):
    """Bin ``rows`` (dicts) on ``(xcol, ycol)``, colour by mean ``zcol``, write SVG; returns the bin means."""
    rows = list(rows)
    if not rows:
        raise NoData("no rows to plot")
    missing = [c for c in (xcol, ycol, zcol) if c not in rows[0]]
    if missing:
        raise KeyError(f"missing columns: {', '.join(missing)}")
    x = [r[xcol] for r in rows]
    y = [r[ycol] for r in rows]
    z = [r[zcol] for r in rows]
    means, xr, yr = bin_means(x, y, z, nx, ny)
    svg = render_svg(means, xr, yr, xcol, ycol, title or f"{zcol} by {xcol}, {ycol}")
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    return means
