"""Minimal self-contained SVG line plots and heat maps.

Output is deterministic: coordinates are printed with fixed precision so
identical data gives identical files.
"""
from __future__ import annotations

from html import escape

import numpy as np

WIDTH, HEIGHT, MARGIN = 640, 480, 50


def _num(v: float) -> str:
    return f"{v:.2f}"


def _header(title: str, width: int = WIDTH, height: int = HEIGHT) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">{escape(title)}</text>',
    ]


def _axis_labels(lines: list, x0, x1, y0, y1):
    left, right, top, bottom = MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN
    style = 'font-family="sans-serif" font-size="11"'
    lines.append(f'<text x="{left}" y="{bottom + 16}" {style}>{x0:.3g}</text>')
    lines.append(f'<text x="{right}" y="{bottom + 16}" text-anchor="end" {style}>{x1:.3g}</text>')
    lines.append(f'<text x="{left - 4}" y="{bottom}" text-anchor="end" {style}>{y0:.3g}</text>')
    lines.append(f'<text x="{left - 4}" y="{top + 10}" text-anchor="end" {style}>{y1:.3g}</text>')


def line_plot(x, y, title: str = "") -> str:
    """Polyline plot of y against x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x0, x1 = float(x.min()), float(x.max())
    y0, y1 = float(y.min()), float(y.max())
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0
    left, right, top, bottom = MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN
    px = left + (x - x0) / (x1 - x0) * (right - left)
    py = bottom - (y - y0) / (y1 - y0) * (bottom - top)
    lines = _header(title)
    lines.append(f'<rect x="{left}" y="{top}" width="{right - left}" height="{bottom - top}" '
                 'fill="none" stroke="black"/>')
    if y0 < 0 < y1:
        zy = _num(bottom - (0 - y0) / (y1 - y0) * (bottom - top))
        lines.append(f'<line x1="{left}" y1="{zy}" x2="{right}" y2="{zy}" stroke="gray" stroke-dasharray="4"/>')
    pts = " ".join(f"{_num(a)},{_num(b)}" for a, b in zip(px, py))
    lines.append(f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{pts}"/>')
    _axis_labels(lines, x0, x1, y0, y1)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _colour(t: float) -> str:
    # blue -> white -> red diverging ramp on [0, 1]
    if t < 0.5:
        s = t / 0.5
        r, g, b = int(255 * s), int(255 * s), 255
    else:
        s = (t - 0.5) / 0.5
        r, g, b = 255, int(255 * (1 - s)), int(255 * (1 - s))
    return f"#{r:02x}{g:02x}{b:02x}"


def heat_map(values, extent=(-np.pi, np.pi, -np.pi, np.pi), title: str = "", max_cells: int = 64) -> str:
    """Rect-grid heat map of a 2-D array (first index along x)."""
    v = np.asarray(values, dtype=float)
    step = max(1, int(np.ceil(max(v.shape) / max_cells)))
    v = v[::step, ::step]
    lo, hi = float(v.min()), float(v.max())
    span = hi - lo if hi > lo else 1.0
    nx, ny = v.shape
    left, right, top, bottom = MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN
    cw = (right - left) / nx
    ch = (bottom - top) / ny
    lines = _header(title)
    for i in range(nx):
        for j in range(ny):
            t = (v[i, j] - lo) / span
            lines.append(f'<rect x="{_num(left + i * cw)}" y="{_num(bottom - (j + 1) * ch)}" '
                         f'width="{_num(cw + 0.05)}" height="{_num(ch + 0.05)}" fill="{_colour(t)}"/>')
    _axis_labels(lines, extent[0], extent[1], extent[2], extent[3])
    style = 'font-family="sans-serif" font-size="11"'
    lines.append(f'<text x="{WIDTH - MARGIN}" y="{MARGIN - 6}" text-anchor="end" {style}>'
                 f'min {lo:.4g}, max {hi:.4g}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
