"""Minimal dependency-free SVG scatter plots.

One fixed 800x600 viewport, square and dot markers, min/max axis labels.
Coordinates are formatted with fixed precision so identical data produces
identical bytes; the CSV companion file always carries the full-precision
data, the SVG exists for eyeballs only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WIDTH, HEIGHT, MARGIN = 800.0, 600.0, 60.0


@dataclass(frozen=True)
class Series:
    label: str
    marker: str  # "dot" | "square"
    x: np.ndarray
    y: np.ndarray


def svg_scatter(series: list[Series], title: str, meta: list[str]) -> str:
    xs = np.concatenate([s.x for s in series if s.x.size]) if series else np.array([0.0])
    ys = np.concatenate([s.y for s in series if s.y.size]) if series else np.array([0.0])
    x_lo, x_hi = float(np.min(xs)), float(np.max(xs))
    y_lo, y_hi = float(np.min(ys)), float(np.max(ys))
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0

    def px(x: float) -> float:
        return MARGIN + (x - x_lo) / x_span * (WIDTH - 2 * MARGIN)

    def py(y: float) -> float:
        return HEIGHT - MARGIN - (y - y_lo) / y_span * (HEIGHT - 2 * MARGIN)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" '
             f'height="{HEIGHT:.0f}" viewBox="0 0 {WIDTH:.0f} {HEIGHT:.0f}">']
    parts.append("<!--")
    parts.extend(f"  {m}" for m in meta)
    parts.append("-->")
    parts.append(f'<rect width="{WIDTH:.0f}" height="{HEIGHT:.0f}" fill="white"/>')
    parts.append(f'<text x="{WIDTH / 2:.1f}" y="25" text-anchor="middle" '
                 f'font-size="16">{title}</text>')
    ax = (f'M {MARGIN:.1f} {MARGIN:.1f} L {MARGIN:.1f} {HEIGHT - MARGIN:.1f} '
          f'L {WIDTH - MARGIN:.1f} {HEIGHT - MARGIN:.1f}')
    parts.append(f'<path d="{ax}" stroke="black" fill="none"/>')
    for val, x, y, anchor in ((x_lo, px(x_lo), HEIGHT - MARGIN + 18, "middle"),
                              (x_hi, px(x_hi), HEIGHT - MARGIN + 18, "middle")):
        parts.append(f'<text x="{x:.1f}" y="{y:.1f}" text-anchor="{anchor}" '
                     f'font-size="11">{val:.4g}</text>')
    for val, y in ((y_lo, py(y_lo)), (y_hi, py(y_hi))):
        parts.append(f'<text x="{MARGIN - 6:.1f}" y="{y + 4:.1f}" text-anchor="end" '
                     f'font-size="11">{val:.4g}</text>')
    colors = {"dot": "#1f4e98", "square": "#b03030"}
    for s in series:
        color = colors.get(s.marker, "#333333")
        for xv, yv in zip(s.x, s.y):
            cx, cy = px(float(xv)), py(float(yv))
            if s.marker == "square":
                parts.append(f'<rect x="{cx - 2.5:.2f}" y="{cy - 2.5:.2f}" width="5" '
                             f'height="5" fill="{color}"/>')
            else:
                parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="2.2" '
                             f'fill="{color}"/>')
    legend_y = MARGIN / 2 + 20
    for i, s in enumerate(series):
        color = colors.get(s.marker, "#333333")
        parts.append(f'<circle cx="{MARGIN + 10 + 150 * i:.1f}" cy="{legend_y:.1f}" '
                     f'r="3" fill="{color}"/>')
        parts.append(f'<text x="{MARGIN + 18 + 150 * i:.1f}" y="{legend_y + 4:.1f}" '
                     f'font-size="12">{s.label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
