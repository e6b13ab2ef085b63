"""Minimal self-contained SVG line charts."""

from __future__ import annotations

import math
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    step = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 5, 10):
        if raw <= mult * step:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    return [first + i * step for i in range(int((hi - first) / step + 1e-9) + 1)]


def line_chart(series: Mapping[str, Sequence[tuple[float, float]]], title: str = "",
               xlabel: str = "", ylabel: str = "", width: int = 720,
               height: int = 480) -> str:
    """Render each named series as a polyline; points with non-finite y are dropped."""
    margin_l, margin_r, margin_t, margin_b = 70, 150, 40, 50
    pts = [(x, y) for s in series.values() for x, y in s if math.isfinite(y)]
    if not pts:
        raise ValueError("nothing to plot")
    xmin, xmax = min(p[0] for p in pts), max(p[0] for p in pts)
    ymin, ymax = min(p[1] for p in pts), max(p[1] for p in pts)
    if xmax == xmin:
        xmax = xmin + 1.0
    if ymax == ymin:
        ymax = ymin + 1.0
    plot_w = width - margin_l - margin_r
    plot_h = height - margin_t - margin_b

    def sx(x):
        return margin_l + (x - xmin) / (xmax - xmin) * plot_w

    def sy(y):
        return margin_t + (ymax - y) / (ymax - ymin) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin_l}" y="{margin_t}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black"/>',
    ]
    for tx in _ticks(xmin, xmax):
        X = sx(tx)
        out.append(f'<line x1="{X:.2f}" y1="{margin_t + plot_h}" x2="{X:.2f}" '
                   f'y2="{margin_t + plot_h + 5}" stroke="black"/>')
        out.append(f'<text x="{X:.2f}" y="{margin_t + plot_h + 18}" '
                   f'text-anchor="middle">{tx:g}</text>')
    for ty in _ticks(ymin, ymax):
        Y = sy(ty)
        out.append(f'<line x1="{margin_l - 5}" y1="{Y:.2f}" x2="{margin_l}" y2="{Y:.2f}" '
                   'stroke="black"/>')
        out.append(f'<text x="{margin_l - 8}" y="{Y + 4:.2f}" text-anchor="end">{ty:g}</text>')
    for i, (name, data) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in data if math.isfinite(y))
        if coords:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                       f'points="{coords}"><title>{escape(name)}</title></polyline>')
        ly = margin_t + 16 * i + 10
        lx = width - margin_r + 10
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" '
                   'stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly + 4}">{escape(name)}</text>')
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" '
                   f'font-size="14">{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{margin_l + plot_w / 2:.1f}" y="{height - 10}" '
                   f'text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(f'<text x="16" y="{margin_t + plot_h / 2:.1f}" text-anchor="middle" '
                   f'transform="rotate(-90 16 {margin_t + plot_h / 2:.1f})">{escape(ylabel)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
