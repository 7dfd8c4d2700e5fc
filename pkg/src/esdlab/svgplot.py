"""Minimal self-contained SVG line and cell-contour renderings.

CSV is the authoritative output; these exist for eyeballing only.  No
external assets, scripts or fonts beyond the SVG defaults.
"""

from __future__ import annotations

import math

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 60, 20, 24, 44


def _finite(values):
    return [v for v in values if v is not None and math.isfinite(v)]


def _span(lo, hi):
    if hi <= lo:
        hi = lo + 1.0
    pad = 0.03 * (hi - lo)
    return lo - pad, hi + pad


def _fmt(x):
    return f"{x:.4g}"


def line_plot(series, xlabel, ylabel, title=""):
    """SVG text for a multi-series line chart.

    ``series`` is a list of (label, xs, ys); non-finite points break the line.
    """
    xs_all = [x for _, xs, _ in series for x in _finite(xs)]
    ys_all = [y for _, _, ys in series for y in _finite(ys)]
    if not xs_all or not ys_all:
        xs_all, ys_all = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = _span(min(xs_all), max(xs_all))
    y0, y1 = _span(min(ys_all), max(ys_all))
    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def px(x):
        return _ML + (x - x0) / (x1 - x0) * pw

    def py(y):
        return _MT + ph - (y - y0) / (y1 - y0) * ph

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
             f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
             f'<rect width="{_W}" height="{_H}" fill="white"/>',
             f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" '
             'fill="none" stroke="#444"/>']
    if title:
        parts.append(f'<text x="{_W / 2}" y="16" text-anchor="middle">{title}</text>')
    for k in range(5):
        xv = x0 + (x1 - x0) * k / 4
        yv = y0 + (y1 - y0) * k / 4
        parts.append(f'<line x1="{px(xv):.1f}" y1="{_MT + ph}" x2="{px(xv):.1f}" '
                     f'y2="{_MT + ph + 4}" stroke="#444"/>')
        parts.append(f'<text x="{px(xv):.1f}" y="{_MT + ph + 16}" '
                     f'text-anchor="middle">{_fmt(xv)}</text>')
        parts.append(f'<line x1="{_ML - 4}" y1="{py(yv):.1f}" x2="{_ML}" '
                     f'y2="{py(yv):.1f}" stroke="#444"/>')
        parts.append(f'<text x="{_ML - 6}" y="{py(yv) + 4:.1f}" '
                     f'text-anchor="end">{_fmt(yv)}</text>')
    parts.append(f'<text x="{_ML + pw / 2}" y="{_H - 8}" '
                 f'text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="14" y="{_MT + ph / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 14 {_MT + ph / 2})">{ylabel}</text>')
    for idx, (label, xs, ys) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        segment = []
        chunks = []
        for x, y in zip(xs, ys):
            if y is None or not math.isfinite(y):
                if segment:
                    chunks.append(segment)
                segment = []
            else:
                segment.append(f"{px(x):.1f},{py(y):.1f}")
        if segment:
            chunks.append(segment)
        for chunk in chunks:
            parts.append(f'<polyline points="{" ".join(chunk)}" fill="none" '
                         f'stroke="{color}" stroke-width="1.5"/>')
        ly = _MT + 14 + 14 * idx
        parts.append(f'<line x1="{_ML + pw - 90}" y1="{ly - 4}" '
                     f'x2="{_ML + pw - 70}" y2="{ly - 4}" stroke="{color}" '
                     'stroke-width="1.5"/>')
        parts.append(f'<text x="{_ML + pw - 66}" y="{ly}">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def cell_plot(xs, ys, values, xlabel, ylabel, title=""):
    """SVG text for a filled-cell contour of values[iy][ix] over a grid."""
    nx, ny = len(xs), len(ys)
    pw, ph = _W - _ML - _MR, _H - _MT - _MB
    finite = [v for row in values for v in row if v is not None and math.isfinite(v)]
    lo = min(finite) if finite else 0.0
    hi = max(finite) if finite else 1.0
    if hi <= lo:
        hi = lo + 1.0
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
             f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
             f'<rect width="{_W}" height="{_H}" fill="white"/>']
    if title:
        parts.append(f'<text x="{_W / 2}" y="16" text-anchor="middle">{title}</text>')
    cw, ch = pw / nx, ph / ny
    for iy in range(ny):
        for ix in range(nx):
            v = values[iy][ix]
            if v is None or not math.isfinite(v):
                fill = "#dddddd"
            else:
                f = (v - lo) / (hi - lo)
                r = int(255 * f)
                b = int(255 * (1.0 - f))
                g = int(80 + 100 * f * (1.0 - f))
                fill = f"rgb({r},{g},{b})"
            x = _ML + ix * cw
            y = _MT + ph - (iy + 1) * ch
            parts.append(f'<rect x="{x:.1f}" y="{y:.1f}" width="{cw + 0.5:.1f}" '
                         f'height="{ch + 0.5:.1f}" fill="{fill}"/>')
    parts.append(f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" '
                 'fill="none" stroke="#444"/>')
    for k in range(5):
        xv = xs[0] + (xs[-1] - xs[0]) * k / 4
        yv = ys[0] + (ys[-1] - ys[0]) * k / 4
        xpix = _ML + pw * k / 4
        ypix = _MT + ph - ph * k / 4
        parts.append(f'<text x="{xpix:.1f}" y="{_MT + ph + 16}" '
                     f'text-anchor="middle">{_fmt(xv)}</text>')
        parts.append(f'<text x="{_ML - 6}" y="{ypix + 4:.1f}" '
                     f'text-anchor="end">{_fmt(yv)}</text>')
    parts.append(f'<text x="{_ML + pw / 2}" y="{_H - 8}" '
                 f'text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="14" y="{_MT + ph / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 14 {_MT + ph / 2})">{ylabel}</text>')
    parts.append(f'<text x="{_ML}" y="{_MT - 6}">range [{_fmt(lo)}, {_fmt(hi)}]</text>')
    parts.append("</svg>")
    return "\n".join(parts)
