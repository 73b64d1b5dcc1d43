"""Minimal static SVG line plots, rendered without external dependencies.

Deterministic output: fixed canvas, fixed palette, fixed number formatting,
so repeated runs of the same scenario produce byte-identical files.
"""

import math

_WIDTH = 640.0
_HEIGHT = 440.0
_ML, _MR, _MT, _MB = 62.0, 18.0, 38.0, 48.0
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
            "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def _fmt(v: float) -> str:
    s = f"{v:.6g}"
    return "0" if s == "-0" else s


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-12 * step:
        out.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return out


def line_plot(path, x, series, labels, title, xlabel="x", ylabel="u",
              dashed=None):
    """Write a line plot of one or more y-series against x as an SVG file.

    ``series`` is a list of y arrays, ``labels`` the legend entries,
    ``dashed`` an optional list of booleans per series.
    """
    x = [float(v) for v in x]
    series = [[float(v) for v in ys] for ys in series]
    if dashed is None:
        dashed = [False] * len(series)
    x_lo, x_hi = min(x), max(x)
    y_lo = min(min(ys) for ys in series)
    y_hi = max(max(ys) for ys in series)
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad
    pw = _WIDTH - _ML - _MR
    ph = _HEIGHT - _MT - _MB

    def sx(v):
        return _ML + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(v):
        return _MT + (y_hi - v) / (y_hi - y_lo) * ph

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(_WIDTH)}" '
        f'height="{_fmt(_HEIGHT)}" viewBox="0 0 {_fmt(_WIDTH)} {_fmt(_HEIGHT)}">'
    )
    out.append('<rect width="100%" height="100%" fill="white"/>')
    out.append(
        f'<text x="{_fmt(_WIDTH / 2)}" y="22" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>'
    )
    # axes box
    out.append(
        f'<rect x="{_fmt(_ML)}" y="{_fmt(_MT)}" width="{_fmt(pw)}" '
        f'height="{_fmt(ph)}" fill="none" stroke="black" stroke-width="1"/>'
    )
    for tv in _ticks(x_lo, x_hi):
        px = sx(tv)
        out.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(_MT + ph)}" x2="{_fmt(px)}" '
            f'y2="{_fmt(_MT + ph + 5)}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(px)}" y="{_fmt(_MT + ph + 19)}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="11">{_fmt(tv)}</text>'
        )
    for tv in _ticks(y_lo, y_hi):
        py = sy(tv)
        out.append(
            f'<line x1="{_fmt(_ML - 5)}" y1="{_fmt(py)}" x2="{_fmt(_ML)}" '
            f'y2="{_fmt(py)}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(_ML - 8)}" y="{_fmt(py + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt(tv)}</text>'
        )
    out.append(
        f'<text x="{_fmt(_ML + pw / 2)}" y="{_fmt(_HEIGHT - 10)}" '
        f'text-anchor="middle" font-family="sans-serif" '
        f'font-size="13">{xlabel}</text>'
    )
    out.append(
        f'<text x="16" y="{_fmt(_MT + ph / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 16 {_fmt(_MT + ph / 2)})">{ylabel}</text>'
    )
    for k, ys in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{_fmt(sx(a))},{_fmt(sy(b))}" for a, b in zip(x, ys))
        dash = ' stroke-dasharray="6 4"' if dashed[k] else ""
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"{dash}/>'
        )
    # legend, top-right inside the frame
    for k, lab in enumerate(labels):
        color = _PALETTE[k % len(_PALETTE)]
        ly = _MT + 16 + 16 * k
        dash = ' stroke-dasharray="6 4"' if dashed[k] else ""
        out.append(
            f'<line x1="{_fmt(_ML + pw - 150)}" y1="{_fmt(ly - 4)}" '
            f'x2="{_fmt(_ML + pw - 122)}" y2="{_fmt(ly - 4)}" '
            f'stroke="{color}" stroke-width="1.5"{dash}/>'
        )
        out.append(
            f'<text x="{_fmt(_ML + pw - 116)}" y="{_fmt(ly)}" '
            f'font-family="sans-serif" font-size="11">{lab}</text>'
        )
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")
