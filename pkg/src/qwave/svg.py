"""Self-contained SVG heatmap writer for correlator grids.

No plotting library: cells are quantized to a fixed diverging palette and
emitted as run-length-merged path elements, one path per palette color, so
a 512 x 512 grid stays well below 5 MB.  Masked (singular) cells are drawn
black.  The color scale is symmetric around zero; passing the same
color_max across figures keeps their scales consistent.
"""

from __future__ import annotations

import numpy as np

from .grids import CorrelatorGrid

__all__ = ["render_heatmap_svg", "write_heatmap_svg"]

_N_LEVELS = 33  # odd, so zero maps to the central (white) bin
_NEG = (0x21, 0x66, 0xAC)   # strong blue
_MID = (0xF7, 0xF7, 0xF7)   # near white
_POS = (0xB2, 0x18, 0x2B)   # strong red
_MASK_COLOR = "#000000"

_PLOT = 520.0  # pixel size of the plot area
_ML, _MT, _MR, _MB = 64.0, 34.0, 78.0, 56.0


def _level_color(i: int) -> str:
    u = i / (_N_LEVELS - 1.0)
    if u < 0.5:
        a, b, w = _NEG, _MID, u * 2.0
    else:
        a, b, w = _MID, _POS, (u - 0.5) * 2.0
    rgb = tuple(int(round(c0 + (c1 - c0) * w)) for c0, c1 in zip(a, b))
    return "#%02x%02x%02x" % rgb


def _quantize(values: np.ndarray, mask: np.ndarray, vmax: float) -> np.ndarray:
    scaled = np.clip(values / vmax, -1.0, 1.0)
    levels = np.rint((scaled + 1.0) * 0.5 * (_N_LEVELS - 1)).astype(np.int16)
    levels[mask != 0] = -1
    return levels


def _row_runs(row: np.ndarray):
    start = 0
    for i in range(1, len(row) + 1):
        if i == len(row) or row[i] != row[start]:
            yield start, i - start, row[start]
            start = i


def render_heatmap_svg(grid: CorrelatorGrid, title: str, color_max=None) -> str:
    """Render the grid as an SVG document string.

    x1 runs along the horizontal axis, x2 upward; axis labels are in units
    of the waveguide length.
    """
    res = grid.resolution
    finite = grid.values[grid.mask == 0]
    vmax = color_max if color_max else (np.max(np.abs(finite)) if finite.size else 1.0)
    if vmax <= 0.0:
        vmax = 1.0
    levels = _quantize(grid.values, grid.mask, vmax)

    paths: dict = {}
    for j in range(res):
        # x2 index j is drawn in pixel row res-1-j (origin bottom left)
        row = levels[:, j]
        y = res - 1 - j
        for x0, width, lev in _row_runs(row):
            paths.setdefault(int(lev), []).append(f"M{x0} {y}h{width}v1h-{width}z")

    width = _ML + _PLOT + _MR
    height = _MT + _PLOT + _MB
    scale = _PLOT / res
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0f} {height:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{_ML + _PLOT / 2:.1f}" y="{_MT - 12:.1f}" font-family="sans-serif" '
        f'font-size="15" text-anchor="middle">{title}</text>',
        f'<g transform="translate({_ML:.1f},{_MT:.1f}) scale({scale:.6f})">',
    ]
    for lev in sorted(paths):
        color = _MASK_COLOR if lev < 0 else _level_color(lev)
        parts.append(f'<path fill="{color}" d="{"".join(paths[lev])}"/>')
    parts.append("</g>")
    parts.append(
        f'<rect x="{_ML:.1f}" y="{_MT:.1f}" width="{_PLOT:.1f}" height="{_PLOT:.1f}" '
        'fill="none" stroke="black" stroke-width="1"/>'
    )
    # axis ticks at quarters of the waveguide length
    for k in range(5):
        frac = k / 4.0
        px = _ML + frac * _PLOT
        py = _MT + _PLOT - frac * _PLOT
        label = f"{frac:g}"
        parts.append(
            f'<line x1="{px:.1f}" y1="{_MT + _PLOT:.1f}" x2="{px:.1f}" '
            f'y2="{_MT + _PLOT + 5:.1f}" stroke="black"/>'
            f'<text x="{px:.1f}" y="{_MT + _PLOT + 20:.1f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">{label}</text>'
        )
        parts.append(
            f'<line x1="{_ML - 5:.1f}" y1="{py:.1f}" x2="{_ML:.1f}" y2="{py:.1f}" '
            f'stroke="black"/>'
            f'<text x="{_ML - 9:.1f}" y="{py + 4:.1f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="end">{label}</text>'
        )
    parts.append(
        f'<text x="{_ML + _PLOT / 2:.1f}" y="{height - 14:.1f}" font-family="sans-serif" '
        'font-size="14" text-anchor="middle">x1/D</text>'
    )
    parts.append(
        f'<text x="18" y="{_MT + _PLOT / 2:.1f}" font-family="sans-serif" font-size="14" '
        f'text-anchor="middle" transform="rotate(-90 18 {_MT + _PLOT / 2:.1f})">x2/D</text>'
    )
    # colorbar
    bar_x = _ML + _PLOT + 22.0
    bar_h = _PLOT / _N_LEVELS
    for i in range(_N_LEVELS):
        y = _MT + _PLOT - (i + 1) * bar_h
        parts.append(
            f'<rect x="{bar_x:.1f}" y="{y:.2f}" width="14" height="{bar_h + 0.5:.2f}" '
            f'fill="{_level_color(i)}"/>'
        )
    for frac, val in ((0.0, -vmax), (0.5, 0.0), (1.0, vmax)):
        y = _MT + _PLOT - frac * _PLOT
        parts.append(
            f'<text x="{bar_x + 18:.1f}" y="{y + 4:.1f}" font-family="sans-serif" '
            f'font-size="11">{val:.3g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def write_heatmap_svg(path, grid: CorrelatorGrid, title: str, color_max=None) -> None:
    svg = render_heatmap_svg(grid, title, color_max=color_max)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
