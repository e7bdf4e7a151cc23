"""Minimal deterministic SVG rendering of region scans."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

GRAY = "#9a9a9a"
BLACK = "#000000"
WHITE = "#ffffff"


def fill_for(point) -> str:
    if point.decomposable:
        return GRAY
    if point.positive is True:
        return BLACK
    return WHITE


def _panel(points: Sequence, xs: Sequence[Fraction], ys: Sequence[Fraction], x0: float, y0: float,
           size: float, title: str, key) -> list:
    cell = size / len(xs)
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    out = [f'<g><text x="{x0:.2f}" y="{y0 - 4:.2f}" font-size="10">{title}</text>',
           f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{size:.2f}" height="{size:.2f}" '
           f'fill="none" stroke="#000" stroke-width="0.5"/>']
    for pt in points:
        x, y = key(pt)
        col = xi[x]
        row = len(ys) - 1 - yi[y]
        out.append(
            f'<rect x="{x0 + col * cell:.3f}" y="{y0 + row * cell:.3f}" '
            f'width="{cell:.3f}" height="{cell:.3f}" fill="{fill_for(pt)}"/>'
        )
    out.append("</g>")
    return out


def render(panels: Sequence[tuple], columns: int = 1, size: float = 240.0) -> str:
    """``panels`` holds (title, points, xs, ys, key) tuples; key maps a point to its (x, y) grid values."""
    gap = 30.0
    rows = (len(panels) + columns - 1) // columns
    width = columns * (size + gap) + gap
    height = rows * (size + gap) + gap
    body = []
    for k, (title, points, xs, ys, key) in enumerate(panels):
        r, c = divmod(k, columns)
        body += _panel(points, xs, ys, gap + c * (size + gap), gap + r * (size + gap), size, title, key)
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
            f'viewBox="0 0 {width:.0f} {height:.0f}">')
    return "\n".join([head, f'<rect width="100%" height="100%" fill="{WHITE}"/>'] + body + ["</svg>"]) + "\n"
