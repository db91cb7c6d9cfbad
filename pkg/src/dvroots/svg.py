"""Deterministic SVG rendering of Newton polygons.

Fixed 640x480 viewBox, an integer lattice grid, support points as dots, the
lower hull as a contrasting polyline, and one slope/length label per edge.
All numeric placement is derived from exact data; formatting is fixed so the
output is snapshot-testable.
"""

from __future__ import annotations

from fractions import Fraction

from .newton import lower_edges

_WIDTH = 640
_HEIGHT = 480
_MARGIN = 48


def _fmt(x):
    return f"{float(x):.2f}"


def polygon_svg(polygon):
    support = polygon.support
    xs = [p[0] for p in support]
    ys = [p[1] for p in support]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = max(x_hi - x_lo, 1)
    y_span = max(y_hi - y_lo, 1)

    def to_screen(pt):
        x, y = pt
        sx = _MARGIN + Fraction(x - x_lo) / x_span * (_WIDTH - 2 * _MARGIN)
        sy = _HEIGHT - _MARGIN - Fraction(y - y_lo) / y_span * (_HEIGHT - 2 * _MARGIN)
        return sx, sy

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    # integer lattice
    gx = x_lo
    while gx <= x_hi:
        sx, _ = to_screen((gx, y_lo))
        lines.append(
            f'<line x1="{_fmt(sx)}" y1="{_MARGIN}" x2="{_fmt(sx)}" '
            f'y2="{_HEIGHT - _MARGIN}" stroke="#dddddd" stroke-width="1"/>'
        )
        gx += 1
    gy = _floor(y_lo)
    while gy <= y_hi:
        if gy >= y_lo:
            _, sy = to_screen((x_lo, gy))
            lines.append(
                f'<line x1="{_MARGIN}" y1="{_fmt(sy)}" x2="{_WIDTH - _MARGIN}" '
                f'y2="{_fmt(sy)}" stroke="#dddddd" stroke-width="1"/>'
            )
        gy += 1
    # lower hull
    hull_pts = " ".join(
        f"{_fmt(sx)},{_fmt(sy)}"
        for sx, sy in (to_screen(p) for p in polygon.lower_vertices)
    )
    lines.append(
        f'<polyline points="{hull_pts}" fill="none" stroke="#d62728" stroke-width="2"/>'
    )
    # support points
    for p in support:
        sx, sy = to_screen(p)
        lines.append(
            f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="4" fill="#1f77b4"/>'
        )
        lines.append(
            f'<text x="{_fmt(sx + 6)}" y="{_fmt(sy - 6)}" font-size="11" '
            f'fill="#333333">({p[0]},{p[1]})</text>'
        )
    # edge labels
    for edge in lower_edges(polygon):
        mx = Fraction(edge.left[0] + edge.right[0], 2)
        my = Fraction(edge.left[1] + edge.right[1]) / 2
        sx, sy = to_screen((mx, my))
        label = f"slope {edge.slope}, len {edge.length}"
        lines.append(
            f'<text x="{_fmt(sx)}" y="{_fmt(sy + 16)}" font-size="12" '
            f'fill="#d62728">{label}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _floor(x):
    f = Fraction(x)
    return f.numerator // f.denominator
