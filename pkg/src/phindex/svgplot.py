"""Phase portraits as standalone SVG 1.1 documents.

The drawing is a grid of direction ticks with a marker at the singularity
and, when requested, the probe circle with its tangency points. All
coordinates are emitted with four decimals so a fixed invocation yields a
byte-identical file.
"""

from __future__ import annotations

import math

from .errors import SingularOnCircuit

TICK_COLOR = "#4a4a4a"
CIRCLE_COLOR = "#1f6fb4"
INTERNAL_COLOR = "#c23b22"
EXTERNAL_COLOR = "#2a7e43"
MARKER_COLOR = "#000000"


def _fmt(x: float) -> str:
    v = round(x, 4)
    if v == 0.0:
        v = 0.0
    return f"{v:.4f}"


def render_field_svg(field, *, grid: int = 40, size: float = 480.0,
                     span: float | None = None, circle=None,
                     tangencies=()) -> str:
    """SVG document for the field's direction ticks.

    ``span`` is the half-width of the drawn square in field coordinates;
    by default it hugs the probe circle when one is given and falls back
    to 2. ``tangencies`` are drawn as dots on the circle, coloured by
    kind.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    if span is None:
        if circle is not None:
            span = 1.4 * (math.hypot(*circle.center) + circle.radius)
        else:
            span = 2.0

    scale = size / (2.0 * span)

    def to_px(x: float, y: float) -> tuple[float, float]:
        return (size / 2.0 + x * scale, size / 2.0 - y * scale)

    cell = 2.0 * span / grid
    half = 0.38 * cell
    ticks = []
    for row in range(grid):
        for col in range(grid):
            x = -span + (col + 0.5) * cell
            y = -span + (row + 0.5) * cell
            try:
                fx, fy = field.direction_at(x, y)
            except SingularOnCircuit:
                continue
            mag = math.hypot(fx, fy)
            if mag < 1e-12:
                continue
            ux, uy = fx / mag, fy / mag
            x1, y1 = to_px(x - half * ux, y - half * uy)
            x2, y2 = to_px(x + half * ux, y + half * uy)
            ticks.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(size)}" height="{_fmt(size)}" '
        f'viewBox="0 0 {_fmt(size)} {_fmt(size)}">',
        f'<rect width="{_fmt(size)}" height="{_fmt(size)}" fill="#ffffff"/>',
        f'<g stroke="{TICK_COLOR}" stroke-width="1" stroke-linecap="round">',
        *ticks,
        "</g>",
    ]

    if circle is not None:
        cx, cy = to_px(circle.center[0], circle.center[1])
        parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
            f'r="{_fmt(circle.radius * scale)}" fill="none" '
            f'stroke="{CIRCLE_COLOR}" stroke-width="1.5"/>')
        for t in tangencies:
            px, py = to_px(t.point[0], t.point[1])
            color = (INTERNAL_COLOR if t.kind.name == "INTERNAL"
                     else EXTERNAL_COLOR)
            parts.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3.5" '
                f'fill="{color}"/>')

    ox, oy = to_px(0.0, 0.0)
    parts.append(
        f'<circle cx="{_fmt(ox)}" cy="{_fmt(oy)}" r="4" fill="none" '
        f'stroke="{MARKER_COLOR}" stroke-width="1.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
