"""Deterministic SVG drawings of particle configurations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

UNIT_PX = 40.0

POINT_COLOR = "#8c8c8c"
ACCENT_COLOR = "#d62728"
BOND_COLOR = "#202020"


@dataclass(frozen=True)
class RenderStyle:
    point_radius: float = 7.0
    bond_width: float = 2.0
    highlight: frozenset[int] = field(default_factory=frozenset)
    margin: float = 20.0

    def __post_init__(self):
        if self.point_radius <= 0 or self.bond_width <= 0 or self.margin < 0:
            raise ValueError("render dimensions must be positive")


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def render_svg(
    points: Sequence[tuple[float, float]],
    bonds: Sequence[tuple[int, int]],
    style: RenderStyle = RenderStyle(),
) -> str:
    if any(i < 0 or i >= len(points) for i in style.highlight):
        raise ValueError("highlight indices must refer to configuration points")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    pad = style.margin + style.point_radius
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * UNIT_PX + 2 * pad
    height = (y1 - min(ys)) * UNIT_PX + 2 * pad

    def px(p):
        # SVG y grows downward
        return _fmt((p[0] - x0) * UNIT_PX + pad), _fmt((y1 - p[1]) * UNIT_PX + pad)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<g stroke="{BOND_COLOR}" stroke-width="{_fmt(style.bond_width)}" stroke-linecap="round">',
    ]
    for i, j in sorted(bonds):
        (xa, ya), (xb, yb) = px(points[i]), px(points[j])
        lines.append(f'<line x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}"/>')
    lines.append("</g>")
    lines.append(f'<g stroke="{BOND_COLOR}" stroke-width="1.00">')
    r = _fmt(style.point_radius)
    for idx, p in enumerate(points):
        cx, cy = px(p)
        color = ACCENT_COLOR if idx in style.highlight else POINT_COLOR
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{color}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
