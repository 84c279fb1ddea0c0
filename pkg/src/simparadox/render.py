"""Deterministic SVG rendering of a single reversal split.

One figure, two panels: the treated arm's vectors on the left, the
control arm's on the right. Each panel shows the parent vector from the
origin, the inner child vector from the origin, the outer child as the
segment completing the parallelogram to the parent endpoint, and arcs
for the two child angles. Output is plain text with fixed formatting
(two decimals, fixed element order, no timestamps), so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import math
from pathlib import Path

from .decomposition import Quadruple, decompose
from .geometry import PlaneVector

WIDTH, HEIGHT = 800, 400
_PLOT_SPAN = 280.0
_STYLE = (
    ".axis{stroke:#999999;stroke-width:1}"
    ".ray{stroke:#1f4e8c;stroke-width:2;fill:none}"
    ".arc{stroke:#c2491d;stroke-width:1.5;fill:none}"
    "text{font-family:monospace;font-size:12px;fill:#222222}"
    ".title{font-size:14px;font-weight:bold}"
)


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _panel(
    origin_x: float,
    title: str,
    parent: PlaneVector,
    inner: PlaneVector,
    labels: tuple[str, str, str],
) -> list[str]:
    origin_y = 345.0
    scale = _PLOT_SPAN / max(parent.horizontal, parent.vertical)

    def screen(v: PlaneVector) -> tuple[float, float]:
        return origin_x + v.horizontal * scale, origin_y - v.vertical * scale

    def line(cls: str, x1: float, y1: float, x2: float, y2: float) -> str:
        return (
            f'<line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
        )

    def arc(cx: float, cy: float, radius: float, angle: float) -> str:
        x1, y1 = cx + radius, cy
        x2 = cx + radius * math.cos(angle)
        y2 = cy - radius * math.sin(angle)
        return (
            f'<path class="arc" d="M {_fmt(x1)} {_fmt(y1)} '
            f'A {_fmt(radius)} {_fmt(radius)} 0 0 0 {_fmt(x2)} {_fmt(y2)}"/>'
        )

    def text(x: float, y: float, value: str, cls: str = "") -> str:
        attr = f' class="{cls}"' if cls else ""
        return f'<text{attr} x="{_fmt(x)}" y="{_fmt(y)}">{value}</text>'

    px, py = screen(parent)
    ix, iy = screen(inner)
    parent_angle = math.atan2(parent.vertical, parent.horizontal)
    inner_angle = math.atan2(inner.vertical, inner.horizontal)
    outer_angle = math.atan2(parent.vertical - inner.vertical, parent.horizontal - inner.horizontal)
    label_parent, label_inner, label_outer = labels

    elements = [
        text(origin_x, 30.0, title, cls="title"),
        line("axis", origin_x, origin_y, origin_x + _PLOT_SPAN + 25.0, origin_y),
        line("axis", origin_x, origin_y, origin_x, origin_y - _PLOT_SPAN - 25.0),
        line("ray", origin_x, origin_y, px, py),
        line("ray", origin_x, origin_y, ix, iy),
        line("ray", ix, iy, px, py),
        arc(origin_x, origin_y, 56.0, inner_angle),
        arc(ix, iy, 28.0, outer_angle),
    ]
    # Angle labels: the parent's along its ray, the children's just past
    # their arcs along the half-angle direction.
    elements.append(
        text(
            origin_x + 0.62 * (px - origin_x) + 6.0,
            origin_y + 0.62 * (py - origin_y) - 6.0,
            label_parent,
        )
    )
    elements.append(
        text(
            origin_x + 74.0 * math.cos(inner_angle / 2),
            origin_y - 74.0 * math.sin(inner_angle / 2) + 4.0,
            label_inner,
        )
    )
    elements.append(
        text(
            ix + 42.0 * math.cos(outer_angle / 2),
            iy - 42.0 * math.sin(outer_angle / 2) + 4.0,
            label_outer,
        )
    )
    elements.append(
        text(px + 6.0, py - 4.0, f"({parent.horizontal:.4f}, {parent.vertical:.4f})")
    )
    elements.append(
        text(ix + 6.0, iy + 14.0, f"({inner.horizontal:.4f}, {inner.vertical:.4f})")
    )
    return elements


def decomposition_svg(q: Quadruple) -> str:
    """Standalone SVG for one split of ``q``; byte-stable for equal inputs."""
    child1, _ = decompose(q)
    body: list[str] = []
    body += _panel(
        60.0, "treated arm", q.treated_vector(), child1.treated_vector(), ("θ0", "θ1", "θ2")
    )
    body += _panel(
        460.0, "control arm", q.control_vector(), child1.control_vector(), ("η0", "η1", "η2")
    )
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<style>{_STYLE}</style>",
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        *body,
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


def render_decomposition(q: Quadruple, out: str | Path) -> None:
    """Write the split figure for ``q``; nothing is written if the split fails."""
    svg = decomposition_svg(q)
    Path(out).write_text(svg, encoding="utf-8", newline="\n")
