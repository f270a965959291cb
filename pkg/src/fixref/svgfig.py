"""Deterministic SVG figures for planar scenes.

One panel per composition (up to six, laid out three per row): the input
lines are drawn thin, the fixed-point line of the composed reflector thick
and labelled with its axis angle.  A composition whose fixed set is {0}
shows a marked origin together with the rotation angle of the product; a
composition fixing the whole plane shades its panel.  Output is standalone
SVG 1.1 with no external resources, byte-identical for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import Tolerance
from .operators import fixed_subspace
from .plane import canonical_angle
from .scene import Scene, SceneError

_STYLE = """\
    .bg { fill: #ffffff; }
    .panel { fill: #fdfdfd; stroke: #c8c8c8; stroke-width: 1; }
    .axis { stroke: #e0e0e0; stroke-width: 1; }
    .input { stroke: #808080; stroke-width: 1; }
    .fixed { stroke: #b03030; stroke-width: 3; stroke-linecap: round; }
    .shade { fill: #b03030; fill-opacity: 0.12; }
    .origin { fill: #b03030; }
    .title { font-family: sans-serif; font-size: 13px; fill: #202020; }
    .sub { font-family: monospace; font-size: 11px; fill: #606060; }
    .lab { font-family: sans-serif; font-size: 10px; fill: #404040; }"""


@dataclass(frozen=True)
class FigureSpec:
    """Which compositions to draw and how large the canvas is."""

    compositions: tuple[str, ...]
    width: int = 900
    height: int = 600
    axis_range: float = 1.5

    def __post_init__(self) -> None:
        if len(self.compositions) == 0:
            raise ValueError("figure needs at least one composition")
        if len(self.compositions) > 6:
            raise ValueError(
                f"figure supports at most 6 panels, got {len(self.compositions)}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("canvas size must be positive")
        if not self.axis_range > 0:
            raise ValueError("axis range must be positive")


def _fmt(x: float, digits: int = 4) -> str:
    out = f"{x:.{digits}f}"
    return f"{0.0:.{digits}f}" if float(out) == 0.0 else out


def _axis_angle(direction: np.ndarray) -> float:
    return canonical_angle(math.atan2(direction[1], direction[0]), math.pi)


def _line_endpoints(direction, reach: float):
    dx, dy = float(direction[0]), float(direction[1])
    t = reach / max(abs(dx), abs(dy))
    return (-t * dx, -t * dy), (t * dx, t * dy)


class _Panel:
    """Maps world coordinates [-r, r]^2 onto a square pixel region."""

    def __init__(self, x: float, y: float, side: float, axis_range: float):
        self.x, self.y, self.side, self.range = x, y, side, axis_range

    def to_px(self, wx: float, wy: float) -> tuple[float, float]:
        r = self.range
        return (self.x + (wx + r) / (2.0 * r) * self.side,
                self.y + (r - wy) / (2.0 * r) * self.side)

    def line(self, p, q, css: str) -> str:
        (x1, y1), (x2, y2) = self.to_px(*p), self.to_px(*q)
        return (f'<line class="{css}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')


def _panel_elements(panel: _Panel, scene: Scene, comp_name: str,
                    tol: Tolerance | None) -> list[str]:
    apply_order = scene.composition(comp_name)
    report = fixed_subspace(scene.composition_matrix(comp_name), tol=tol)
    fix = report.subspace

    out = [f'<text class="title" x="{_fmt(panel.x)}" '
           f'y="{_fmt(panel.y - 22)}">{comp_name}</text>',
           f'<text class="sub" x="{_fmt(panel.x)}" '
           f'y="{_fmt(panel.y - 8)}">{scene.operator_notation(comp_name)}</text>',
           f'<rect class="panel" x="{_fmt(panel.x)}" y="{_fmt(panel.y)}" '
           f'width="{_fmt(panel.side)}" height="{_fmt(panel.side)}"/>',
           panel.line((-panel.range, 0.0), (panel.range, 0.0), "axis"),
           panel.line((0.0, -panel.range), (0.0, panel.range), "axis")]

    if fix.dim == 2:
        out.append(f'<rect class="shade" x="{_fmt(panel.x)}" '
                   f'y="{_fmt(panel.y)}" width="{_fmt(panel.side)}" '
                   f'height="{_fmt(panel.side)}"/>')

    seen: list[str] = []
    for name in apply_order:
        if name in seen:
            continue
        seen.append(name)
        sub = scene.subspace(name)
        if sub.dim == 1:
            p, q = _line_endpoints(sub.basis[:, 0], panel.range)
            out.append(panel.line(p, q, "input"))
            lx, ly = panel.to_px(*q)
            out.append(f'<text class="lab" x="{_fmt(lx + 3)}" '
                       f'y="{_fmt(ly - 3)}">{name}</text>')
        elif sub.dim == 0:
            cx, cy = panel.to_px(0.0, 0.0)
            out.append(f'<circle class="input" fill="none" cx="{_fmt(cx)}" '
                       f'cy="{_fmt(cy)}" r="5"/>')

    label_y = panel.y + panel.side + 14
    if fix.dim == 1:
        p, q = _line_endpoints(fix.basis[:, 0], panel.range)
        out.append(panel.line(p, q, "fixed"))
        theta = _axis_angle(fix.basis[:, 0])
        label = (f"fixed line at {_fmt(theta)} rad "
                 f"({_fmt(math.degrees(theta), 2)} deg)")
    elif fix.dim == 0:
        cx, cy = panel.to_px(0.0, 0.0)
        out.append(f'<circle class="origin" cx="{_fmt(cx)}" '
                   f'cy="{_fmt(cy)}" r="4"/>')
        t = scene.composition_matrix(comp_name)
        theta = canonical_angle(math.atan2(t[1, 0], t[0, 0]), 2.0 * math.pi)
        label = (f"fixed set {{0}}; rotation by {_fmt(theta)} rad "
                 f"({_fmt(math.degrees(theta), 2)} deg)")
    else:
        label = "fixed set: the whole plane"
    out.append(f'<text class="lab" x="{_fmt(panel.x)}" '
               f'y="{_fmt(label_y)}">{label}</text>')
    return out


def render_scene_figure(scene: Scene, spec: FigureSpec,
                        tol: Tolerance | None = None) -> str:
    """Render the figure as an SVG 1.1 document string."""
    if scene.ambient != 2:
        raise SceneError(
            f"figures require ambient dimension 2, scene has {scene.ambient}")
    for name in spec.compositions:
        scene.composition(name)  # unknown names fail before any drawing

    count = len(spec.compositions)
    cols = min(3, count)
    rows = (count + cols - 1) // cols
    cell_w = spec.width / cols
    cell_h = spec.height / rows
    # room for two text lines above and one label line below each panel
    side = max(10.0, min(cell_w - 20.0, cell_h - 56.0))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        '<style type="text/css">',
        _STYLE,
        '</style>',
        f'<rect class="bg" x="0" y="0" width="{spec.width}" '
        f'height="{spec.height}"/>',
    ]
    for idx, comp_name in enumerate(spec.compositions):
        col, row = idx % cols, idx // cols
        px = col * cell_w + (cell_w - side) / 2.0
        py = row * cell_h + 36.0
        panel = _Panel(px, py, side, spec.axis_range)
        lines.append(f'<g><!-- panel {idx}: {comp_name} -->')
        lines.extend(_panel_elements(panel, scene, comp_name, tol))
        lines.append('</g>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
