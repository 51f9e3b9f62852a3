"""SVG rendering of holonomic diagrams.

Upper arcs blue, lower arcs red, the x0-axis black; crossings get a marker
annotated with sign and over-branch. Output is deterministic for a fixed
input and scale.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from .diagram import FramedDiagram
from .trig import TWO_PI, TrigPolynomial

UPPER_COLOR = "#1f77b4"
LOWER_COLOR = "#d62728"


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def render_svg(
    f: TrigPolynomial,
    d: FramedDiagram,
    scale: float = 160.0,
    samples_per_arc: int = 220,
) -> str:
    xs_all = []
    ys_all = []
    paths = []
    for arc in d.arcs:
        ts = np.linspace(arc.t_start, arc.t_end, samples_per_arc)
        v0, v1 = f.jets(ts, 1)
        xs_all.append(v0)
        ys_all.append(v1)
        paths.append((arc, v0, v1))

    x_min = min(float(v.min()) for v in xs_all) - 0.25
    x_max = max(float(v.max()) for v in xs_all) + 0.25
    y_min = min(float(v.min()) for v in ys_all) - 0.25
    y_max = max(float(v.max()) for v in ys_all) + 0.25
    width = (x_max - x_min) * scale
    height = (y_max - y_min) * scale

    def to_px(x, y):
        return (x - x_min) * scale, (y_max - y) * scale

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=_fmt(width),
        height=_fmt(height),
        viewBox=f"0 0 {_fmt(width)} {_fmt(height)}",
    )
    ax0 = to_px(x_min, 0.0)
    ax1 = to_px(x_max, 0.0)
    ET.SubElement(
        svg,
        "line",
        x1=_fmt(ax0[0]),
        y1=_fmt(ax0[1]),
        x2=_fmt(ax1[0]),
        y2=_fmt(ax1[1]),
        stroke="#000000",
        attrib={"stroke-width": "1"},
    )
    for arc, v0, v1 in paths:
        pts = [to_px(x, y) for x, y in zip(v0, v1)]
        data = "M" + " L".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts)
        ET.SubElement(
            svg,
            "path",
            d=data,
            fill="none",
            stroke=UPPER_COLOR if arc.family == "X" else LOWER_COLOR,
            attrib={"stroke-width": "1.6"},
        )
    for c in d.crossings:
        x, y = to_px(*c.double_point.point)
        ET.SubElement(
            svg,
            "circle",
            cx=_fmt(x),
            cy=_fmt(y),
            r="3.2",
            fill="#ffffff",
            stroke="#333333",
            attrib={"stroke-width": "1"},
        )
        label = ("+" if c.sign > 0 else "-") + "/" + c.over_branch
        text = ET.SubElement(
            svg,
            "text",
            x=_fmt(x + 5.0),
            y=_fmt(y - 5.0),
            attrib={"font-size": "11", "font-family": "monospace"},
        )
        text.text = label
    return ET.tostring(svg, encoding="unicode")
