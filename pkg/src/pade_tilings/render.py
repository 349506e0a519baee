"""SVG pictures of domino and lozenge tilings, optionally with their paths."""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Optional

from .regions import DominoTiling, LozengeTiling, PathSystem, classify_domino, lozenge_kind, triangle_vertices

DOMINO_COLORS = {"N": "#d62728", "S": "#f2d024", "E": "#2ca02c", "W": "#1f5fbf"}
LOZENGE_COLORS = {"flat": "#9ecae1", "rising": "#fdae6b", "blank": "#d9d9d9"}
UNIT = 20


def _svg_root(width: float, height: float) -> ET.Element:
    return ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=f"{width:.0f}",
        height=f"{height:.0f}",
        viewBox=f"0 0 {width:.2f} {height:.2f}",
    )


def _domino_svg(t: DominoTiling, paths: Optional[PathSystem]) -> ET.Element:
    N = t.N
    size = 2 * (N + 1) * UNIT
    root = _svg_root(size, size)

    def px(x, y):
        return (x + N + 1) * UNIT, (N + 1 - y) * UNIT

    for d in sorted(t.dominoes):
        cls = classify_domino(d, N)
        (i, j), (i2, j2) = d
        x0, y0 = px(i, max(j, j2) + 1)
        w = (i2 - i + 1) * UNIT
        h = (j2 - j + 1) * UNIT
        ET.SubElement(
            root,
            "rect",
            x=f"{x0:.2f}",
            y=f"{y0:.2f}",
            width=f"{w:.2f}",
            height=f"{h:.2f}",
            fill=DOMINO_COLORS[cls],
            stroke="black",
            **{"stroke-width": "1", "class": f"domino-{cls}"},
        )
    if paths is not None:
        for p in paths.paths:
            pts = []
            for al, be in p:
                # lattice point back to the domino picture: y = be - 1/2, x = al - y - N - 1/2
                y = be - 0.5
                x = al - y - N - 0.5
                if abs(x) + abs(y) <= N + 1:
                    pts.append(px(x, y))
            if len(pts) > 1:
                ET.SubElement(
                    root,
                    "polyline",
                    points=" ".join(f"{a:.2f},{b:.2f}" for a, b in pts),
                    fill="none",
                    stroke="black",
                    **{"stroke-width": "2", "class": "path"},
                )
    return root


def _lozenge_svg(t: LozengeTiling, paths: Optional[PathSystem]) -> ET.Element:
    # shear so that the three lozenge shapes look like rhombi of a regular hexagon
    s = math.sqrt(3) / 2

    def px(x, y):
        return (x * s + 1) * UNIT, (t.M + t.N + 1 - y + x / 2) * UNIT

    width = (t.L * s + 2) * UNIT
    height = (t.M + t.N + t.L / 2 + 2) * UNIT
    root = _svg_root(width, height)
    for loz in sorted(t.lozenges):
        kind = lozenge_kind(loz)
        corners = set(triangle_vertices(loz[0])) | set(triangle_vertices(loz[1]))
        shared = set(triangle_vertices(loz[0])) & set(triangle_vertices(loz[1]))
        a_only = [c for c in triangle_vertices(loz[0]) if c not in shared][0]
        b_only = [c for c in triangle_vertices(loz[1]) if c not in shared][0]
        s1, s2 = sorted(shared)
        ring = [a_only, s1, b_only, s2]
        assert set(ring) == corners
        ET.SubElement(
            root,
            "polygon",
            points=" ".join("{:.2f},{:.2f}".format(*px(x, y)) for x, y in ring),
            fill=LOZENGE_COLORS[kind],
            stroke="black",
            **{"stroke-width": "1", "class": f"lozenge-{kind}"},
        )
    if paths is not None:
        for p in paths.paths:
            ET.SubElement(
                root,
                "polyline",
                points=" ".join("{:.2f},{:.2f}".format(*px(x, y + 0.5)) for x, y in p),
                fill="none",
                stroke="black",
                **{"stroke-width": "2", "class": "path"},
            )
    return root


def render_svg(tiling, paths: Optional[PathSystem] = None) -> str:
    """Serialize a domino or lozenge tiling as an SVG document."""
    if isinstance(tiling, DominoTiling):
        root = _domino_svg(tiling, paths)
    elif isinstance(tiling, LozengeTiling):
        root = _lozenge_svg(tiling, paths)
    else:
        raise TypeError(f"cannot render {type(tiling).__name__}")
    return ET.tostring(root, encoding="unicode")
