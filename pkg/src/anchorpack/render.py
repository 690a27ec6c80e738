"""SVG pictures of instances, tilings, packings and the beta-tile overlays."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from anchorpack.analysis import AnalysisReport, hexagon, mirror
from anchorpack.geometry import Instance, Packing, Point
from anchorpack.packing import Tiling, tile_packing_tiling

LAYERS = ("points", "tiles", "packing", "tips", "parallelograms", "triangles", "hexagon")
DEFAULT_LAYERS = frozenset({"points", "tiles", "packing"})
OVERLAYS = frozenset({"tips", "parallelograms", "triangles", "hexagon"})


@dataclass(frozen=True)
class RenderOptions:
    width_px: int = 600
    layers: frozenset[str] = DEFAULT_LAYERS
    out_path: Path | None = None
    margin: float = 0.02

    def __post_init__(self) -> None:
        if self.width_px < 100:
            raise ValueError(f"width_px must be at least 100, got {self.width_px}")
        bad = set(self.layers) - set(LAYERS)
        if bad:
            raise ValueError(f"unknown layers {sorted(bad)}; choose from {', '.join(LAYERS)}")
        object.__setattr__(self, "layers", frozenset(self.layers))


@dataclass
class _Frame:
    """World box [x0, x1] x [y0, y1] mapped to pixels with y pointing up."""

    x0: float
    y0: float
    x1: float
    y1: float
    width_px: int
    scale: float = field(init=False)

    def __post_init__(self) -> None:
        self.scale = self.width_px / (self.x1 - self.x0)

    @property
    def height_px(self) -> float:
        return (self.y1 - self.y0) * self.scale

    def xy(self, p) -> tuple[str, str]:
        return _num((float(p[0]) - self.x0) * self.scale), _num((self.y1 - float(p[1])) * self.scale)

    def points_attr(self, poly: Iterable) -> str:
        return " ".join(",".join(self.xy(p)) for p in poly)


def _num(v: float) -> str:
    return repr(round(v, 6))


def _bbox(polys: Iterable[Sequence], margin: float) -> tuple[float, float, float, float]:
    xs, ys = [0.0, 1.0], [0.0, 1.0]
    for poly in polys:
        for p in poly:
            xs.append(float(p[0]))
            ys.append(float(p[1]))
    return min(xs) - margin, min(ys) - margin, max(xs) + margin, max(ys) + margin


def _overlay_polys(report: AnalysisReport | None, layers: frozenset[str], hexes) -> list:
    polys = []
    if report is not None:
        for a in report.analyses:
            if "triangles" in layers and a.area > 0:
                polys += [a.Delta_triangle, a.Gamma_triangle]
            if "parallelograms" in layers and a.has_shapes:
                polys += [a.A_parallelogram, a.B_parallelogram]
    if "hexagon" in layers:
        polys += hexes
    return polys


def _tip_rects(tile, a) -> list[tuple]:
    """Pieces of the tile right of the right cut and above the upper cut."""
    out = []
    for x_lo, y_lo, x_hi, y_hi in tile.pieces():
        if a.right_tip_cut_x is not None and x_hi > a.right_tip_cut_x:
            out.append((max(x_lo, a.right_tip_cut_x), y_lo, x_hi, y_hi))
        if a.upper_tip_cut_y is not None and y_hi > a.upper_tip_cut_y:
            lo = max(y_lo, a.upper_tip_cut_y)
            right = min(x_hi, a.right_tip_cut_x) if a.right_tip_cut_x is not None else x_hi
            if right > x_lo:
                out.append((x_lo, lo, right, y_hi))
    return out


def render_svg(
    inst: Instance,
    packing: Packing | None = None,
    options: RenderOptions = RenderOptions(),
    tiling: Tiling | None = None,
    report: AnalysisReport | None = None,
    lam_alpha: tuple[float, float] | None = None,
) -> str:
    """Return the SVG document as a string; write it too if ``out_path`` is set."""
    layers = options.layers
    if tiling is None and ("tiles" in layers or layers & OVERLAYS):
        tiling = tile_packing_tiling(inst)
    hexes = []
    if "hexagon" in layers and lam_alpha is not None:
        h = hexagon(*lam_alpha)
        hexes = [h, mirror(h)]
    frame = _Frame(*_bbox(_overlay_polys(report, layers, hexes), options.margin), options.width_px)

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(options.width_px),
        height=_num(frame.height_px),
        viewBox=f"0 0 {options.width_px} {_num(frame.height_px)}",
    )
    ET.SubElement(svg, "rect", x=frame.xy((0, 1))[0], y=frame.xy((0, 1))[1],
                  width=_num(frame.scale), height=_num(frame.scale),
                  fill="white", stroke="black", **{"stroke-width": "1.5"})

    def group(name: str) -> ET.Element:
        return ET.SubElement(svg, "g", id=name)

    def polygon(parent, poly, **style) -> None:
        ET.SubElement(parent, "polygon", points=frame.points_attr(poly), **style)

    def box(parent, r, **style) -> None:
        polygon(parent, [(r[0], r[1]), (r[2], r[1]), (r[2], r[3]), (r[0], r[3])], **style)

    if "packing" in layers and packing is not None:
        g = group("packing")
        for _, r in packing.entries:
            if r.x_hi > r.x_lo and r.y_hi > r.y_lo:
                box(g, r, fill="#9ecae1", stroke="#3182bd", **{"stroke-width": "0.5"})
    if "tips" in layers and report is not None:
        g = group("tips")
        for a in report.analyses:
            if a.right_tip_cut_x is not None:
                for r in _tip_rects(tiling[a.index], a):
                    box(g, r, fill="#fdae6b", **{"fill-opacity": "0.6"})
    if "tiles" in layers:
        g = group("tiles")
        for t in tiling:
            if t.width > 0 and t.height > 0:
                polygon(g, t.outline(), fill="none", stroke="black", **{"stroke-width": "0.75"})
    if "triangles" in layers and report is not None:
        g = group("triangles")
        for a in report.analyses:
            if a.area > 0:
                for tri in (a.Delta_triangle, a.Gamma_triangle):
                    polygon(g, tri, fill="none", stroke="#636363", **{"stroke-dasharray": "4 3"})
    if "parallelograms" in layers and report is not None:
        g = group("parallelograms")
        for a in report.analyses:
            if a.has_shapes:
                polygon(g, a.A_parallelogram, fill="#a1d99b", stroke="#31a354", **{"fill-opacity": "0.5"})
                polygon(g, a.B_parallelogram, fill="#bcbddc", stroke="#756bb1", **{"fill-opacity": "0.5"})
    if hexes:
        g = group("hexagon")
        for h in hexes:
            polygon(g, h, fill="none", stroke="#de2d26", **{"stroke-width": "1.2"})
    if "points" in layers:
        g = group("points")
        radius = _num(max(2.0, options.width_px / 200))
        for p in inst.points:
            cx, cy = frame.xy(p)
            ET.SubElement(g, "circle", cx=cx, cy=cy, r=radius, fill="black")

    text = ET.tostring(svg, encoding="unicode")
    text = '<?xml version="1.0" encoding="UTF-8"?>\n' + text + "\n"
    if options.out_path is not None:
        Path(options.out_path).write_text(text)
    return text
