"""Deterministic SVG rendering of tiles, kolams, and catalog sheets.

One <path> per traced loop.  Strand endpoints sit exactly on shared-edge
midpoints with tangents at 45 degrees to the edge, so the four curve ends
meeting at a crossed midpoint form the crossing X.  Geometry per strand:
straight 45-degree caps from the midpoints, a circular arc about the dot
(radius 0.3 x tile side), and cubic easing between cap and arc (the cap
and the arc tangent are parallel, which rules out a single quadratic).
All coordinates are emitted with fixed 3-decimal formatting, so output is
byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .enumeration import Kolam, generate_with_symmetry, count_with_symmetry
from .errors import CapExceededError, InapplicableSymmetryError
from .fileio import dumps_kolam
from .strands import Loop, trace
from .symmetry import PointGroup, group, stabilizer
from .template import CellId, Template, Variant
from .tiles import EdgeDir

DEFAULT_CATALOG_CAP = 256

_SQRT2 = math.sqrt(2.0)
_DIR_ANGLE = {EdgeDir.N: 90.0, EdgeDir.E: 0.0, EdgeDir.S: 270.0, EdgeDir.W: 180.0}


@dataclass(frozen=True)
class RenderStyle:
    tile_size: float = 100.0
    stroke_width: float = 3.0
    dot_radius: float = 6.0
    margin: float = 20.0
    arc_fraction: float = 0.3  # inner arc radius as a fraction of tile side
    background: str | None = "#ffffff"
    stroke: str = "#1a237e"
    dot_fill: str = "#8d6e63"
    grid_stroke: str = "#cccccc"
    mark_stroke: str = "#9e9e9e"
    show_grid: bool = True
    show_dots: bool = True
    show_crossing_marks: bool = False

    def validate_for(self, template: Template) -> None:
        side = template.side * self.tile_size
        arc = self.arc_fraction * side
        if not (self.dot_radius < arc < side / 2):
            raise ValueError(
                f"need dot radius < arc radius < half tile size, got "
                f"{self.dot_radius} / {arc} / {side / 2}"
            )


def _fmt(value: float) -> str:
    s = f"{value:.3f}"
    return "0.000" if s == "-0.000" else s


class _Frame:
    """Template-to-user coordinate mapping (y flipped for SVG)."""

    def __init__(self, template: Template, style: RenderStyle) -> None:
        minx, miny, maxx, maxy = template.bounds
        self.scale = style.tile_size
        self.margin = style.margin
        self.minx, self.maxy = minx, maxy
        self.width = (maxx - minx) * self.scale + 2 * style.margin
        self.height = (maxy - miny) * self.scale + 2 * style.margin

    def to_user(self, pt: tuple[float, float]) -> tuple[float, float]:
        return (
            self.margin + (pt[0] - self.minx) * self.scale,
            self.margin + (self.maxy - pt[1]) * self.scale,
        )


class _CellFrame:
    """Local orthonormal basis of one cell, in template coordinates."""

    def __init__(self, template: Template, cell: CellId) -> None:
        self.center = template.cell_center(cell)
        if template.variant is Variant.ONE_R:
            self.ex, self.ey = (1.0, 0.0), (0.0, 1.0)
        else:
            s = _SQRT2 / 2.0
            self.ex, self.ey = (s, -s), (s, s)
        self.half = template.side / 2.0

    def polar(self, radius: float, theta_deg: float) -> tuple[float, float]:
        c = math.cos(math.radians(theta_deg)) * radius
        s = math.sin(math.radians(theta_deg)) * radius
        return (
            self.center[0] + c * self.ex[0] + s * self.ey[0],
            self.center[1] + c * self.ex[1] + s * self.ey[1],
        )

    def unit(self, theta_deg: float) -> tuple[float, float]:
        c = math.cos(math.radians(theta_deg))
        s = math.sin(math.radians(theta_deg))
        return (
            c * self.ex[0] + s * self.ey[0],
            c * self.ex[1] + s * self.ey[1],
        )


def _add(p: tuple[float, float], v: tuple[float, float], scale: float) -> tuple[float, float]:
    return (p[0] + v[0] * scale, p[1] + v[1] * scale)


def _strand_pieces(
    frame: _CellFrame,
    start_dir: EdgeDir,
    end_dir: EdgeDir,
    span: int,
    arc_fraction: float,
    start_point: tuple[float, float],
    end_point: tuple[float, float],
):
    """Path pieces (after an implicit moveto at start_point), template coords.

    Pieces are ("L", p), ("C", c1, c2, p) or ("A", radius, extent_deg, p).
    Arcs always run clockwise about the dot in template orientation.
    """
    h = frame.half
    alpha = _DIR_ANGLE[start_dir]
    beta = _DIR_ANGLE[end_dir]
    if span == 90:
        return [("L", end_point)]
    r = arc_fraction * 2 * h
    rho = h / _SQRT2  # radius at which the 45-degree cap passes the dot
    gap = rho - r
    theta_in = alpha - 45.0
    theta_out = beta + 45.0
    u_in = frame.unit(alpha + 225.0)
    u_out = frame.unit(beta - 45.0)
    f_in = frame.polar(rho, theta_in)
    a_in = frame.polar(r, theta_in)
    a_out = frame.polar(r, theta_out)
    f_out = frame.polar(rho, theta_out)
    d = 0.5 * gap
    return [
        ("L", f_in),
        ("C", _add(f_in, u_in, d), _add(a_in, u_in, -d), a_in),
        ("A", r, float(span - 90), a_out),
        ("C", _add(a_out, u_out, d), _add(f_out, u_out, -d), f_out),
        ("L", end_point),
    ]


def _circle_pieces(frame: _CellFrame, arc_fraction: float):
    r = arc_fraction * 2 * frame.half
    top = frame.polar(r, 90.0)
    bottom = frame.polar(r, 270.0)
    return top, [("A", r, 180.0, bottom), ("A", r, 180.0, top)]


def _loop_path(template: Template, loop: Loop, style: RenderStyle, frame: _Frame) -> str:
    parts: list[str] = []

    def emit_point(p: tuple[float, float]) -> str:
        x, y = frame.to_user(p)
        return f"{_fmt(x)} {_fmt(y)}"

    def emit_pieces(pieces) -> None:
        for piece in pieces:
            if piece[0] == "L":
                parts.append(f"L {emit_point(piece[1])}")
            elif piece[0] == "C":
                parts.append(
                    f"C {emit_point(piece[1])}, {emit_point(piece[2])}, {emit_point(piece[3])}"
                )
            else:
                _, radius, extent, p = piece
                r_user = radius * frame.scale
                large = 1 if extent > 180.0 else 0
                # template-clockwise arcs render as sweep=1 after the y flip
                parts.append(
                    f"A {_fmt(r_user)} {_fmt(r_user)} 0 {large} 1 {emit_point(p)}"
                )

    first = loop.strands[0]
    cell_frame = _CellFrame(template, first.cell)
    if first.strand.start is None:
        start, pieces = _circle_pieces(cell_frame, style.arc_fraction)
        parts.append(f"M {emit_point(start)}")
        emit_pieces(pieces)
    else:
        # Port midpoints come from the shared edge records, so both sides of
        # a crossing emit the identical coordinate text.
        midpoints = _loop_midpoints(template, loop)
        parts.append(f"M {emit_point(midpoints[0])}")
        for pos, cs in enumerate(loop.strands):
            cf = _CellFrame(template, cs.cell)
            start_pt = midpoints[pos]
            end_pt = midpoints[(pos + 1) % len(loop.strands)]
            emit_pieces(
                _strand_pieces(
                    cf, cs.strand.start, cs.strand.end, cs.strand.span,
                    style.arc_fraction, start_pt, end_pt,
                )
            )
    parts.append("Z")
    return " ".join(parts)


def _loop_midpoints(template: Template, loop: Loop) -> list[tuple[float, float]]:
    """Midpoint of each strand's start port, in strand order."""
    points = []
    for cs in loop.strands:
        for idx, d in template.cell_edges[cs.cell]:
            if d == cs.strand.start:
                points.append(template.edges[idx].midpoint)
                break
        else:
            raise AssertionError("strand start is not on a shared edge")
    return points


def render_svg(kolam: Kolam, style: RenderStyle | None = None) -> str:
    """Render one kolam as a standalone SVG document (byte-deterministic)."""
    style = style or RenderStyle()
    template = kolam.template
    style.validate_for(template)
    frame = _Frame(template, style)
    result = trace(kolam)

    lines: list[str] = []
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(frame.width)}" '
        f'height="{_fmt(frame.height)}" '
        f'viewBox="0 0 {_fmt(frame.width)} {_fmt(frame.height)}">'
    )
    lines.append(f"<metadata>{dumps_kolam(kolam)}</metadata>")
    if style.background:
        lines.append(
            f'<rect width="{_fmt(frame.width)}" height="{_fmt(frame.height)}" '
            f'fill="{style.background}"/>'
        )
    if style.show_grid:
        for cell in template.cells:
            pts = " ".join(
                f"{_fmt(x)},{_fmt(y)}"
                for x, y in (frame.to_user(p) for p in template.tile_corners(cell))
            )
            lines.append(
                f'<polygon points="{pts}" fill="none" stroke="{style.grid_stroke}" '
                f'stroke-width="{_fmt(style.stroke_width / 3)}"/>'
            )
    if style.show_dots:
        for cell in template.cells:
            x, y = frame.to_user(template.cell_center(cell))
            lines.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(style.dot_radius)}" '
                f'fill="{style.dot_fill}"/>'
            )
    if style.show_crossing_marks:
        tick = template.side * 0.12
        for idx, edge in enumerate(template.edges):
            if not kolam.crossings[idx]:
                continue
            mx, my = edge.midpoint
            for dx, dy in ((1, 1), (1, -1)):
                ux = dx / _SQRT2 * tick
                uy = dy / _SQRT2 * tick
                x1, y1 = frame.to_user((mx - ux, my - uy))
                x2, y2 = frame.to_user((mx + ux, my + uy))
                lines.append(
                    f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                    f'y2="{_fmt(y2)}" stroke="{style.mark_stroke}" '
                    f'stroke-width="{_fmt(style.stroke_width / 2)}"/>'
                )
    for loop in result.loops:
        d = _loop_path(template, loop, style, frame)
        lines.append(
            f'<path d="{d}" fill="none" stroke="{style.stroke}" '
            f'stroke-width="{_fmt(style.stroke_width)}" stroke-linecap="round" '
            f'stroke-linejoin="round"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_catalog(
    template: Template,
    pg: PointGroup | str,
    style: RenderStyle | None = None,
    columns: int = 4,
    cap: int = DEFAULT_CATALOG_CAP,
    force: bool = False,
) -> str:
    """Sheet of every kolam with the given symmetry, in generator order.

    Panes are captioned with the generator index and the stabilizer label.
    Refuses when the census exceeds the cap unless forced.
    """
    style = style or RenderStyle()
    g = group(template, pg) if isinstance(pg, str) else pg
    report = count_with_symmetry(template, g)
    if report.no_kolam:
        raise InapplicableSymmetryError(f"{g.label} yields no kolam on {template!r}")
    if report.count > cap and not force:
        raise CapExceededError(
            f"census of {report.count} exceeds catalog cap {cap}; pass force=True"
        )
    kolams = generate_with_symmetry(template, g)
    panes = [render_svg(k, style) for k in kolams]
    pane_frame = _Frame(template, style)
    caption_h = 18.0
    pane_w = pane_frame.width
    pane_h = pane_frame.height + caption_h
    cols = max(1, min(columns, len(panes)))
    rows = (len(panes) + cols - 1) // cols
    total_w = cols * pane_w
    total_h = rows * pane_h
    out: list[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(total_w)}" '
        f'height="{_fmt(total_h)}" viewBox="0 0 {_fmt(total_w)} {_fmt(total_h)}">'
    ]
    for index, (kolam, pane) in enumerate(zip(kolams, panes)):
        col, row = index % cols, index // cols
        x, y = col * pane_w, row * pane_h
        body = pane.strip()
        body = body[body.index(">") + 1:]  # strip outer <svg ...>
        body = body[: body.rindex("</svg>")]
        out.append(f'<g transform="translate({_fmt(x)} {_fmt(y)})">')
        out.append(body)
        label = stabilizer(kolam).token()
        out.append(
            f'<text x="{_fmt(pane_w / 2)}" y="{_fmt(pane_frame.height + 13)}" '
            f'font-family="monospace" font-size="12" text-anchor="middle">'
            f"#{index} {label}</text>"
        )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def style_with(style: RenderStyle | None = None, **overrides) -> RenderStyle:
    return replace(style or RenderStyle(), **overrides)
