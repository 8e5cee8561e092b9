from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET

import pytest

from sikku.enumeration import Kolam
from sikku.errors import CapExceededError
from sikku.fileio import loads_kolam
from sikku.render import RenderStyle, render_catalog, render_svg, style_with
from sikku.strands import trace
from sikku.template import build

SVG_NS = "{http://www.w3.org/2000/svg}"


def paths_of(svg: str) -> list[str]:
    root = ET.fromstring(svg)
    return [el.attrib["d"] for el in root.iter(f"{SVG_NS}path")]


def test_single_circle():
    svg = render_svg(Kolam.all_uncrossed(build("1r", 1, 1)))
    ds = paths_of(svg)
    assert len(ds) == 1
    assert ds[0].count("A") == 2  # a full circle as two half arcs


def test_path_count_equals_loop_count_across_samples():
    samples = [
        Kolam.from_mask(build("1r", 3, 3), 0b101101011010),
        Kolam.from_mask(build("2r", 3, 3), 0b1100110010101011),
        Kolam(build("1r", 2, 2), (True,) * 4),
        Kolam.all_uncrossed(build("2r", 2, 3)),
        Kolam.from_mask(build("1r", 2, 4), 0b1011010011),
    ]
    for kolam in samples:
        svg = render_svg(kolam)
        assert len(paths_of(svg)) == trace(kolam).loop_count


def test_golden_regression():
    from pathlib import Path

    kolam = Kolam(build("2r", 2, 2), (True, False, True, True))
    svg = render_svg(kolam, style_with(None, show_crossing_marks=True))
    golden = Path(__file__).parent / "data" / "golden-2r-2x2.svg"
    assert svg == golden.read_text()


def test_byte_determinism():
    kolam = Kolam.from_mask(build("2r", 3, 3), 0b1010011001010110)
    assert render_svg(kolam) == render_svg(kolam)
    style = style_with(None, show_crossing_marks=True, tile_size=64.0)
    assert render_svg(kolam, style) == render_svg(kolam, style)


def test_no_negative_zero_and_fixed_decimals():
    svg = render_svg(Kolam.from_mask(build("1r", 2, 2), 0b1111))
    assert "-0.000" not in svg
    for m in re.finditer(r'd="([^"]+)"', svg):
        for num in re.findall(r"-?\d+\.\d+", m.group(1)):
            assert len(num.split(".")[1]) == 3


def test_metadata_round_trips():
    kolam = Kolam.from_mask(build("1r", 3, 4), 0b10011100101010011)
    svg = render_svg(kolam)
    meta = re.search(r"<metadata>(.*?)</metadata>", svg, re.S).group(1)
    assert loads_kolam(meta) == kolam


def test_strand_endpoints_sit_on_midpoints():
    t = build("1r", 1, 2)
    kolam = Kolam(t, (True,))
    style = RenderStyle()
    svg = render_svg(kolam, style)
    (d,) = paths_of(svg)
    # the shared-edge midpoint (0.5, 1.0) in user units, y flipped over l=2
    ux = style.margin + 0.5 * style.tile_size
    uy = style.margin + (2 - 1.0) * style.tile_size
    assert f"M {ux:.3f} {uy:.3f}" in d
    assert d.count(f"{ux:.3f} {uy:.3f}") >= 2  # the crossing is visited twice


def test_endpoint_tangents_are_45_degrees():
    t = build("1r", 1, 2)
    svg = render_svg(Kolam(t, (True,)))
    (d,) = paths_of(svg)
    tokens = re.findall(r"[MLCAZ]|-?\d+\.\d+", d)
    # first command is M x y, second is L x y: the entry cap
    assert tokens[0] == "M" and tokens[3] == "L"
    x0, y0 = float(tokens[1]), float(tokens[2])
    x1, y1 = float(tokens[4]), float(tokens[5])
    angle = math.degrees(math.atan2(y1 - y0, x1 - x0)) % 90
    assert math.isclose(angle, 45.0, abs_tol=1e-9)


def test_style_invariant_enforced():
    with pytest.raises(ValueError):
        render_svg(Kolam.all_uncrossed(build("1r", 1, 1)), style_with(None, dot_radius=40.0))
    # 2r tiles are smaller; a dot radius valid for 1r can be invalid there
    style = style_with(None, dot_radius=25.0)
    render_svg(Kolam.all_uncrossed(build("1r", 1, 1)), style)
    with pytest.raises(ValueError):
        render_svg(Kolam.all_uncrossed(build("2r", 2, 2)), style)


def test_crossing_marks_toggle():
    kolam = Kolam(build("1r", 2, 2), (True, False, False, True))
    plain = render_svg(kolam)
    marked = render_svg(kolam, style_with(None, show_crossing_marks=True))
    assert marked.count("<line") == plain.count("<line") + 4  # two ticks per crossing


def test_symmetry_images_render_congruently():
    # transforming a kolam by a template symmetry permutes ink, not counts
    from sikku.symmetry import applicable_ops, edge_perm

    t = build("1r", 3, 3)
    kolam = Kolam.from_mask(t, 0b011010110010)
    base_paths = len(paths_of(render_svg(kolam)))
    for op in applicable_ops(t):
        perm = edge_perm(t, op)
        moved = [False] * t.edge_count
        for i in range(t.edge_count):
            moved[perm[i]] = kolam.crossings[i]
        image = Kolam(t, tuple(moved))
        assert len(paths_of(render_svg(image))) == base_paths


def test_stabilizer_image_is_byte_identical():
    t = build("1r", 2, 2)
    kolam = Kolam(t, (True,) * 4)  # full 4mmd stabilizer
    from sikku.symmetry import applicable_ops, edge_perm

    for op in applicable_ops(t):
        perm = edge_perm(t, op)
        moved = [False] * t.edge_count
        for i in range(t.edge_count):
            moved[perm[i]] = kolam.crossings[i]
        assert render_svg(Kolam(t, tuple(moved))) == render_svg(kolam)


def test_catalog_counts_and_cap():
    sheet = render_catalog(build("1r", 3, 3), "4mmd")
    assert sheet.count("<text") == 4
    sheet = render_catalog(build("2r", 3, 3), "4mmd")
    assert sheet.count("<text") == 8
    sheet = render_catalog(build("1r", 1, 1), "1")
    assert sheet.count("<text") == 1
    with pytest.raises(CapExceededError):
        render_catalog(build("1r", 4, 4), "1")
    ET.fromstring(render_catalog(build("1r", 2, 2), "2mm"))


def test_catalog_captions_carry_stabilizers():
    sheet = render_catalog(build("1r", 2, 2), "4mmd")
    texts = re.findall(r"<text[^>]*>([^<]+)</text>", sheet)
    assert texts == ["#0 4mmd", "#1 4mmd"]


def test_strands_within_a_tile_keep_clearance_and_do_not_cross():
    # sample the drawn geometry of all 16 endsets on a synthetic cell
    from sikku.render import _CellFrame, _strand_pieces
    from sikku.strands import tile_strands
    from sikku.tiles import DIR_ORDER
    import itertools

    t = build("1r", 1, 1)
    cell = t.cells[0]
    frame = _CellFrame(t, cell)
    style = RenderStyle()

    def sample(pieces, start):
        pts = [start]
        pos = start
        for piece in pieces:
            if piece[0] == "L":
                end = piece[1]
                pts += [_lerp(pos, end, u / 16) for u in range(1, 17)]
                pos = end
            elif piece[0] == "C":
                _, c1, c2, end = piece
                pts += [_bezier(pos, c1, c2, end, u / 16) for u in range(1, 17)]
                pos = end
            else:
                _, radius, extent, end = piece
                a0 = math.atan2(pos[1] - frame.center[1], pos[0] - frame.center[0])
                for u in range(1, 33):
                    ang = a0 - math.radians(extent) * u / 32
                    pts.append(
                        (
                            frame.center[0] + radius * math.cos(ang),
                            frame.center[1] + radius * math.sin(ang),
                        )
                    )
                pos = end
        return pts

    for r in range(1, 5):
        for ends in itertools.combinations(DIR_ORDER, r):
            endset = frozenset(ends)
            polylines = []
            for strand in tile_strands(endset):
                mids = {d: frame.polar(frame.half, {"n": 90, "e": 0, "s": 270, "w": 180}[d.value]) for d in DIR_ORDER}
                pieces = _strand_pieces(
                    frame, strand.start, strand.end, strand.span,
                    style.arc_fraction, mids[strand.start], mids[strand.end],
                )
                polylines.append(sample(pieces, mids[strand.start]))
            for pts in polylines:
                for p in pts:
                    dist = math.hypot(p[0] - frame.center[0], p[1] - frame.center[1])
                    assert dist >= style.arc_fraction * 2 * frame.half - 1e-9
            for a, b in itertools.combinations(polylines, 2):
                for p in a[2:-2]:
                    for q in b[2:-2]:
                        assert math.hypot(p[0] - q[0], p[1] - q[1]) > 1e-3


def _lerp(a, b, u):
    return (a[0] + (b[0] - a[0]) * u, a[1] + (b[1] - a[1]) * u)


def _bezier(p0, c1, c2, p1, u):
    x = (
        (1 - u) ** 3 * p0[0]
        + 3 * (1 - u) ** 2 * u * c1[0]
        + 3 * (1 - u) * u**2 * c2[0]
        + u**3 * p1[0]
    )
    y = (
        (1 - u) ** 3 * p0[1]
        + 3 * (1 - u) ** 2 * u * c1[1]
        + 3 * (1 - u) * u**2 * c2[1]
        + u**3 * p1[1]
    )
    return (x, y)
