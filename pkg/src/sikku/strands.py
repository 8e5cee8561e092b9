"""Curve-level structure of a kolam: ports, strands, joins, closed loops.

Every loose end sits at an edge midpoint and is flanked by two curve ends
at 45 degrees to the edge, the *ports*.  Walking clockwise around a cell,
the "-" port of a midpoint is encountered just before the "+" port.

Within a tile, one strand runs from a+ to b- for each pair (a, b) of
clockwise-consecutive loose-end directions (a single loose end pairs with
itself); its arc span is the clockwise angle from a to b, so the spans of
a tile always sum to 360 degrees and the local curve winds exactly once
around the dot.  An endset-free tile contributes one closed 360-degree
loop with no ports.

At a crossed edge, a port joins the opposite cell's port of opposite sign.
This pairing makes every traced walk strictly alternate strand (+ to -)
and join (- to +), so loops have a canonical forward direction, and it
reproduces the classic crossing picture: the four 45-degree prongs meeting
at a crossed midpoint form the familiar X, with the two passing curves
exchanging sides there.  Since each port lies on exactly one strand and
one join, the strand graph is 2-regular and decomposes into disjoint
cycles; "no loose ends" is this perfect matching restated at curve level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .enumeration import Kolam
from .template import CellId
from .tiles import DIR_ORDER, EdgeDir

SIGN_PLUS = "+"
SIGN_MINUS = "-"


@dataclass(frozen=True)
class Port:
    """One of the two curve ends flanking a loose-end midpoint."""

    cell: CellId
    dir: EdgeDir
    sign: str

    def token(self) -> str:
        return f"{self.cell.token()},{self.dir.value},{self.sign}"

    def sort_key(self) -> tuple:
        return (self.cell, self.dir.index, self.sign)


@dataclass(frozen=True)
class TileStrand:
    """An intra-tile curve segment between two ports (or a closed circle).

    ``start``/``end`` are the loose-end directions of the a+ and b- ports;
    both are None for the closed circle of an endset-free tile.  ``span``
    is the clockwise arc span in degrees.
    """

    start: EdgeDir | None
    end: EdgeDir | None
    span: int


@dataclass(frozen=True)
class CellStrand:
    cell: CellId
    strand: TileStrand


@dataclass(frozen=True)
class Loop:
    """A closed walk of strands; ports listed in traversal order (+,-,+,-,...)."""

    strands: tuple[CellStrand, ...]
    ports: tuple[Port, ...]

    @property
    def length(self) -> int:
        return len(self.strands)


@dataclass(frozen=True)
class TraceResult:
    loops: tuple[Loop, ...]
    loop_count: int
    port_count: int


def tile_strands(ends: frozenset[EdgeDir] | set[EdgeDir]) -> tuple[TileStrand, ...]:
    """Strands of a single tile from its loose-end set (uniform rule)."""
    seq = [d for d in DIR_ORDER if d in ends]
    if not seq:
        return (TileStrand(None, None, 360),)
    out = []
    for pos, a in enumerate(seq):
        b = seq[(pos + 1) % len(seq)]
        span = ((b.index - a.index) % 4) * 90 or 360
        out.append(TileStrand(a, b, span))
    return tuple(out)


def arc_spans_by_cell(kolam: Kolam) -> dict[CellId, int]:
    """Total strand arc span per cell (should always be 360)."""
    return {
        cell: sum(s.span for s in tile_strands(kolam.endset(cell)))
        for cell in kolam.template.cells
    }


def encirclement_check(kolam: Kolam) -> dict[CellId, bool]:
    """Whether each cell's local curve makes one full turn about its dot."""
    return {cell: span == 360 for cell, span in arc_spans_by_cell(kolam).items()}


def trace(kolam: Kolam) -> TraceResult:
    """Partition all strands of a kolam into closed loops.

    Deterministic: each loop starts at its least + port and loops are
    ordered by that start; circles (portless loops) follow in cell order.
    """
    template = kolam.template
    strand_from_start: dict[Port, CellStrand] = {}
    end_port_of: dict[Port, Port] = {}
    circles: list[CellStrand] = []
    for cell in template.cells:
        for strand in tile_strands(kolam.endset(cell)):
            if strand.start is None:
                circles.append(CellStrand(cell, strand))
                continue
            start = Port(cell, strand.start, SIGN_PLUS)
            strand_from_start[start] = CellStrand(cell, strand)
            end_port_of[start] = Port(cell, strand.end, SIGN_MINUS)

    # Join at a crossed edge: a - port continues as the opposite cell's + port.
    joins: dict[Port, Port] = {}
    for idx, edge in enumerate(template.edges):
        if not kolam.crossings[idx]:
            continue
        (c1, c2), (d1, d2) = edge.cells, edge.dirs
        joins[Port(c1, d1, SIGN_MINUS)] = Port(c2, d2, SIGN_PLUS)
        joins[Port(c2, d2, SIGN_MINUS)] = Port(c1, d1, SIGN_PLUS)

    loops: list[Loop] = []
    visited: set[Port] = set()
    for start in sorted(strand_from_start, key=Port.sort_key):
        if start in visited:
            continue
        ports: list[Port] = []
        strands: list[CellStrand] = []
        current = start
        while True:
            assert current not in visited, "port revisited: join structure broken"
            visited.add(current)
            strands.append(strand_from_start[current])
            end = end_port_of[current]
            ports.extend((current, end))
            nxt = joins.get(end)
            assert nxt is not None, f"dangling port {end.token()}"
            if nxt == start:
                break
            current = nxt
        loops.append(Loop(tuple(strands), tuple(ports)))

    for circle in circles:
        loops.append(Loop((circle,), ()))

    port_count = 2 * len(strand_from_start)
    return TraceResult(tuple(loops), len(loops), port_count)
