"""Kolam templates: cell layout, shared edges, geometric anchors.

Two layouts are supported.  The single-rectangle template ("1r") is a
k x l grid of axis-aligned unit tiles.  The two-rectangle template ("2r")
interleaves a k x l grid of 45-degree tiles centered on integer points
with a (k-1) x (l-1) grid centered on the half-integer points between
them; only those diagonal contacts are shared edges, so every shared edge
joins an outer-grid cell to an inner-grid cell.

All anchors are stored in quarter units (template coordinates times 4),
which makes every cell center and edge midpoint an exact integer pair.
Symmetry images and geometry lookups are therefore exact, and edge
identities derive from positions rather than construction order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import FormatError, InvalidSizeError, UnknownCellError
from .tiles import DIR_ORDER, EdgeDir


class Variant(Enum):
    ONE_R = "1r"
    TWO_R = "2r"


@dataclass(frozen=True, order=True)
class CellId:
    """Grid letter plus integer indices; the 1r layout only uses grid 'a'."""

    grid: str
    i: int
    j: int

    def token(self) -> str:
        return f"{self.grid},{self.i},{self.j}"

    @classmethod
    def parse(cls, token: str) -> "CellId":
        try:
            grid, i, j = token.split(",")
            if grid not in ("a", "b"):
                raise ValueError(grid)
            return cls(grid, int(i), int(j))
        except ValueError as exc:
            raise FormatError(f"bad cell id {token!r}") from exc


@dataclass(frozen=True)
class Edge:
    """A shared edge between two adjacent cells.

    ``cells`` is ordered lexicographically, which is also the canonical
    edge ordering for crossing bitstrings.  ``dirs`` holds each side's
    tile-local direction toward the edge, aligned with ``cells``.
    """

    cells: tuple[CellId, CellId]
    dirs: tuple[EdgeDir, EdgeDir]
    midpoint_q: tuple[int, int]

    def token(self) -> str:
        return f"{self.cells[0].token()}|{self.cells[1].token()}"

    def dir_for(self, cell: CellId) -> EdgeDir:
        if cell == self.cells[0]:
            return self.dirs[0]
        if cell == self.cells[1]:
            return self.dirs[1]
        raise UnknownCellError(f"{cell.token()} is not on edge {self.token()}")

    def other_cell(self, cell: CellId) -> CellId:
        if cell == self.cells[0]:
            return self.cells[1]
        if cell == self.cells[1]:
            return self.cells[0]
        raise UnknownCellError(f"{cell.token()} is not on edge {self.token()}")

    @property
    def midpoint(self) -> tuple[float, float]:
        return (self.midpoint_q[0] / 4.0, self.midpoint_q[1] / 4.0)


# Quarter-unit offsets from a cell center to the midpoint of each local
# edge.  The 2r tile frame is rotated 45 degrees: local N points to the
# template's northeast.
_OFFSETS_Q: dict[Variant, dict[EdgeDir, tuple[int, int]]] = {
    Variant.ONE_R: {
        EdgeDir.N: (0, 2),
        EdgeDir.E: (2, 0),
        EdgeDir.S: (0, -2),
        EdgeDir.W: (-2, 0),
    },
    Variant.TWO_R: {
        EdgeDir.N: (1, 1),
        EdgeDir.E: (1, -1),
        EdgeDir.S: (-1, -1),
        EdgeDir.W: (-1, 1),
    },
}


class Template:
    """An immutable template; build once, then only read."""

    def __init__(self, variant: Variant, k: int, l: int) -> None:
        if not (isinstance(k, int) and isinstance(l, int)) or k < 1 or l < 1:
            raise InvalidSizeError(f"template sizes must be positive integers, got k={k!r} l={l!r}")
        self.variant = variant
        self.k = k
        self.l = l

        cells: list[CellId] = []
        if variant is Variant.ONE_R:
            cells = [CellId("a", i, j) for i in range(k) for j in range(l)]
        else:
            cells = [CellId("a", i, j) for i in range(k) for j in range(l)]
            cells += [CellId("b", i, j) for i in range(k - 1) for j in range(l - 1)]
        self.cells: tuple[CellId, ...] = tuple(sorted(cells))
        self._cell_set = frozenset(self.cells)
        self._center_by_cell = {c: self._raw_center_q(c) for c in self.cells}
        self._cell_by_center = {q: c for c, q in self._center_by_cell.items()}

        offsets = _OFFSETS_Q[variant]
        seen: dict[tuple[int, int], Edge] = {}
        for cell in self.cells:
            cq = self._center_by_cell[cell]
            for d in DIR_ORDER:
                off = offsets[d]
                mid = (cq[0] + off[0], cq[1] + off[1])
                neighbor_center = (cq[0] + 2 * off[0], cq[1] + 2 * off[1])
                other = self._cell_by_center.get(neighbor_center)
                if other is None or mid in seen:
                    continue
                other_dir = next(
                    dd for dd, oo in offsets.items()
                    if (neighbor_center[0] + oo[0], neighbor_center[1] + oo[1]) == mid
                )
                lo, hi = sorted((cell, other))
                dirs = (d, other_dir) if lo == cell else (other_dir, d)
                seen[mid] = Edge(cells=(lo, hi), dirs=dirs, midpoint_q=mid)
        self.edges: tuple[Edge, ...] = tuple(sorted(seen.values(), key=lambda e: e.cells))
        self.edge_index: dict[tuple[CellId, CellId], int] = {
            e.cells: idx for idx, e in enumerate(self.edges)
        }
        self._edge_by_midpoint = {e.midpoint_q: idx for idx, e in enumerate(self.edges)}

        by_cell: dict[CellId, list[tuple[int, EdgeDir]]] = {c: [] for c in self.cells}
        for idx, e in enumerate(self.edges):
            by_cell[e.cells[0]].append((idx, e.dirs[0]))
            by_cell[e.cells[1]].append((idx, e.dirs[1]))
        self.cell_edges: dict[CellId, tuple[tuple[int, EdgeDir], ...]] = {
            c: tuple(sorted(entries, key=lambda item: item[1].index))
            for c, entries in by_cell.items()
        }
        self.boundary_dirs: dict[CellId, tuple[EdgeDir, ...]] = {
            c: tuple(d for d in DIR_ORDER if d not in {dd for _, dd in self.cell_edges[c]})
            for c in self.cells
        }

        self._perm_cache: dict[tuple[str, str], tuple[int, ...]] = {}

    def _raw_center_q(self, cell: CellId) -> tuple[int, int]:
        if self.variant is Variant.ONE_R:
            return (4 * cell.i + 2, 4 * cell.j + 2)
        if cell.grid == "a":
            return (4 * cell.i, 4 * cell.j)
        return (4 * cell.i + 2, 4 * cell.j + 2)

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Template)
            and (self.variant, self.k, self.l) == (other.variant, other.k, other.l)
        )

    def __hash__(self) -> int:
        return hash((self.variant, self.k, self.l))

    def __repr__(self) -> str:
        return f"Template({self.variant.value}, {self.k}x{self.l})"

    # -- derived geometry --------------------------------------------------

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def center_q(self) -> tuple[int, int]:
        if self.variant is Variant.ONE_R:
            return (2 * self.k, 2 * self.l)
        return (2 * (self.k - 1), 2 * (self.l - 1))

    @property
    def side(self) -> float:
        """Tile edge length in template units."""
        return 1.0 if self.variant is Variant.ONE_R else 1.0 / math.sqrt(2.0)

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y) of the tiled region."""
        if self.variant is Variant.ONE_R:
            return (0.0, 0.0, float(self.k), float(self.l))
        return (-0.5, -0.5, self.k - 0.5, self.l - 0.5)

    def has_cell(self, cell: CellId) -> bool:
        return cell in self._cell_set

    def cell_center_q(self, cell: CellId) -> tuple[int, int]:
        if not self.has_cell(cell):
            raise UnknownCellError(f"no cell {cell.token()} in {self!r}")
        return self._center_by_cell[cell]

    def cell_center(self, cell: CellId) -> tuple[float, float]:
        q = self.cell_center_q(cell)
        return (q[0] / 4.0, q[1] / 4.0)

    def cell_at_center_q(self, q: tuple[int, int]) -> CellId | None:
        return self._cell_by_center.get(q)

    def edge_at_midpoint_q(self, q: tuple[int, int]) -> int | None:
        return self._edge_by_midpoint.get(q)

    def tile_corners(self, cell: CellId) -> tuple[tuple[float, float], ...]:
        cx, cy = self.cell_center(cell)
        if self.variant is Variant.ONE_R:
            h = 0.5
            return ((cx - h, cy - h), (cx + h, cy - h), (cx + h, cy + h), (cx - h, cy + h))
        return ((cx, cy - 0.5), (cx + 0.5, cy), (cx, cy + 0.5), (cx - 0.5, cy))


def build(variant: Variant | str, k: int, l: int) -> Template:
    """Build a template; raises InvalidSizeError for nonpositive sizes."""
    if isinstance(variant, str):
        try:
            variant = Variant(variant.lower())
        except ValueError as exc:
            raise FormatError(f"unknown template variant {variant!r}") from exc
    return Template(variant, k, l)


def edges_of_cell(template: Template, cell: CellId) -> list[tuple[Edge, EdgeDir]]:
    """Shared edges incident to a cell with the cell-local direction of each."""
    if not template.has_cell(cell):
        raise UnknownCellError(f"no cell {cell.token()} in {template!r}")
    return [(template.edges[idx], d) for idx, d in template.cell_edges[cell]]
