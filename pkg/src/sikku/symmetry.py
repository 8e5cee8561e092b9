"""Point-group symmetry of kolam templates.

The eight candidate operations are realized as integer orthogonal matrices
acting on quarter-unit coordinates about the template center, so images of
cell centers and edge midpoints are exact.  Square templates admit the full
order-8 dihedral group; rectangles admit the order-4 subgroup generated by
the half turn and the two edge-parallel mirrors.

Group labels follow the kolam convention that keeps edge-parallel mirrors
(m-k, m-l) distinct from diagonal mirrors (md) even though crystallography
would merge them for squares.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import InapplicableSymmetryError
from .template import CellId, Edge, Template

if TYPE_CHECKING:  # pragma: no cover
    from .enumeration import Kolam

Matrix = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class SymOp:
    """A rotation or reflection about/through the template center."""

    name: str
    matrix: Matrix

    @property
    def is_mirror(self) -> bool:
        m = self.matrix
        return m[0][0] * m[1][1] - m[0][1] * m[1][0] == -1

    def apply_q(self, center: tuple[int, int], point: tuple[int, int]) -> tuple[int, int]:
        dx, dy = point[0] - center[0], point[1] - center[1]
        m = self.matrix
        return (center[0] + m[0][0] * dx + m[0][1] * dy, center[1] + m[1][0] * dx + m[1][1] * dy)


OPS: dict[str, SymOp] = {
    "1": SymOp("1", ((1, 0), (0, 1))),
    "r90": SymOp("r90", ((0, -1), (1, 0))),
    "r180": SymOp("r180", ((-1, 0), (0, -1))),
    "r270": SymOp("r270", ((0, 1), (-1, 0))),
    # mirror line perpendicular to the k axis (a vertical line)
    "mk": SymOp("mk", ((-1, 0), (0, 1))),
    # mirror line perpendicular to the l axis (a horizontal line)
    "ml": SymOp("ml", ((1, 0), (0, -1))),
    "md1": SymOp("md1", ((0, 1), (1, 0))),  # main diagonal, along +x+y
    "md2": SymOp("md2", ((0, -1), (-1, 0))),  # anti diagonal, along +x-y
}
_OP_BY_MATRIX: dict[Matrix, SymOp] = {op.matrix: op for op in OPS.values()}
IDENTITY = OPS["1"]

SQUARE_OP_NAMES: tuple[str, ...] = ("1", "r90", "r180", "r270", "mk", "ml", "md1", "md2")
RECT_OP_NAMES: tuple[str, ...] = ("1", "r180", "mk", "ml")


def compose(g: SymOp, h: SymOp) -> SymOp:
    """g after h."""
    a, b = g.matrix, h.matrix
    m = (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )
    return _OP_BY_MATRIX[m]


def inverse(g: SymOp) -> SymOp:
    for h in OPS.values():
        if compose(g, h) is IDENTITY:
            return h
    raise AssertionError("unreachable")


def applicable_ops(template: Template) -> tuple[SymOp, ...]:
    names = SQUARE_OP_NAMES if template.k == template.l else RECT_OP_NAMES
    return tuple(OPS[n] for n in names)


def is_applicable(template: Template, op: SymOp) -> bool:
    return op in applicable_ops(template)


# -- point groups -----------------------------------------------------------

PG_LABELS: tuple[str, ...] = ("1", "2", "4", "m-k", "m-l", "md", "2mm", "2mdmd", "4mmd")
SQUARE_ONLY_LABELS: frozenset[str] = frozenset({"4", "md", "2mdmd", "4mmd"})

# Canonical column order of the count tables.
TABLE_LABELS: tuple[str, ...] = ("1", "m-k", "m-l", "md", "2", "2mm", "2mdmd", "4", "4mmd")

_LABEL_OPS: dict[tuple[str, str | None], tuple[str, ...]] = {
    ("1", None): ("1",),
    ("2", None): ("1", "r180"),
    ("4", None): ("1", "r90", "r180", "r270"),
    ("m-k", None): ("1", "mk"),
    ("m-l", None): ("1", "ml"),
    ("md", "main"): ("1", "md1"),
    ("md", "anti"): ("1", "md2"),
    ("2mm", None): ("1", "r180", "mk", "ml"),
    ("2mdmd", None): ("1", "r180", "md1", "md2"),
    ("4mmd", None): SQUARE_OP_NAMES,
}


@dataclass(frozen=True)
class PointGroup:
    """A labeled subgroup of a template's symmetry group.

    ``diagonal`` disambiguates the two conjugate diagonal mirrors for the
    md label ("main" or "anti"); it is None for every other label.
    """

    label: str
    ops: frozenset[SymOp]
    diagonal: str | None = None

    @property
    def order(self) -> int:
        return len(self.ops)

    def token(self) -> str:
        return self.label

    def __contains__(self, op: SymOp) -> bool:
        return op in self.ops

    def is_subgroup_of(self, other: "PointGroup") -> bool:
        return self.ops <= other.ops


def group(template: Template, label: str, diagonal: str = "main") -> PointGroup:
    """The subgroup named by a point-group label.

    Raises InapplicableSymmetryError for square-only labels on k != l.
    """
    if label not in PG_LABELS:
        raise InapplicableSymmetryError(f"unknown point group label {label!r}")
    if label in SQUARE_ONLY_LABELS and template.k != template.l:
        raise InapplicableSymmetryError(
            f"{label} requires a square template, got {template.k}x{template.l}"
        )
    key = (label, diagonal if label == "md" else None)
    names = _LABEL_OPS[key]
    return PointGroup(label, frozenset(OPS[n] for n in names), key[1])


def template_group(template: Template) -> PointGroup:
    """Largest point group of the bare template: 4mmd for squares, else 2mm."""
    return group(template, "4mmd" if template.k == template.l else "2mm")


def classify_ops(ops: Iterable[SymOp]) -> PointGroup:
    """Label an op set that is assumed to be a subgroup."""
    ops = frozenset(ops)
    names = {op.name for op in ops}
    diagonal: str | None = None
    if len(ops) == 1:
        label = "1"
    elif len(ops) == 2:
        if "r180" in names:
            label = "2"
        elif "mk" in names:
            label = "m-k"
        elif "ml" in names:
            label = "m-l"
        else:
            label = "md"
            diagonal = "main" if "md1" in names else "anti"
    elif len(ops) == 4:
        if "r90" in names:
            label = "4"
        elif "mk" in names:
            label = "2mm"
        else:
            label = "2mdmd"
    elif len(ops) == 8:
        label = "4mmd"
    else:
        raise AssertionError(f"not a dihedral subgroup: {sorted(names)}")
    return PointGroup(label, ops, diagonal)


# -- actions -----------------------------------------------------------------

def act_on_cell(template: Template, op: SymOp, cell: CellId) -> CellId:
    if not is_applicable(template, op):
        raise InapplicableSymmetryError(f"{op.name} does not apply to {template!r}")
    image_q = op.apply_q(template.center_q, template.cell_center_q(cell))
    image = template.cell_at_center_q(image_q)
    if image is None:
        raise AssertionError(f"{op.name} maps {cell.token()} outside {template!r}")
    return image


def act_on_edge(template: Template, op: SymOp, edge: Edge) -> Edge:
    if not is_applicable(template, op):
        raise InapplicableSymmetryError(f"{op.name} does not apply to {template!r}")
    image_q = op.apply_q(template.center_q, edge.midpoint_q)
    idx = template.edge_at_midpoint_q(image_q)
    if idx is None:
        raise AssertionError(f"{op.name} maps edge {edge.token()} outside {template!r}")
    return template.edges[idx]


def edge_perm(template: Template, op: SymOp) -> tuple[int, ...]:
    """Permutation of edge indices induced by an operation (cached)."""
    key = ("edge", op.name)
    cached = template._perm_cache.get(key)
    if cached is None:
        if not is_applicable(template, op):
            raise InapplicableSymmetryError(f"{op.name} does not apply to {template!r}")
        center = template.center_q
        cached = tuple(
            template._edge_by_midpoint[op.apply_q(center, e.midpoint_q)]
            for e in template.edges
        )
        template._perm_cache[key] = cached
    return cached


def cell_perm(template: Template, op: SymOp) -> tuple[int, ...]:
    """Permutation of cell indices induced by an operation (cached)."""
    key = ("cell", op.name)
    cached = template._perm_cache.get(key)
    if cached is None:
        if not is_applicable(template, op):
            raise InapplicableSymmetryError(f"{op.name} does not apply to {template!r}")
        index = {c: i for i, c in enumerate(template.cells)}
        cached = tuple(index[act_on_cell(template, op, c)] for c in template.cells)
        template._perm_cache[key] = cached
    return cached


def _orbits(perms: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    seen = [False] * n
    orbits: list[tuple[int, ...]] = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for perm in perms:
                y = perm[x]
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        orbits.append(tuple(sorted(members)))
    return tuple(sorted(orbits, key=lambda orbit: orbit[0]))


def edge_orbits(template: Template, pg: PointGroup) -> tuple[tuple[int, ...], ...]:
    """Orbits of shared-edge indices under a point group."""
    perms = [edge_perm(template, op) for op in pg.ops]
    return _orbits(perms, template.edge_count)


def cell_orbits(template: Template, pg: PointGroup) -> tuple[tuple[int, ...], ...]:
    """Orbits of cell indices under a point group."""
    perms = [cell_perm(template, op) for op in pg.ops]
    return _orbits(perms, template.cell_count)


def op_cycles(template: Template, op: SymOp) -> tuple[tuple[int, ...], ...]:
    """Cycles of a single operation on edge indices."""
    return _orbits([edge_perm(template, op)], template.edge_count)


def stabilizer_ops(template: Template, crossings: Sequence[bool]) -> frozenset[SymOp]:
    fixed = []
    for op in applicable_ops(template):
        perm = edge_perm(template, op)
        if all(crossings[perm[i]] == crossings[i] for i in range(template.edge_count)):
            fixed.append(op)
    return frozenset(fixed)


def stabilizer(kolam: "Kolam") -> PointGroup:
    """Largest subgroup of the template group fixing the crossing assignment."""
    return classify_ops(stabilizer_ops(kolam.template, kolam.crossings))


def subgroup_lattice(template: Template) -> tuple[PointGroup, ...]:
    """All subgroups of the template group: 10 for squares, 5 for rectangles.

    Sorted by (order, label, diagonal) so iteration order is deterministic.
    """
    ops = applicable_ops(template)
    non_identity = [op for op in ops if op is not IDENTITY]
    found: set[frozenset[SymOp]] = set()
    for mask in range(1 << len(non_identity)):
        subset = frozenset(
            [IDENTITY] + [op for bit, op in enumerate(non_identity) if mask >> bit & 1]
        )
        if all(compose(a, b) in subset for a in subset for b in subset):
            found.add(subset)
    groups = [classify_ops(s) for s in found]
    return tuple(sorted(groups, key=lambda g: (g.order, g.label, g.diagonal or "")))
