"""Counting and generating kolams per symmetry class.

A kolam over a template is one boolean crossing state per shared edge.
Tiles are induced: each cell's kind is determined by which of its incident
edges are crossed, and boundary edges carry no loose ends, so every
assignment is a valid kolam by construction.

Counting model: the number of kolams invariant under a point group G is
2 ** E_s(G), where E_s(G) is the number of shared-edge orbits under G.
``closed_form_es`` implements the per-group closed forms for both template
variants; ``count_with_symmetry`` cross-checks them against the generic
orbit computation on every call.  Refinements beyond fixed-point counting
are provided separately: ``count_exact_symmetry`` (assignments whose full
stabilizer is exactly a given subgroup, by Moebius inversion over the
subgroup lattice) and ``count_up_to_symmetry`` (orbit count of assignments
under the whole template group, by Burnside's lemma).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceededError, InapplicableSymmetryError
from .symmetry import (
    PointGroup,
    SQUARE_ONLY_LABELS,
    edge_orbits,
    group,
    op_cycles,
    stabilizer_ops,
    subgroup_lattice,
    template_group,
)
from .template import CellId, Template, Variant
from .tiles import EdgeDir, TileMultiset, TilePlacement, kind_of_endset

DEFAULT_BRUTE_CAP = 24
_CAP_ENV = "KOLAM_MAX_EDGES"


def brute_force_cap() -> int:
    raw = os.environ.get(_CAP_ENV, "")
    try:
        return int(raw) if raw else DEFAULT_BRUTE_CAP
    except ValueError:
        return DEFAULT_BRUTE_CAP


@dataclass(frozen=True)
class Kolam:
    """A template plus one crossing bit per shared edge (canonical order)."""

    template: Template
    crossings: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.crossings) != self.template.edge_count:
            raise ValueError(
                f"crossing vector length {len(self.crossings)} != "
                f"shared-edge count {self.template.edge_count}"
            )

    @property
    def bitstring(self) -> str:
        return "".join("1" if c else "0" for c in self.crossings)

    @classmethod
    def from_mask(cls, template: Template, mask: int) -> "Kolam":
        return cls(template, tuple(bool(mask >> i & 1) for i in range(template.edge_count)))

    @classmethod
    def all_uncrossed(cls, template: Template) -> "Kolam":
        return cls(template, (False,) * template.edge_count)

    def endset(self, cell: CellId) -> frozenset[EdgeDir]:
        return frozenset(
            d for idx, d in self.template.cell_edges[cell] if self.crossings[idx]
        )

    def placement(self, cell: CellId) -> TilePlacement:
        return kind_of_endset(self.endset(cell))


def all_kolams(template: Template, cap: int | None = None, force: bool = False) -> Iterator[Kolam]:
    """Every crossing assignment, in mask order; guarded by the brute cap."""
    limit = cap if cap is not None else brute_force_cap()
    if template.edge_count > limit and not force:
        raise CapExceededError(
            f"{template!r} has {template.edge_count} edges > cap {limit}; "
            "pass force=True to override"
        )
    for mask in range(1 << template.edge_count):
        yield Kolam.from_mask(template, mask)


# -- closed forms -------------------------------------------------------------

def closed_form_es(template: Template, label: str) -> int | None:
    """Independently-specifiable edge count per group, or None for no kolam.

    These are the per-label closed forms for both template variants,
    including parity branches; None encodes the "k != l: no kolam" cases
    of the four square-only groups.
    """
    k, l = template.k, template.l
    square = k == l
    if label in SQUARE_ONLY_LABELS and not square:
        return None
    if template.variant is Variant.ONE_R:
        kl = k * l
        if label == "1":
            return 2 * kl - k - l
        if label == "m-k":
            return kl - k // 2 if k % 2 == 0 else kl - (k + 1) // 2
        if label == "m-l":
            return kl - l // 2 if l % 2 == 0 else kl - (l + 1) // 2
        if label == "md":
            return k * (k - 1)
        if label == "2":
            return kl - (k + l) // 2 if (k + l) % 2 == 0 else kl - (k + l - 1) // 2
        if label == "2mm":
            return kl // 2 if kl % 2 == 0 else (kl - 1) // 2
        if label in ("2mdmd", "4"):
            return k * (k - 1) // 2
        if label == "4mmd":
            return k * k // 4 if k % 2 == 0 else (k * k - 1) // 4
    else:
        m = (k - 1) * (l - 1)
        if label == "1":
            return 4 * m
        if label in ("m-k", "m-l", "2"):
            return 2 * m
        if label == "md":
            return 2 * (k - 1) * (k - 1) + (k - 1)
        if label == "2mm":
            return m
        if label == "2mdmd":
            return (k - 1) * (k - 1) + (k - 1)
        if label == "4":
            return (k - 1) * (k - 1)
        if label == "4mmd":
            return ((k - 1) * (k - 1) + (k - 1)) // 2
    raise InapplicableSymmetryError(f"unknown point group label {label!r}")


@dataclass(frozen=True)
class CountReport:
    """Count of kolams invariant under a group, with its provenance."""

    label: str
    es: int | None
    count: int
    source: str
    no_kolam: bool

    @property
    def count_str(self) -> str:
        return str(self.count)


def count_with_symmetry(template: Template, pg: PointGroup | str) -> CountReport:
    """Number of assignments invariant under the group: 2 ** E_s.

    An inapplicable group yields a no-kolam report with count 0 rather
    than an error.  The closed form and the orbit count are both computed
    and must agree; a mismatch would mean a defect in one of them and
    raises immediately.
    """
    label = pg if isinstance(pg, str) else pg.label
    cf = closed_form_es(template, label)
    if label in SQUARE_ONLY_LABELS and template.k != template.l:
        return CountReport(label, None, 0, "closed_form", True)
    g = group(template, label) if isinstance(pg, str) else pg
    es = len(edge_orbits(template, g))
    if cf != es:
        raise AssertionError(
            f"closed form {cf} != orbit count {es} for {template!r} {label}"
        )
    return CountReport(label, es, 1 << es, "closed_form,orbit_oracle", False)


# -- generation ---------------------------------------------------------------

def generate_with_symmetry(
    template: Template,
    pg: PointGroup | str,
    offset: int = 0,
    limit: int | None = None,
) -> list[Kolam]:
    """Deterministic enumeration of all G-invariant kolams.

    Orbit representatives are the lexicographically least edge of each
    orbit; the i-th kolam writes i in binary across the representatives
    (most significant bit on the least representative) and propagates each
    bit over its orbit.  Index 0 is therefore the all-uncrossed kolam.
    """
    if offset < 0 or (limit is not None and limit < 0):
        raise ValueError("offset and limit must be nonnegative")
    g = group(template, pg) if isinstance(pg, str) else pg
    orbits = edge_orbits(template, g)  # already sorted by representative
    es = len(orbits)
    total = 1 << es
    if offset >= total:
        return []
    count = total - offset if limit is None else min(limit, total - offset)
    out = []
    for index in range(offset, offset + count):
        crossings = [False] * template.edge_count
        for bit_pos, orbit in enumerate(orbits):
            if index >> (es - 1 - bit_pos) & 1:
                for e in orbit:
                    crossings[e] = True
        out.append(Kolam(template, tuple(crossings)))
    return out


# -- refinements ---------------------------------------------------------------

def count_exact_symmetry(template: Template, pg: PointGroup | str) -> int:
    """Assignments whose stabilizer equals the given subgroup exactly.

    Moebius inversion over the subgroup lattice: the fixed-point count of
    H is 2 ** orbits(H), and exact(H) subtracts the exact counts of every
    strictly larger subgroup.
    """
    target = group(template, pg) if isinstance(pg, str) else pg
    lattice = subgroup_lattice(template)
    exact: dict[frozenset, int] = {}
    for g in sorted(lattice, key=lambda x: -x.order):
        fixed = 1 << len(edge_orbits(template, g))
        above = sum(exact[h.ops] for h in lattice if g.ops < h.ops)
        exact[g.ops] = fixed - above
    if target.ops not in exact:
        raise InapplicableSymmetryError(f"{target.label} is not a subgroup of {template!r}")
    return exact[target.ops]


def count_up_to_symmetry(template: Template) -> int:
    """Assignment orbits under the full template group (Burnside average)."""
    g = template_group(template)
    total = 0
    for op in g.ops:
        total += 1 << len(op_cycles(template, op))
    assert total % g.order == 0
    return total // g.order


def tile_multiset_of(kolam: Kolam) -> TileMultiset:
    """Counts of the induced tile kinds, one per cell."""
    return TileMultiset.from_kinds(
        kolam.placement(cell).kind for cell in kolam.template.cells
    )


# -- brute-force oracles --------------------------------------------------------

def fixed_count_brute(template: Template, pg: PointGroup | str,
                      cap: int | None = None, force: bool = False) -> int:
    """Count assignments fixed by every op of the group, by exhaustive scan."""
    g = group(template, pg) if isinstance(pg, str) else pg
    limit = cap if cap is not None else brute_force_cap()
    n = template.edge_count
    if n > limit and not force:
        raise CapExceededError(f"{n} edges > cap {limit}")
    cycles = [op_cycles(template, op) for op in g.ops]
    count = 0
    for mask in range(1 << n):
        if all(_constant_on_cycles(mask, cyc) for cyc in cycles):
            count += 1
    return count


def _constant_on_cycles(mask: int, cycles: tuple[tuple[int, ...], ...]) -> bool:
    for cycle in cycles:
        first = mask >> cycle[0] & 1
        for idx in cycle[1:]:
            if mask >> idx & 1 != first:
                return False
    return True


def brute_force_histogram(
    template: Template, cap: int | None = None, force: bool = False
) -> dict[PointGroup, int]:
    """Histogram of exact stabilizers over all 2**edges assignments.

    The independent oracle behind the counting operations: iterates every
    assignment and computes its stabilizer by filtering group elements.
    Refuses above the cap (default 24 edges, KOLAM_MAX_EDGES overrides)
    unless forced.
    """
    limit = cap if cap is not None else brute_force_cap()
    n = template.edge_count
    if n > limit and not force:
        raise CapExceededError(
            f"{template!r} has {n} edges > cap {limit}; pass force=True to override"
        )
    lattice = {g.ops: g for g in subgroup_lattice(template)}
    histogram: dict[PointGroup, int] = {g: 0 for g in lattice.values()}
    for mask in range(1 << n):
        crossings = tuple(bool(mask >> i & 1) for i in range(n))
        ops = stabilizer_ops(template, crossings)
        histogram[lattice[ops]] += 1
    return histogram
