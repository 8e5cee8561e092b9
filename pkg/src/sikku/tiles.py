"""The six square kolam tiles and their loose-end combinatorics.

A tile is identified by the subset of its four edge midpoints that carry
loose ends.  There are 16 such subsets, and exactly 16 (kind, rotation)
pairs once rotations that map a tile onto itself are collapsed, so the two
views are interchangeable: ``kind_of_endset`` and ``endset_of`` form a
bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping


class EdgeDir(Enum):
    """Tile-local edge direction (one per edge midpoint)."""

    N = "n"
    E = "e"
    S = "s"
    W = "w"

    @property
    def index(self) -> int:
        return _DIR_INDEX[self]

    def rotated(self, quarter_turns: int) -> "EdgeDir":
        """Image after clockwise quarter turns: N -> E -> S -> W -> N."""
        return DIR_ORDER[(self.index + quarter_turns) % 4]

    @property
    def opposite(self) -> "EdgeDir":
        return self.rotated(2)


DIR_ORDER: tuple[EdgeDir, ...] = (EdgeDir.N, EdgeDir.E, EdgeDir.S, EdgeDir.W)
_DIR_INDEX = {d: i for i, d in enumerate(DIR_ORDER)}


class MirrorAxis(Enum):
    """Reflection axis through the tile center, in the tile-local frame.

    The name gives the direction of the mirror line itself: a VERTICAL
    axis runs north-south, so it fixes N and S and swaps E with W.
    """

    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    DIAG_NE = "diag-ne"  # line through the NE and SW corners
    DIAG_NW = "diag-nw"  # line through the NW and SE corners


_AXIS_SWAPS: dict[MirrorAxis, dict[EdgeDir, EdgeDir]] = {
    MirrorAxis.HORIZONTAL: {
        EdgeDir.N: EdgeDir.S,
        EdgeDir.S: EdgeDir.N,
        EdgeDir.E: EdgeDir.E,
        EdgeDir.W: EdgeDir.W,
    },
    MirrorAxis.VERTICAL: {
        EdgeDir.N: EdgeDir.N,
        EdgeDir.S: EdgeDir.S,
        EdgeDir.E: EdgeDir.W,
        EdgeDir.W: EdgeDir.E,
    },
    MirrorAxis.DIAG_NE: {
        EdgeDir.N: EdgeDir.E,
        EdgeDir.E: EdgeDir.N,
        EdgeDir.S: EdgeDir.W,
        EdgeDir.W: EdgeDir.S,
    },
    MirrorAxis.DIAG_NW: {
        EdgeDir.N: EdgeDir.W,
        EdgeDir.W: EdgeDir.N,
        EdgeDir.S: EdgeDir.E,
        EdgeDir.E: EdgeDir.S,
    },
}


class TileKind(Enum):
    """The six tile kinds, named by the curve motif drawn around the dot."""

    CIRCLE = "circle"
    DROP = "drop"
    EYE = "eye"
    DOOR = "door"
    FAN = "fan"
    DIAMOND = "diamond"

    @property
    def loose_ends(self) -> int:
        return len(_BASE_ENDSET[self])

    @property
    def distinct_rotations(self) -> int:
        """Number of rotations producing distinct endsets (1, 2 or 4)."""
        return _ROTATION_PERIOD[self]


# Canonical rotation-0 endsets.  Eye = opposite edges, Door = adjacent
# edges: the Door must lack edge-parallel mirror symmetry yet be allowed on
# a diagonal mirror, which only the adjacent-ends tile satisfies.
_BASE_ENDSET: dict[TileKind, frozenset[EdgeDir]] = {
    TileKind.CIRCLE: frozenset(),
    TileKind.DROP: frozenset({EdgeDir.N}),
    TileKind.EYE: frozenset({EdgeDir.N, EdgeDir.S}),
    TileKind.DOOR: frozenset({EdgeDir.N, EdgeDir.E}),
    TileKind.FAN: frozenset({EdgeDir.N, EdgeDir.E, EdgeDir.S}),
    TileKind.DIAMOND: frozenset(DIR_ORDER),
}

_ROTATION_PERIOD: dict[TileKind, int] = {
    TileKind.CIRCLE: 1,
    TileKind.DROP: 4,
    TileKind.EYE: 2,
    TileKind.DOOR: 4,
    TileKind.FAN: 4,
    TileKind.DIAMOND: 1,
}


@dataclass(frozen=True)
class TilePlacement:
    """A tile kind at a canonical rotation (quarter turns clockwise).

    The rotation is reduced modulo the kind's distinct-rotation count, so
    equal placements compare equal regardless of how they were built.
    """

    kind: TileKind
    rotation: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation", self.rotation % self.kind.distinct_rotations)

    def rotated(self, quarter_turns: int) -> "TilePlacement":
        return TilePlacement(self.kind, self.rotation + quarter_turns)


ALL_PLACEMENTS: tuple[TilePlacement, ...] = tuple(
    TilePlacement(kind, rot)
    for kind in TileKind
    for rot in range(kind.distinct_rotations)
)


def endset_of(placement: TilePlacement) -> frozenset[EdgeDir]:
    """Loose-end directions of a placement (inverse of kind_of_endset)."""
    return frozenset(d.rotated(placement.rotation) for d in _BASE_ENDSET[placement.kind])


_ENDSET_TO_PLACEMENT: dict[frozenset[EdgeDir], TilePlacement] = {
    endset_of(p): p for p in ALL_PLACEMENTS
}
assert len(_ENDSET_TO_PLACEMENT) == 16


def kind_of_endset(ends: Iterable[EdgeDir]) -> TilePlacement:
    """The unique placement whose loose-end set equals ``ends``.

    Total over all 16 subsets of {N, E, S, W}; never fails.
    """
    return _ENDSET_TO_PLACEMENT[frozenset(ends)]


def reflect_endset(ends: Iterable[EdgeDir], axis: MirrorAxis) -> frozenset[EdgeDir]:
    swap = _AXIS_SWAPS[axis]
    return frozenset(swap[d] for d in ends)


def is_self_mirror(placement: TilePlacement, axis: MirrorAxis) -> bool:
    """True iff the placement's endset is invariant under the reflection."""
    ends = endset_of(placement)
    return reflect_endset(ends, axis) == ends


@dataclass(frozen=True)
class TileMultiset:
    """Tile counts per kind, as used by feasibility checks and puzzles."""

    circle: int = 0
    drop: int = 0
    eye: int = 0
    door: int = 0
    fan: int = 0
    diamond: int = 0

    def __post_init__(self) -> None:
        for kind in TileKind:
            if self.count(kind) < 0:
                raise ValueError(f"negative count for {kind.value}")

    def count(self, kind: TileKind) -> int:
        return getattr(self, kind.value)

    @property
    def total(self) -> int:
        return sum(self.count(k) for k in TileKind)

    @property
    def loose_end_total(self) -> int:
        return sum(self.count(k) * k.loose_ends for k in TileKind)

    @property
    def ends_pair_up(self) -> bool:
        """Whether the loose ends can be grouped into pairs at all."""
        return self.loose_end_total % 2 == 0

    @property
    def pair_count(self) -> int | None:
        """Number of loose-end pairs, or None when the total is odd."""
        total = self.loose_end_total
        return total // 2 if total % 2 == 0 else None

    @classmethod
    def from_kinds(cls, kinds: Iterable[TileKind]) -> "TileMultiset":
        counts = {k: 0 for k in TileKind}
        for kind in kinds:
            counts[kind] += 1
        return cls(**{k.value: v for k, v in counts.items()})

    @classmethod
    def from_dict(cls, data: Mapping[str, int]) -> "TileMultiset":
        known = {k.value for k in TileKind}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown tile kinds: {sorted(unknown)}")
        return cls(**{key: int(value) for key, value in data.items()})

    def to_dict(self) -> dict[str, int]:
        return {k.value: self.count(k) for k in TileKind}
