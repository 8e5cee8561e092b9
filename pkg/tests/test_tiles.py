from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sikku.tiles import (
    ALL_PLACEMENTS,
    DIR_ORDER,
    EdgeDir,
    MirrorAxis,
    TileKind,
    TileMultiset,
    TilePlacement,
    endset_of,
    is_self_mirror,
    kind_of_endset,
    reflect_endset,
)

ALL_SUBSETS = [
    frozenset(c) for r in range(5) for c in itertools.combinations(DIR_ORDER, r)
]


def test_loose_end_counts():
    expected = {
        TileKind.CIRCLE: 0,
        TileKind.DROP: 1,
        TileKind.EYE: 2,
        TileKind.DOOR: 2,
        TileKind.FAN: 3,
        TileKind.DIAMOND: 4,
    }
    for kind, ends in expected.items():
        assert kind.loose_ends == ends


def test_distinct_rotation_counts_sum_to_sixteen():
    expected = {
        TileKind.CIRCLE: 1,
        TileKind.DROP: 4,
        TileKind.EYE: 2,
        TileKind.DOOR: 4,
        TileKind.FAN: 4,
        TileKind.DIAMOND: 1,
    }
    for kind, n in expected.items():
        assert kind.distinct_rotations == n
    assert sum(expected.values()) == 16
    assert len(ALL_PLACEMENTS) == 16


def test_bijection_over_all_subsets():
    seen = {endset_of(p) for p in ALL_PLACEMENTS}
    assert seen == set(ALL_SUBSETS)
    for subset in ALL_SUBSETS:
        assert endset_of(kind_of_endset(subset)) == subset
    for p in ALL_PLACEMENTS:
        assert kind_of_endset(endset_of(p)) == p


@pytest.mark.parametrize(
    "ends,expected",
    [
        (frozenset(), TilePlacement(TileKind.CIRCLE, 0)),
        (frozenset(DIR_ORDER), TilePlacement(TileKind.DIAMOND, 0)),
        (frozenset({EdgeDir.N, EdgeDir.S}), TilePlacement(TileKind.EYE, 0)),
        (frozenset({EdgeDir.N, EdgeDir.E}), TilePlacement(TileKind.DOOR, 0)),
    ],
)
def test_kind_of_endset_examples(ends, expected):
    assert kind_of_endset(ends) == expected


@pytest.mark.parametrize(
    "placement,expected",
    [
        (TilePlacement(TileKind.DROP, 0), {EdgeDir.N}),
        (TilePlacement(TileKind.FAN, 1), {EdgeDir.E, EdgeDir.S, EdgeDir.W}),
        (TilePlacement(TileKind.EYE, 1), {EdgeDir.E, EdgeDir.W}),
    ],
)
def test_endset_examples(placement, expected):
    assert endset_of(placement) == frozenset(expected)


@given(st.sampled_from(ALL_PLACEMENTS), st.integers(-8, 8))
def test_rotation_equivariance(placement, q):
    rotated = placement.rotated(q)
    assert endset_of(rotated) == frozenset(d.rotated(q) for d in endset_of(placement))


def test_rotation_canonicalization():
    assert TilePlacement(TileKind.CIRCLE, 3) == TilePlacement(TileKind.CIRCLE, 0)
    assert TilePlacement(TileKind.DIAMOND, 2).rotation == 0
    assert TilePlacement(TileKind.EYE, 3).rotation == 1
    assert TilePlacement(TileKind.DROP, 5).rotation == 1


def test_mirror_coherence_all_64_cases():
    for placement in ALL_PLACEMENTS:
        ends = endset_of(placement)
        for axis in MirrorAxis:
            assert is_self_mirror(placement, axis) == (reflect_endset(ends, axis) == ends)


@pytest.mark.parametrize(
    "placement,axis,expected",
    [
        (TilePlacement(TileKind.DOOR, 0), MirrorAxis.HORIZONTAL, False),
        (TilePlacement(TileKind.DOOR, 0), MirrorAxis.DIAG_NE, True),
        (TilePlacement(TileKind.EYE, 0), MirrorAxis.VERTICAL, True),
    ],
)
def test_mirror_examples(placement, axis, expected):
    assert is_self_mirror(placement, axis) is expected


def test_door_never_edge_parallel_symmetric():
    for rot in range(4):
        door = TilePlacement(TileKind.DOOR, rot)
        assert not is_self_mirror(door, MirrorAxis.HORIZONTAL)
        assert not is_self_mirror(door, MirrorAxis.VERTICAL)


def test_diagonal_mirror_allows_only_circle_door_diamond():
    fixed = {p.kind for p in ALL_PLACEMENTS if is_self_mirror(p, MirrorAxis.DIAG_NE)}
    assert fixed == {TileKind.CIRCLE, TileKind.DOOR, TileKind.DIAMOND}


def test_multiset_arithmetic():
    m = TileMultiset(circle=1, drop=3, eye=2, door=4, fan=2, diamond=1)
    assert m.total == 13
    assert m.loose_end_total == 0 + 3 + 4 + 8 + 6 + 4
    assert not m.ends_pair_up
    assert m.pair_count is None
    # parity of the end total always equals the drop+fan parity
    for counts in itertools.product(range(3), repeat=6):
        mm = TileMultiset(*counts)
        assert mm.loose_end_total % 2 == (mm.drop + mm.fan) % 2


def test_multiset_round_trip_and_validation():
    m = TileMultiset(door=4)
    assert TileMultiset.from_dict(m.to_dict()) == m
    with pytest.raises(ValueError):
        TileMultiset(drop=-1)
    with pytest.raises(ValueError):
        TileMultiset.from_dict({"sparrow": 1})
