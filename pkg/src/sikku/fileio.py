"""Serialization: the kolam file format and related JSON payloads.

A kolam file is {"version": 1, "template": {"variant", "k", "l"},
"crossings": "<0/1 string>"} with one character per shared edge in the
canonical (lexicographic cell-pair) edge order.  Parsing then serializing
is the identity.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .enumeration import Kolam
from .errors import FormatError
from .feasibility import PartialPlacement
from .template import CellId, Template, Variant, build
from .tiles import TileKind, TileMultiset, TilePlacement

FILE_VERSION = 1


def template_to_dict(template: Template) -> dict[str, Any]:
    return {"variant": template.variant.value, "k": template.k, "l": template.l}


def template_from_dict(data: Mapping[str, Any]) -> Template:
    try:
        variant = Variant(str(data["variant"]).lower())
        k = int(data["k"])
        l = int(data["l"])
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"bad template payload: {data!r}") from exc
    return build(variant, k, l)


def kolam_to_dict(kolam: Kolam) -> dict[str, Any]:
    return {
        "version": FILE_VERSION,
        "template": template_to_dict(kolam.template),
        "crossings": kolam.bitstring,
    }


def kolam_from_dict(data: Mapping[str, Any]) -> Kolam:
    if not isinstance(data, Mapping):
        raise FormatError("kolam payload must be an object")
    version = data.get("version", FILE_VERSION)
    if version != FILE_VERSION:
        raise FormatError(f"unsupported kolam file version {version!r}")
    template = template_from_dict(data.get("template", {}))
    bits = data.get("crossings")
    if not isinstance(bits, str) or set(bits) - {"0", "1"}:
        raise FormatError("crossings must be a 0/1 string")
    if len(bits) != template.edge_count:
        raise FormatError(
            f"crossings length {len(bits)} != shared-edge count {template.edge_count}"
        )
    return Kolam(template, tuple(ch == "1" for ch in bits))


def dumps_kolam(kolam: Kolam) -> str:
    return json.dumps(kolam_to_dict(kolam), sort_keys=True)


def loads_kolam(text: str) -> Kolam:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return kolam_from_dict(data)


def multiset_from_dict(data: Mapping[str, Any]) -> TileMultiset:
    if not isinstance(data, Mapping):
        raise FormatError("multiset payload must be an object")
    try:
        return TileMultiset.from_dict({str(k): int(v) for k, v in data.items()})
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad multiset payload: {data!r}") from exc


def placement_from_dict(data: Mapping[str, Any]) -> PartialPlacement:
    """Parse {"template": ..., "placements": [{"cell","kind","rotation"}...]}."""
    template = template_from_dict(data.get("template", {}))
    raw = data.get("placements", [])
    if not isinstance(raw, list):
        raise FormatError("placements must be a list")
    placements: dict[CellId, TilePlacement] = {}
    for entry in raw:
        try:
            cell = CellId.parse(str(entry["cell"]))
            kind = TileKind(str(entry["kind"]).lower())
            rotation = int(entry.get("rotation", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad placement entry: {entry!r}") from exc
        if cell in placements:
            raise FormatError(f"cell {cell.token()} placed twice")
        if not template.has_cell(cell):
            raise FormatError(f"cell {cell.token()} not in template")
        placements[cell] = TilePlacement(kind, rotation)
    return PartialPlacement(template, placements)


def placement_to_dict(partial: PartialPlacement) -> dict[str, Any]:
    return {
        "template": template_to_dict(partial.template),
        "placements": [
            {"cell": cell.token(), "kind": p.kind.value, "rotation": p.rotation}
            for cell, p in sorted(partial.placements.items())
        ],
    }
