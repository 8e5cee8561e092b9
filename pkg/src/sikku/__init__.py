"""Square-tile sikku kolam engine.

Models kolams as boolean crossing assignments on the shared edges of a
template, classifies their point-group symmetry, counts and enumerates
them per symmetry class, checks tile-multiset feasibility, traces strands
into closed loops, and renders SVG.
"""

from .enumeration import (
    CountReport,
    Kolam,
    brute_force_histogram,
    closed_form_es,
    count_exact_symmetry,
    count_up_to_symmetry,
    count_with_symmetry,
    generate_with_symmetry,
    tile_multiset_of,
)
from .feasibility import (
    FeasibilityReport,
    Infeasible,
    PartialPlacement,
    compose_from_multiset,
    edge_budget_check,
    feasibility_report,
    min_tiles_to_specify,
    mirror_line_constraints,
    parity_check,
    validate_partial,
)
from .fileio import dumps_kolam, kolam_from_dict, kolam_to_dict, loads_kolam
from .render import RenderStyle, render_catalog, render_svg
from .strands import encirclement_check, tile_strands, trace
from .symmetry import (
    PointGroup,
    SymOp,
    cell_orbits,
    edge_orbits,
    group,
    stabilizer,
    subgroup_lattice,
    template_group,
)
from .template import CellId, Edge, Template, Variant, build, edges_of_cell
from .tiles import (
    EdgeDir,
    MirrorAxis,
    TileKind,
    TileMultiset,
    TilePlacement,
    endset_of,
    is_self_mirror,
    kind_of_endset,
)

__version__ = "0.1.0"

__all__ = [
    "CellId",
    "CountReport",
    "Edge",
    "EdgeDir",
    "FeasibilityReport",
    "Infeasible",
    "Kolam",
    "MirrorAxis",
    "PartialPlacement",
    "PointGroup",
    "RenderStyle",
    "SymOp",
    "Template",
    "TileKind",
    "TileMultiset",
    "TilePlacement",
    "Variant",
    "brute_force_histogram",
    "build",
    "cell_orbits",
    "closed_form_es",
    "compose_from_multiset",
    "count_exact_symmetry",
    "count_up_to_symmetry",
    "count_with_symmetry",
    "dumps_kolam",
    "edge_budget_check",
    "edge_orbits",
    "edges_of_cell",
    "encirclement_check",
    "endset_of",
    "feasibility_report",
    "generate_with_symmetry",
    "group",
    "is_self_mirror",
    "kind_of_endset",
    "kolam_from_dict",
    "kolam_to_dict",
    "loads_kolam",
    "min_tiles_to_specify",
    "mirror_line_constraints",
    "parity_check",
    "render_catalog",
    "render_svg",
    "stabilizer",
    "subgroup_lattice",
    "template_group",
    "tile_multiset_of",
    "tile_strands",
    "trace",
    "validate_partial",
]
