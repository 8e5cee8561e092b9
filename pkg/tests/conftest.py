from __future__ import annotations

import pytest

from sikku.symmetry import TABLE_LABELS
from sikku.template import Template, Variant, build

RECT_LABELS = ("1", "m-k", "m-l", "2", "2mm")


def applicable_labels(template: Template) -> tuple[str, ...]:
    return TABLE_LABELS if template.k == template.l else RECT_LABELS


def sweep(max_k: int, max_l: int, max_edges: int | None = None) -> list[Template]:
    out = []
    for variant in Variant:
        for k in range(1, max_k + 1):
            for l in range(k, max_l + 1):
                t = build(variant, k, l)
                if max_edges is None or t.edge_count <= max_edges:
                    out.append(t)
    return out


@pytest.fixture(scope="session")
def small_templates() -> list[Template]:
    """The exhaustive-scan set: every template with at most 12 edges, k,l <= 5."""
    return sweep(5, 5, max_edges=12)
