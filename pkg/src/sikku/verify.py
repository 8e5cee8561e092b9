"""Brute-force consistency suite behind the `verify` command.

Every check pits a closed form or fast path against an independent
exhaustive computation on small templates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .enumeration import (
    Kolam,
    brute_force_histogram,
    closed_form_es,
    count_exact_symmetry,
    count_up_to_symmetry,
    fixed_count_brute,
    tile_multiset_of,
)
from .strands import encirclement_check, trace
from .symmetry import (
    TABLE_LABELS,
    applicable_ops,
    edge_orbits,
    edge_perm,
    group,
    subgroup_lattice,
    template_group,
)
from .template import Template, Variant, build


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _templates(max_k: int, max_l: int, max_edges: int | None = None) -> list[Template]:
    out = []
    for variant in Variant:
        for k in range(1, max_k + 1):
            for l in range(k, max_l + 1):
                t = build(variant, k, l)
                if max_edges is None or t.edge_count <= max_edges:
                    out.append(t)
    return out


def _applicable_labels(t: Template) -> list[str]:
    if t.k == t.l:
        return list(TABLE_LABELS)
    return [lab for lab in TABLE_LABELS if lab in ("1", "m-k", "m-l", "2", "2mm")]


def check_closed_form_vs_orbits(max_kl: int = 8) -> CheckResult:
    mismatches = []
    for t in _templates(max_kl, max_kl):
        for label in _applicable_labels(t):
            cf = closed_form_es(t, label)
            es = len(edge_orbits(t, group(t, label)))
            if cf != es:
                mismatches.append((t, label, cf, es))
    return CheckResult(
        "closed-form-vs-orbit",
        not mismatches,
        f"{len(mismatches)} mismatches" if mismatches else "all closed forms equal orbit counts",
    )


def check_fixed_counts(max_edges: int = 12) -> CheckResult:
    bad = []
    for t in _templates(5, 5, max_edges):
        for label in _applicable_labels(t):
            es = len(edge_orbits(t, group(t, label)))
            brute = fixed_count_brute(t, label, cap=max_edges, force=True)
            if brute != 1 << es:
                bad.append((t, label, brute, es))
    return CheckResult(
        "invariant-count-brute-force",
        not bad,
        f"{len(bad)} disagreements" if bad else "2**orbits matches exhaustive fixed counts",
    )


def check_moebius_partition(max_edges: int = 12) -> CheckResult:
    bad = []
    for t in _templates(4, 4, max_edges):
        lattice = subgroup_lattice(t)
        hist = brute_force_histogram(t, cap=max_edges, force=True)
        total = 0
        for g in lattice:
            exact = count_exact_symmetry(t, g)
            total += exact
            if exact != hist[g]:
                bad.append((t, g.label, exact, hist[g]))
        if total != 1 << t.edge_count:
            bad.append((t, "sum", total, 1 << t.edge_count))
    return CheckResult(
        "exact-count-partition",
        not bad,
        f"{len(bad)} disagreements" if bad else "exact counts match stabilizer histograms and sum to 2**edges",
    )


def check_burnside(max_edges: int = 10) -> CheckResult:
    bad = []
    for t in _templates(3, 3, max_edges):
        predicted = count_up_to_symmetry(t)
        # independent oracle: explicit orbit partition of all assignments
        n = t.edge_count
        perms = [edge_perm(t, op) for op in applicable_ops(t)]
        seen = set()
        orbit_count = 0
        for mask in range(1 << n):
            if mask in seen:
                continue
            orbit_count += 1
            stack = [mask]
            seen.add(mask)
            while stack:
                m = stack.pop()
                for perm in perms:
                    img = 0
                    for i in range(n):
                        if m >> i & 1:
                            img |= 1 << perm[i]
                    if img not in seen:
                        seen.add(img)
                        stack.append(img)
        if predicted != orbit_count:
            bad.append((t, predicted, orbit_count))
    return CheckResult(
        "burnside-vs-orbit-partition",
        not bad,
        f"{len(bad)} disagreements" if bad else "Burnside counts match explicit orbit partitions",
    )


def check_theorems(max_edges: int = 12) -> CheckResult:
    bad = []
    for t in _templates(5, 5, max_edges):
        twice_t = 2 * t.cell_count
        if not t.edge_count < twice_t:
            bad.append((t, "upper-bound"))
            continue
        for mask in range(1 << t.edge_count):
            kolam = Kolam.from_mask(t, mask)
            m = tile_multiset_of(kolam)
            if (m.drop + m.fan) % 2 == 1:
                bad.append((t, mask, "parity"))
                break
            pairs = m.pair_count
            if pairs is None or pairs > t.edge_count:
                bad.append((t, mask, "budget"))
                break
    return CheckResult(
        "parity-and-budget-theorems",
        not bad,
        f"{len(bad)} violations" if bad else "every realized multiset satisfies parity and edge budget",
    )


def check_strands(max_edges: int = 8) -> CheckResult:
    bad = []
    for t in _templates(4, 4, max_edges):
        for mask in range(1 << t.edge_count):
            kolam = Kolam.from_mask(t, mask)
            result = trace(kolam)
            seen_ports = [p for loop in result.loops for p in loop.ports]
            if len(seen_ports) != len(set(seen_ports)) or len(seen_ports) != result.port_count:
                bad.append((t, mask, "matching"))
                break
            if not all(encirclement_check(kolam).values()):
                bad.append((t, mask, "encirclement"))
                break
            if t.cell_count and not (1 <= result.loop_count <= t.cell_count):
                bad.append((t, mask, "loop-bounds"))
                break
    return CheckResult(
        "strand-invariants",
        not bad,
        f"{len(bad)} violations" if bad else "perfect matching, encirclement and loop bounds hold",
    )


def check_stabilizer_brute(max_edges: int = 8) -> CheckResult:
    from .symmetry import stabilizer, stabilizer_ops

    bad = []
    for t in _templates(3, 3, max_edges):
        full = template_group(t)
        for mask in range(1 << t.edge_count):
            kolam = Kolam.from_mask(t, mask)
            pg = stabilizer(kolam)
            manual = frozenset(
                op for op in full.ops
                if all(
                    kolam.crossings[edge_perm(t, op)[i]] == kolam.crossings[i]
                    for i in range(t.edge_count)
                )
            )
            if pg.ops != manual or manual != stabilizer_ops(t, kolam.crossings):
                bad.append((t, mask))
                break
    return CheckResult(
        "stabilizer-brute-force",
        not bad,
        f"{len(bad)} disagreements" if bad else "stabilizers equal element-by-element filtering",
    )


def run_verification(max_edges: int = 12) -> list[CheckResult]:
    return [
        check_closed_form_vs_orbits(),
        check_fixed_counts(min(max_edges, 16)),
        check_moebius_partition(min(max_edges, 12)),
        check_burnside(min(max_edges, 10)),
        check_theorems(min(max_edges, 12)),
        check_strands(min(max_edges, 8)),
        check_stabilizer_brute(min(max_edges, 8)),
    ]
