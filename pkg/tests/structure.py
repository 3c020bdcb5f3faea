"""Structural invariants of the pipeline, computed per input for the tests."""

from __future__ import annotations

from dataclasses import dataclass, field

from bookshelf.augment import k4_violations, normalize, planar_skeleton, separation_pairs
from bookshelf.graph import OnePlanarEmbedding
from bookshelf.peel import NotCactus, biconnected_blocks, check_cactus
from bookshelf.pipeline import leaf_parts, order_vertices


@dataclass
class StructureReport:
    three_connected: bool
    k4_induced: bool
    faces_ok: bool | None  # None when the input has a separation pair
    cactus_ok: bool
    level_gap_ok: bool
    cycle_span_ok: bool  # no level <= k-2 inside the spine span of a level-k cycle
    interior_span_ok: bool  # no level <= k-1 inside the span of a level-k cycle's interior
    literal_span_violations: int  # spans of an interior holding some vertex of level <= k
    regions: int
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.k4_induced
            and self.faces_ok is not False
            and self.cactus_ok
            and self.level_gap_ok
            and self.cycle_span_ok
            and self.interior_span_ok
        )


def _span_levels(order: list[int], pos: dict[int, int], level: list[int], vs) -> list[int]:
    lo = min(pos[v] for v in vs)
    hi = max(pos[v] for v in vs)
    return [level[order[p]] for p in range(lo, hi + 1)]


def structure_report(emb: OnePlanarEmbedding) -> StructureReport:
    """Invariants of the normalized input and of every piece general mode
    orders (the input itself when it has no separation pair)."""
    norm, _ = normalize(emb, tags=False)
    tri = not separation_pairs(norm)
    total = StructureReport(tri, not k4_violations(norm), None, True, True, True, True, 0, 0)
    for part in leaf_parts(emb):
        r = _part_report(part)
        total.faces_ok = r.faces_ok if tri else None
        total.k4_induced &= r.k4_induced
        total.cactus_ok &= r.cactus_ok
        total.level_gap_ok &= r.level_gap_ok
        total.cycle_span_ok &= r.cycle_span_ok
        total.interior_span_ok &= r.interior_span_ok
        total.literal_span_violations += r.literal_span_violations
        total.regions += r.regions
        total.problems += r.problems
    return total


def _part_report(norm: OnePlanarEmbedding) -> StructureReport:
    problems: list[str] = []
    k4 = not k4_violations(norm)
    degs = planar_skeleton(norm).inner_face_degrees()
    faces_ok = all(d in (3, 4) for d in degs)
    if not faces_ok:
        problems.append(f"inner face sizes {sorted(set(degs))}")
    ctx, _, order = order_vertices(norm)
    level = ctx.ld.level
    gap_ok = all(abs(level[u] - level[v]) <= 1 for u, v in norm.edges)
    sk_edges = ctx.sk.graph.edge_set
    cactus_ok = True
    pos = {v: i for i, v in enumerate(order)}
    cyc_ok = inner_ok = True
    literal = 0
    for r in ctx.ld.regions:
        k = r.level
        inner = ctx.region_inner[r.id]
        adj: dict[int, list[int]] = {}
        for u, v in ctx.region_edges[r.id]:
            if (u, v) in sk_edges and level[u] == level[v] == k + 1:
                adj.setdefault(u, []).append(v)
                adj.setdefault(v, []).append(u)
        try:
            check_cactus(biconnected_blocks(sorted(adj), adj))
        except NotCactus as exc:
            cactus_ok = False
            problems.append(f"region {r.id}: {exc}")
        if k >= 2 and any(x <= k - 2 for x in _span_levels(order, pos, level, r.cycle)):
            cyc_ok = False
            problems.append(f"region {r.id}: cycle span holds level <= {k - 2}")
        if inner:
            span = _span_levels(order, pos, level, inner)
            if any(x <= k - 1 for x in span):
                inner_ok = False
                problems.append(f"region {r.id}: interior span holds level <= {k - 1}")
            if any(x <= k for x in span):
                literal += 1
    return StructureReport(
        True, k4, faces_ok, cactus_ok, gap_ok, cyc_ok, inner_ok, literal, len(ctx.ld.regions), problems
    )
