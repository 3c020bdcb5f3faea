"""End-to-end book embedding of 1-planar graphs."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Iterator

from .augment import (
    NotThreeConnected,
    components_without,
    normalize,
    planar_skeleton,
    separation_pairs,
    sub_embedding,
)
from .book import BookEmbedding
from .graph import EmbeddingError, Graph, OnePlanarEmbedding, _norm, require_valid
from .peel import edge_owners, extract_two_level, level_decompose, vertex_levels
from .twolevel import (
    Context,
    Instance,
    Spine,
    assign_crossing_pages,
    build_blocks,
    child_instances,
    orient_and_assign_planar,
    place,
    select_crossing_set,
)
from .verify import ConflictReport, check_book_embedding

log = logging.getLogger(__name__)


class ConflictDetected(EmbeddingError):
    def __init__(self, report: ConflictReport, book: BookEmbedding | None = None):
        self.report = report
        self.book = book
        first = report.conflicts[0] if report.conflicts else None
        msg = f"{len(report.conflicts)} conflicting pairs"
        if first is not None:
            msg += f", first {first.e} x {first.f} on {first.page}"
        if report.coverage:
            msg += f"; coverage: {report.coverage[0]}"
        super().__init__(msg)


class NotHamiltonianCycle(EmbeddingError):
    pass


@dataclass
class Trace:
    """What the pipeline did, for debug dumps and the peel subcommand."""

    tags: dict[int, str] = field(default_factory=dict)
    instances: list[Instance] = field(default_factory=list)
    levels: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "levels": self.levels,
            "crossing_tags": {str(k): v for k, v in sorted(self.tags.items())},
            "instances": [i.to_json() for i in self.instances],
        }


def _debug_dump(trace: Trace) -> None:
    path = os.environ.get("BOOKSHELF_DEBUG_DUMP")
    if path:
        with open(path, "w") as fh:
            json.dump(trace.to_json(), fh)


# ---------------------------------------------------------------------------
# 3-connected inputs
# ---------------------------------------------------------------------------


def _context(emb: OnePlanarEmbedding):
    sk = planar_skeleton(emb)
    ld = level_decompose(sk)
    owners = edge_owners(emb, sk, ld)
    subs = extract_two_level(emb, sk, ld, owners)
    ctx = Context(
        emb=emb,
        sk=sk,
        ld=ld,
        owners=owners,
        region_edges=[s.edges for s in subs],
        region_crossings=[s.crossings for s in subs],
        region_inner=[s.inner for s in subs],
        hp=emb.plane_map(),
    )
    return ctx


def order_vertices(emb: OnePlanarEmbedding) -> tuple[Context, list[Instance], list[int]]:
    """Place every vertex on the spine, level by level from the outside in.

    Returns the shared context, every processed region in processing order
    and the final vertex order.  Pages are not assigned here.
    """
    ctx = _context(emb)
    ld = ctx.ld
    tops = [r for r in ld.regions if r.level == 0]
    if len(tops) != 1:
        raise EmbeddingError(f"expected one outermost region, found {len(tops)}")
    top = tops[0]
    cyc = list(top.cycle)
    first = Instance(top.id, 0, cyc, ctx.ld.region_of_face[ctx.sk.face_of[(cyc[1], cyc[0])]] != top.id)
    first.cidx = {v: i for i, v in enumerate(cyc)}
    spine = Spine(cyc)
    done: list[Instance] = []
    frontier = [first]
    while frontier:
        nxt = []
        for inst in frontier:
            select_crossing_set(ctx, inst)
            build_blocks(ctx, inst)
            place(ctx, inst, spine)
            nxt.extend(child_instances(ctx, inst))
            done.append(inst)
        frontier = nxt
    if len(done) != len(ld.regions):
        raise EmbeddingError(f"processed {len(done)} of {len(ld.regions)} regions")
    order = spine.order()
    if len(order) != emb.n:
        missing = sorted(set(range(emb.n)) - set(order))[:5]
        raise EmbeddingError(f"{emb.n - len(order)} vertices never placed, e.g. {missing}")
    return ctx, done, order


def _assign_pages(ctx: Context, insts: list[Instance], order: list[int]) -> None:
    pos = {v: i for i, v in enumerate(order)}
    for inst in insts:
        if inst.level == 0:
            c = inst.cycle
            for i in range(len(c)):
                e = _norm(c[i], c[(i + 1) % len(c)])
                ctx.pages[e] = "p1"
                ctx.provenance[e] = "L0:outer-cycle"
        orient_and_assign_planar(ctx, inst, pos)
        assign_crossing_pages(ctx, inst, pos)
    for inst in insts:
        for e, role in inst.roles.items():
            if role == "outer-crossing":
                ctx.pages[e] = _first_free_page(ctx.pages, pos, e, FULL_PAGES)
                ctx.provenance[e] = f"L0:{inst.X[e]}:outer-crossing"


FULL_PAGES = ("c8", "c7", "c6", "c5", "c4", "c3", "c2", "c1", "p6", "p5", "p4", "p3", "p2", "p1")


def _crossers(pages, pos, e) -> dict[str, list[tuple[int, int]]]:
    """Edges interleaving ``e``, grouped by page."""
    l, r = sorted((pos[e[0]], pos[e[1]]))
    out: dict[str, list[tuple[int, int]]] = {}
    for f, p in pages.items():
        if f == e:
            continue
        a, b = sorted((pos[f[0]], pos[f[1]]))
        if a < l < b < r or l < a < r < b:
            out.setdefault(p, []).append(f)
    return out


def _label_order(pages, labels) -> list[str]:
    used = set(pages.values())
    return sorted(labels, key=lambda p: p not in used)


def _first_free_page(pages, pos, e, labels) -> str:
    blocked = _crossers(pages, pos, e)
    for p in _label_order(pages, labels):
        if p not in blocked:
            return p
    raise EmbeddingError(f"no free page for edge {e}")


# ---------------------------------------------------------------------------
# Repair of residual conflicts
# ---------------------------------------------------------------------------


def _place_with_eviction(pages, prov, pos, e, labels) -> None:
    """Put ``e`` on a free label, or free one by moving its single blocker."""
    blocked = _crossers(pages, pos, e)
    order = _label_order(pages, labels)
    for p in order:
        if p not in blocked:
            pages[e] = p
            return
    for p in order:
        if len(blocked[p]) != 1:
            continue
        f = blocked[p][0]
        pages[e] = p
        fb = _crossers(pages, pos, f)
        q = next((q for q in order if q != p and q not in fb), None)
        if q is not None:
            pages[f] = q
            prov[f] = f"{prov.get(f, '')}:repaired"
            return
        del pages[e]
    raise EmbeddingError(f"no free page for edge {e}")


def repair_conflicts(g, pages: dict, prov: dict, order: list[int], labels) -> list[tuple[int, int]]:
    """Move edges off conflicting pages until every page is clean.

    Edges are lifted greedily (most conflicts first) and then re-inserted,
    longest first, on the first label (used labels first) where they cross
    nothing; failing that, a label blocked by a single edge is freed by
    moving that edge.  The construction leaves such conflicts when a
    block's leader is far from the rest of its cycle on the spine.
    Returns the lifted edges; raises ``EmbeddingError`` when some edge
    fits nowhere.
    """
    rep = check_book_embedding(g, BookEmbedding(list(order), dict(pages)))
    if rep.ok:
        return []
    deg: dict[tuple[int, int], set] = {}
    for c in rep.conflicts:
        deg.setdefault(c.e, set()).add(c.f)
        deg.setdefault(c.f, set()).add(c.e)
    lifted = []
    while deg:
        e = max(deg, key=lambda x: (len(deg[x]), x))
        for f in deg.pop(e):
            deg[f].discard(e)
            if not deg[f]:
                del deg[f]
        lifted.append(e)
    pos = {v: i for i, v in enumerate(order)}
    for e in lifted:
        del pages[e]
    lifted.sort(key=lambda e: -abs(pos[e[0]] - pos[e[1]]))
    for e in lifted:
        _place_with_eviction(pages, prov, pos, e, labels)
        prov[e] = f"{prov.get(e, '')}:repaired"
    return lifted


def _restrict(book_pages, prov, original: OnePlanarEmbedding, order) -> BookEmbedding:
    pages = {e: book_pages[e] for e in original.edges}
    return BookEmbedding(list(order), pages, {e: prov.get(e, "") for e in original.edges})


def embed_3connected(emb: OnePlanarEmbedding, *, check: bool = True, trace: Trace | None = None) -> BookEmbedding:
    """At most 14 pages for a 3-connected 1-planar embedding."""
    norm, tags = normalize(emb)
    if separation_pairs(norm):
        raise NotThreeConnected("the augmented graph has a separation pair")
    ctx, insts, order = order_vertices(norm)
    _assign_pages(ctx, insts, order)
    moved = repair_conflicts(norm.graph, ctx.pages, ctx.provenance, order, FULL_PAGES)
    if moved:
        log.info("repair moved %d of %d edges", len(moved), len(ctx.pages))
    book = _restrict(ctx.pages, ctx.provenance, emb, order)
    if trace is not None:
        trace.tags, trace.instances, trace.levels = tags, insts, ctx.ld.level
        _debug_dump(trace)
    if check:
        rep = check_book_embedding(emb.graph, book)
        if not rep.ok:
            raise ConflictDetected(rep, book)
    return book


# ---------------------------------------------------------------------------
# General inputs: splitting off inner components at separation pairs
# ---------------------------------------------------------------------------

GENERAL_PAGES = FULL_PAGES + ("q2", "q1")


@dataclass
class _Part:
    """A book over a normalized (sub)graph in that graph's own vertex ids."""

    order: list[int]
    pages: dict[tuple[int, int], str]
    prov: dict[tuple[int, int], str]
    level: list[int]


@dataclass
class InnerComponent:
    u: int
    v: int
    vertices: list[int]


def inner_components(emb: OnePlanarEmbedding) -> list[InnerComponent]:
    """Pairwise disjoint inner components to split off, largest first.

    For every separation pair the largest component of G - {u, v} is the
    main one.  A component is skipped when it meets an accepted component
    or its attachment pair; skipped ones are found again in the recursion.
    """
    g = emb.graph
    cands = []
    for sp in separation_pairs(emb):
        comps = components_without(g, sp.u, sp.v)
        if len(comps) < 2:
            continue
        comps.sort(key=lambda c: (-len(c), c[0]))
        for c in comps[1:]:
            cands.append(InnerComponent(sp.u, sp.v, c))
    cands.sort(key=lambda c: (-len(c.vertices), c.vertices[0], c.u, c.v))
    taken: set[int] = set()
    pinned: set[int] = set()
    out = []
    for c in cands:
        vs = set(c.vertices)
        if vs & taken or vs & pinned or c.u in taken or c.v in taken:
            continue
        out.append(c)
        taken |= vs
        pinned |= {c.u, c.v}
    return out


def _trivial_part(emb: OnePlanarEmbedding) -> _Part:
    order = list(range(emb.n))
    pages = {e: "p1" for e in emb.edges}
    return _Part(order, pages, {e: "small:outer-cycle" for e in emb.edges}, [0] * emb.n)


def _embed_part(emb: OnePlanarEmbedding) -> _Part:
    """Embed a 2-connected normalized graph, splitting at separation pairs."""
    if emb.n <= 3:
        return _trivial_part(emb)
    comps = inner_components(emb)
    if not comps:
        ctx, insts, order = order_vertices(emb)
        _assign_pages(ctx, insts, order)
        pages = {e: ctx.pages[e] for e in emb.edges}
        prov = {e: ctx.provenance.get(e, "") for e in emb.edges}
        return _Part(order, pages, prov, list(ctx.ld.level))
    removed = {v for c in comps for v in c.vertices}
    main = _sub_part(emb, [v for v in range(emb.n) if v not in removed])
    subs = [_sub_part(emb, c.vertices + [c.u, c.v]) for c in comps]
    return _splice(emb, main, comps, subs)


def leaf_parts(emb: OnePlanarEmbedding) -> Iterator[OnePlanarEmbedding]:
    """The normalized pieces without separation pairs that general mode orders
    level by level (pieces on at most 3 vertices are skipped)."""
    norm, _ = normalize(emb, tags=False)
    stack = [norm]
    while stack:
        part = stack.pop()
        if part.n <= 3:
            continue
        comps = inner_components(part)
        if not comps:
            yield part
            continue
        removed = {v for c in comps for v in c.vertices}
        keeps = [[v for v in range(part.n) if v not in removed]] + [c.vertices + [c.u, c.v] for c in comps]
        for keep in keeps:
            stack.append(normalize(sub_embedding(part, keep)[0], tags=False)[0])


def _sub_part(emb: OnePlanarEmbedding, keep: list[int]) -> _Part:
    sub, ids = sub_embedding(emb, keep)
    norm, _ = normalize(sub, tags=False)
    part = _embed_part(norm)
    back = {e: _norm(ids[e[0]], ids[e[1]]) for e in sub.edges}
    level = [0] * emb.n
    for i, v in enumerate(ids):
        level[v] = part.level[i]
    return _Part(
        [ids[v] for v in part.order],
        {back[e]: part.pages[e] for e in sub.edges},
        {back[e]: part.prov.get(e, "") for e in sub.edges},
        level,
    )


def _splice(emb: OnePlanarEmbedding, main: _Part, comps: list[InnerComponent], subs: list[_Part]) -> _Part:
    """Insert each inner component immediately left of the later of u, v.

    A component's vertices keep the cyclic order of its own book, cut at
    the earlier attachment vertex.  Components at the same later vertex w
    are grouped by their earlier vertex, nearest group first from the left,
    and by attachment order around the earlier vertex within a group.
    """
    pos = {v: i for i, v in enumerate(main.order)}
    pm = emb.plane_map()
    before: dict[int, list[tuple]] = {}
    pages = dict(main.pages)
    prov = dict(main.prov)
    level = list(main.level)
    for c, part in zip(comps, subs):
        a, b = sorted((c.u, c.v), key=pos.__getitem__)
        i = part.order.index(a)
        cyc = part.order[i + 1 :] + part.order[:i]
        block = [x for x in cyc if x != b]
        vs = set(c.vertices)
        rot = pm.rot[a]
        first = min((k for k, w in enumerate(rot) if w in vs), default=0)
        before.setdefault(b, []).append((-pos[a], first, block))
        uv = pages.get(_norm(a, b), "p1")
        q = "q1" if main.level[b] % 2 else "q2"
        for e in emb.edges:
            if e[0] not in vs and e[1] not in vs:
                continue
            if a in e:
                pages[e], prov[e] = uv, "split:u-edge"
            elif b in e:
                pages[e], prov[e] = q, f"split:v-edge:{q}"
            else:
                pages[e], prov[e] = part.pages[e], part.prov.get(e, "")
        for x in c.vertices:
            level[x] = main.level[b] + part.level[x]
    order = []
    for v in main.order:
        for _, _, block in sorted(before.get(v, []), key=lambda t: (t[0], t[1])):
            order.extend(block)
        order.append(v)
    return _Part(order, pages, prov, level)


def embed_general(emb: OnePlanarEmbedding, *, check: bool = True) -> BookEmbedding:
    """At most 16 pages for any 1-planar embedding."""
    norm, _ = normalize(emb, tags=False)
    part = _embed_part(norm)
    moved = repair_conflicts(norm.graph, part.pages, part.prov, part.order, GENERAL_PAGES)
    if moved:
        log.info("repair moved %d of %d edges", len(moved), len(part.pages))
    book = _restrict(part.pages, part.prov, emb, part.order)
    if check:
        rep = check_book_embedding(emb.graph, book)
        if not rep.ok:
            raise ConflictDetected(rep, book)
    return book


# ---------------------------------------------------------------------------
# Hamiltonian skeletons
# ---------------------------------------------------------------------------

HAMILTON_SEARCH_LIMIT = 20


def skeleton_edges(emb: OnePlanarEmbedding) -> set[tuple[int, int]]:
    crossed = {emb.edges[i] for i in emb.crossing_of_edge}
    return {e for e in emb.edges if e not in crossed}


def find_hamiltonian_cycle(emb: OnePlanarEmbedding, limit: int = HAMILTON_SEARCH_LIMIT) -> list[int] | None:
    """Backtracking search for a Hamiltonian cycle of the planar skeleton."""
    n = emb.n
    if n > limit:
        raise ValueError(f"exhaustive search is limited to n <= {limit}")
    if n < 3:
        return None
    adj = [0] * n
    for u, v in skeleton_edges(emb):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    full = (1 << n) - 1
    path = [0]
    dead: set[tuple[int, int]] = set()

    def extend(v: int, used: int) -> bool:
        if used == full:
            return bool(adj[v] & 1)
        if (v, used) in dead:
            return False
        free = adj[v] & ~used
        while free:
            w = (free & -free).bit_length() - 1
            free &= free - 1
            path.append(w)
            if extend(w, used | (1 << w)):
                return True
            path.pop()
        dead.add((v, used))
        return False

    return list(path) if extend(0, 1) else None


def _cycle_sides(rot: list[list[int]], cycle: list[int], edges) -> dict[tuple[int, int], int]:
    """0 for edges left of the directed cycle, 1 for the right."""
    n = len(cycle)
    nxt = {cycle[i]: cycle[(i + 1) % n] for i in range(n)}
    prv = {cycle[i]: cycle[i - 1] for i in range(n)}
    out = {}
    for u, w in edges:
        r = rot[u]
        i = r.index(nxt[u])
        j = r.index(w)
        k = r.index(prv[u])
        out[(u, w)] = 0 if 0 < (j - i) % len(r) < (k - i) % len(r) else 1
    return out


def _planar_rotation(emb: OnePlanarEmbedding, keep_crossed) -> list[list[int]]:
    """Real-vertex rotations of the skeleton plus the crossing edges in ``keep_crossed``."""
    n = emb.n
    far = {}
    for k, (a, b) in enumerate(emb.crossings):
        for i in (a, b):
            e = emb.edges[i]
            if e in keep_crossed:
                far[(e[0], n + k)] = e[1]
                far[(e[1], n + k)] = e[0]
    rot = []
    for v in range(n):
        r = []
        for w in emb.rotation[v]:
            if w < n:
                r.append(w)
            elif (v, w) in far:
                r.append(far[(v, w)])
        rot.append(r)
    return rot


def embed_hamiltonian(emb: OnePlanarEmbedding, cycle: list[int], *, check: bool = True) -> BookEmbedding:
    """Four pages when the planar skeleton has the Hamiltonian cycle ``cycle``.

    One edge of every crossing pair joins the skeleton on pages p1/p2, the
    other on p3/p4; each half is planar, so the cycle splits it into two
    sides.  Skeleton edges are kept once, on p1/p2.
    """
    require_valid(emb)
    n = emb.n
    cycle = list(cycle)
    sk = skeleton_edges(emb)
    if sorted(cycle) != list(range(n)):
        raise NotHamiltonianCycle("the cycle must list every vertex exactly once")
    cyc_edges = {_norm(cycle[i], cycle[(i + 1) % n]) for i in range(n)} if n > 2 else set()
    missing = sorted(e for e in cyc_edges if e not in sk)
    if missing:
        raise NotHamiltonianCycle(f"cycle edges {missing[:3]} are not uncrossed edges of the embedding")
    first = {emb.edges[a] for a, _ in emb.crossings}
    second = {emb.edges[b] for _, b in emb.crossings}
    pages: dict[tuple[int, int], str] = {}
    prov: dict[tuple[int, int], str] = {}
    for half, labels in ((first, ("p1", "p2")), (second, ("p3", "p4"))):
        rot = _planar_rotation(emb, half)
        todo = [e for e in emb.edges if e not in cyc_edges and (e in half or (e in sk and labels[0] == "p1"))]
        sides = _cycle_sides(rot, cycle, todo)
        for e in todo:
            pages[e] = labels[sides[e]]
            prov[e] = f"hamiltonian:{'crossing' if e in half else 'skeleton'}:side{sides[e]}"
    for e in cyc_edges:
        pages[e], prov[e] = "p1", "hamiltonian:cycle"
    book = BookEmbedding(cycle, pages, prov)
    if check:
        rep = check_book_embedding(emb.graph, book)
        if not rep.ok:
            raise ConflictDetected(rep, book)
    return book
