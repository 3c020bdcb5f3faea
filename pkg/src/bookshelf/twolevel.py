"""Seven-page book embedding of one 2-level subgraph.

A 2-level subgraph is a region of the planar skeleton enclosed by a cycle
C = v_1..v_t of level i together with the level-(i+1) vertices inside it.
The region is handled in a local frame where C runs clockwise (region on
the right of v_k -> v_{k+1}); if the global rotation has the region on the
left, every rotation query is mirrored.

Processing is split in two phases so that all levels can be placed before
any page is chosen: ``place`` inserts the inner vertices into the shared
spine and records the block structure, ``assign`` labels every edge owned
by the region once final positions are known.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._plane import PlaneMap
from .augment import PlanarSkeleton
from .graph import EmbeddingError, OnePlanarEmbedding, _norm
from .peel import LevelDecomposition, biconnected_blocks, check_cactus

INF = float("inf")
NESTED = True


class UnclassifiablePair(EmbeddingError):
    pass


class MultipleD4EdgesPerBlock(EmbeddingError):
    pass


class PlacementError(EmbeddingError):
    pass


def page_set(level: int) -> tuple[tuple[str, str, str], tuple[str, str, str, str]]:
    if level % 2 == 0:
        return ("p1", "p2", "p3"), ("c1", "c2", "c3", "c4")
    return ("p4", "p5", "p6"), ("c5", "c6", "c7", "c8")


# ---------------------------------------------------------------------------
# Spine
# ---------------------------------------------------------------------------


class Spine:
    """Doubly linked vertex order with O(1) insertion next to any vertex."""

    def __init__(self, order=()):
        self.nxt: dict[int, int | None] = {}
        self.prv: dict[int, int | None] = {}
        self.head: int | None = None
        self.tail: int | None = None
        for v in order:
            self.insert_after(self.tail, v)

    def __contains__(self, v: int) -> bool:
        return v in self.nxt

    def insert_after(self, a: int | None, v: int) -> None:
        if v in self.nxt:
            raise PlacementError(f"vertex {v} placed twice")
        if a is None:
            if self.head is None:
                self.head = self.tail = v
                self.nxt[v] = self.prv[v] = None
                return
            a = self.tail
        b = self.nxt[a]
        self.nxt[a] = v
        self.prv[v] = a
        self.nxt[v] = b
        if b is None:
            self.tail = v
        else:
            self.prv[b] = v

    def insert_before(self, b: int, v: int) -> None:
        a = self.prv[b]
        if a is None:
            if v in self.nxt:
                raise PlacementError(f"vertex {v} placed twice")
            self.nxt[v] = b
            self.prv[v] = None
            self.prv[b] = v
            self.head = v
        else:
            self.insert_after(a, v)

    def order(self) -> list[int]:
        out = []
        v = self.head
        while v is not None:
            out.append(v)
            v = self.nxt[v]
        return out


# ---------------------------------------------------------------------------
# Shared context
# ---------------------------------------------------------------------------


@dataclass
class Context:
    """Everything the per-region steps share: embedding, skeleton, levels.

    ``hp`` starts as the planarization and becomes H' region by region: a
    crossing's dummy is replaced by the kept edge and dropped for the edge
    moved to X.
    """

    emb: OnePlanarEmbedding
    sk: PlanarSkeleton
    ld: LevelDecomposition
    owners: dict[tuple[int, int], int]
    region_edges: list[list[tuple[int, int]]]
    region_crossings: list[list[int]]
    region_inner: list[list[int]]
    hp: PlaneMap
    pages: dict[tuple[int, int], str] = field(default_factory=dict)
    provenance: dict[tuple[int, int], str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.emb.n


@dataclass
class Block:
    id: int
    vertices: list[int]
    edges: list[tuple[int, int]]
    leader: int = -1
    parent: int = -1
    depth: int = 0
    children: list[int] = field(default_factory=list)
    assigned: list[int] = field(default_factory=list)
    dominator: int = -1  # outer vertex
    side: int = 0  # 0 -> second planar page, 1 -> third
    slot_end: float = INF
    component: int = -1

    @property
    def is_cycle(self) -> bool:
        return len(self.vertices) >= 3


@dataclass
class Instance:
    region: int
    level: int
    cycle: list[int]
    mirrored: bool
    cidx: dict[int, int] = field(default_factory=dict)
    X: dict[tuple[int, int], str] = field(default_factory=dict)  # edge -> S-case
    partner: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)
    blocks: list[Block] = field(default_factory=list)
    block_of: dict[int, int] = field(default_factory=dict)  # inner vertex -> assigned block
    edge_block: dict[tuple[int, int], int] = field(default_factory=dict)
    zsucc: list[dict[int, int]] = field(default_factory=list)  # per component
    roots: list[int] = field(default_factory=list)
    children: list["Instance"] = field(default_factory=list)
    roles: dict[tuple[int, int], str] = field(default_factory=dict)

    def kind(self, level: list[int], e: tuple[int, int]) -> str:
        a, b = level[e[0]], level[e[1]]
        if a == b == self.level:
            return "L"
        if a == b == self.level + 1:
            return "I"
        if {a, b} == {self.level, self.level + 1}:
            return "B"
        raise EmbeddingError(f"edge {e} does not belong to a level-{self.level} region")

    def to_json(self) -> dict:
        return {
            "region": self.region,
            "level": self.level,
            "cycle": self.cycle,
            "mirrored": self.mirrored,
            "X": [[u, v, c] for (u, v), c in sorted(self.X.items())],
            "roles": [[u, v, r] for (u, v), r in sorted(self.roles.items())],
            "blocks": [
                {
                    "id": b.id,
                    "vertices": b.vertices,
                    "leader": b.leader,
                    "parent": b.parent,
                    "depth": b.depth,
                    "assigned": b.assigned,
                    "dominator": b.dominator,
                }
                for b in self.blocks
            ],
        }


# ---------------------------------------------------------------------------
# Local frame helpers
# ---------------------------------------------------------------------------


class Frame:
    def __init__(self, ctx: Context, mirrored: bool):
        self.ctx = ctx
        self.m = mirrored

    def ccw(self, v: int, w: int) -> int:
        return self.ctx.hp.cw(v, w) if self.m else self.ctx.hp.ccw(v, w)

    def cw(self, v: int, w: int) -> int:
        return self.ctx.hp.ccw(v, w) if self.m else self.ctx.hp.cw(v, w)

    def left_face(self, u: int, v: int) -> int:
        """Skeleton face on the local left of skeleton dart u->v."""
        fo = self.ctx.sk.face_of
        return fo[(v, u)] if self.m else fo[(u, v)]


def _resolve_crossing(hp: PlaneMap, x: int, keep: tuple[int, int], drop: tuple[int, int]) -> None:
    a, b = keep
    hp.replace_neighbor(a, x, b)
    hp.replace_neighbor(b, x, a)
    c, d = drop
    hp.rot[c].remove(x)
    hp._pos[c] = None
    hp.rot[d].remove(x)
    hp._pos[d] = None
    hp.rot[x] = []
    hp._pos[x] = None


# ---------------------------------------------------------------------------
# Crossing selection
# ---------------------------------------------------------------------------


def select_crossing_set(ctx: Context, inst: Instance) -> None:
    """Move one edge of every crossing pair of the region to X (cases S1-S5)."""
    emb, level = ctx.emb, ctx.ld.level
    ci = inst.cidx
    for k in ctx.region_crossings[inst.region]:
        ia, ib = emb.crossings[k]
        e, f = emb.edges[ia], emb.edges[ib]
        ke, kf = inst.kind(level, e), inst.kind(level, f)
        kinds = {ke, kf}
        if kinds == {"L"}:
            # (v_p, v_r) x (v_q, v_s) with p < q < r < s: drop (v_q, v_s)
            x = e if min(ci[e[0]], ci[e[1]]) > min(ci[f[0]], ci[f[1]]) else f
            case = "S1-outer" if ctx.sk.face_of_crossing(emb, k) == ctx.sk.outer_face else "S1"
        elif kinds == {"B"}:
            oe = ci[e[0]] if e[0] in ci else ci[e[1]]
            of = ci[f[0]] if f[0] in ci else ci[f[1]]
            if {oe, of} == {0, len(ci) - 1}:
                # pair straddling the cut between v_t and v_1: drop the v_1 edge
                x = e if oe == 0 else f
                case = "S2-seam"
            else:
                x = e if oe > of else f
                case = "S2"
        elif kinds == {"L", "B"}:
            x = e if ke == "B" else f
            case = "S3"
        elif kinds == {"I", "B"}:
            x = e if ke == "I" else f
            case = "S4"
        elif kinds == {"L", "I"}:
            x = e if ke == "L" else f
            case = "S5"
        else:
            raise UnclassifiablePair(f"crossing pair {e} x {f} has both edges at level {inst.level + 1}")
        keep = f if x == e else e
        inst.X[x] = case
        inst.partner[x] = keep
        _resolve_crossing(ctx.hp, emb.n + k, keep, x)


# ---------------------------------------------------------------------------
# Blocks, leaders, dominators and placement
# ---------------------------------------------------------------------------


def _outer_neighbours(ctx: Context, inst: Instance, v: int) -> list[int]:
    n, ci = ctx.n, inst.cidx
    return [w for w in ctx.hp.rot[v] if w < n and w in ci]


def build_blocks(ctx: Context, inst: Instance) -> None:
    """Components of D, their sub-cycles, block-cut trees, leaders, dominators."""
    level = ctx.ld.level
    R = inst.region
    inner = ctx.region_inner[R]
    inner_set = set(inner)
    fr = Frame(ctx, inst.mirrored)
    rf = ctx.ld.region_of_face
    # D: H' edges of this region between inner vertices
    dadj: dict[int, list[int]] = {v: [] for v in inner}
    for e in ctx.region_edges[R]:
        if e in inst.X:
            continue
        u, v = e
        if u in inner_set and v in inner_set and level[u] == level[v] == inst.level + 1:
            dadj[u].append(v)
            dadj[v].append(u)
    # components of D
    comp: dict[int, int] = {}
    comps: list[list[int]] = []
    for s in inner:
        if s in comp:
            continue
        cid = len(comps)
        comp[s] = cid
        stack, members = [s], [s]
        while stack:
            u = stack.pop()
            for w in dadj[u]:
                if w not in comp:
                    comp[w] = cid
                    stack.append(w)
                    members.append(w)
        comps.append(members)

    v1 = inst.cycle[0]
    for cid, members in enumerate(comps):
        zs = sorted({w for u in members for w in _outer_neighbours(ctx, inst, u)}, key=inst.cidx.__getitem__)
        if len(zs) < 3:
            raise PlacementError(f"region {R}: component sees only {len(zs)} outer vertices")
        zsucc = {zs[i]: zs[i + 1] for i in range(len(zs) - 1)}
        zsucc[zs[-1]] = zs[0]
        inst.zsucc.append(zsucc)
        zpos = {w: i for i, w in enumerate(zs)}
        w1, ws = zs[0], zs[-1]
        # third vertex of the triangle on the region side of (w_1, w_s)
        u11 = fr.cw(ws, w1)
        if u11 not in comp or comp[u11] != cid:
            raise PlacementError(f"region {R}: first inner node {u11} not in its component")

        mem_set = set(members)
        blk_edges = biconnected_blocks(members, {u: dadj[u] for u in members})
        check_cactus(blk_edges)
        base = len(inst.blocks)
        blocks: list[Block] = []
        for be in blk_edges:
            vs = sorted({x for e in be for x in e})
            blocks.append(Block(base + len(blocks), vs, sorted(be), component=cid))
        if not blocks:
            blocks.append(Block(base, [members[0]], [], component=cid))
        by_vertex: dict[int, list[int]] = {}
        for b in blocks:
            for x in b.vertices:
                by_vertex.setdefault(x, []).append(b.id)
        cands = by_vertex[u11]
        if len(cands) > 1:
            rot1 = [w for w in ctx.hp.rot[w1] if w in mem_set]
            seen_by = set()
            for i in range(len(rot1)):
                p, q = rot1[i], rot1[(i + 1) % len(rot1)]
                for bid in cands:
                    if _norm(p, q) in set(blocks[bid - base].edges):
                        seen_by.add(bid)
            root = min(seen_by) if seen_by else min(cands)
        else:
            root = cands[0]
        inst.roots.append(root)
        # rooted block-cut tree by BFS
        blocks[root - base].leader = u11
        order = [root]
        seen = {root}
        for bid in order:
            b = blocks[bid - base]
            for x in b.vertices:
                for cb in by_vertex[x]:
                    if cb not in seen:
                        seen.add(cb)
                        c = blocks[cb - base]
                        c.leader, c.parent, c.depth = x, bid, b.depth + 1
                        b.children.append(cb)
                        order.append(cb)
        # traversal and assignment
        for bid in order:
            b = blocks[bid - base]
            d = b.leader
            if b.is_cycle:
                bset = set(b.vertices)
                nb = [w for w in dadj[d] if w in bset]
                # opposite rotational sense to C: block interior on the left
                first = [w for w in nb if rf[fr.left_face(d, w)] != R]
                if len(first) != 1:
                    raise PlacementError(f"region {R}: cannot orient block {b.vertices}")
                walk = [d, first[0]]
                while True:
                    u = walk[-1]
                    nxt = [w for w in dadj[u] if w in bset and w != walk[-2]]
                    if nxt[0] == d:
                        break
                    walk.append(nxt[0])
                seq = walk
            elif len(b.vertices) == 2:
                seq = [d] + [x for x in b.vertices if x != d]
            else:
                seq = [d]
            b.assigned = seq if bid == root else seq[1:]
            for x in b.assigned:
                inst.block_of[x] = bid
            for e in b.edges:
                inst.edge_block[e] = bid
            outs = [inst.cidx[w] for x in b.assigned for w in _outer_neighbours(ctx, inst, x)]
            if not outs:
                raise PlacementError(f"region {R}: block {b.vertices} sees no outer vertex")
            dom = inst.cycle[min(outs)]
            b.dominator = dom
            if dom not in zpos:
                raise PlacementError(f"region {R}: dominator off the sub-cycle")
            b.slot_end = inst.cidx[zsucc[dom]] if dom != ws else INF
        for bid in order:
            b = blocks[bid - base]
            if b.parent >= 0:
                p = blocks[b.parent - base]
                # nested placement: a block shares its parent's page iff it shares the dominator
                b.side = p.side if (b.dominator == p.dominator and NESTED) else 1 - p.side
                if inst.cidx[b.dominator] < inst.cidx[p.dominator]:
                    raise PlacementError(f"region {R}: child block dominated before its parent")
        inst.blocks.extend(blocks)
    del v1


def _group_sequence(blocks: list[Block], all_blocks: list[Block], method: str) -> list[int]:
    """Vertex sequence for blocks sharing one dominator (one component)."""
    if method == "consecutive":
        return [x for b in sorted(blocks, key=lambda b: (b.depth, b.id)) for x in b.assigned]
    ids = {b.id for b in blocks}
    kids: dict[int, list[Block]] = {}
    for b in blocks:
        if b.parent in ids:
            kids.setdefault(b.leader, []).append(b)
    out: list[int] = []
    stack = [(b, 0) for b in sorted((b for b in blocks if b.parent not in ids), key=lambda b: -b.id)]
    # iterative walk: emit a vertex, then detour around any block it leads
    while stack:
        b, i = stack.pop()
        if i >= len(b.assigned):
            continue
        x = b.assigned[i]
        out.append(x)
        stack.append((b, i + 1))
        for c in sorted(kids.get(x, ()), key=lambda c: -c.id):
            stack.append((c, 0))
    return out


def place(ctx: Context, inst: Instance, spine: Spine, method: str = "nested") -> None:
    """Insert the inner vertices next to their blocks' dominators."""
    v1 = inst.cycle[0]
    v2 = inst.cycle[1]
    groups: dict[tuple[str, int], list[Block]] = {}
    for b in inst.blocks:
        anchor = ("before", v2) if b.dominator == v1 else ("after", b.dominator)
        groups.setdefault(anchor, []).append(b)
    for (how, a), bl in groups.items():
        by_comp: dict[int, list[Block]] = {}
        for b in bl:
            by_comp.setdefault(b.component, []).append(b)
        comps = sorted(by_comp.values(), key=lambda g: (-g[0].slot_end, g[0].component))
        seq = [x for g in comps for x in _group_sequence(g, inst.blocks, method)]
        if how == "before":
            for x in seq:
                spine.insert_before(a, x)
        else:
            prev = a
            for x in seq:
                spine.insert_after(prev, x)
                prev = x


def child_instances(ctx: Context, inst: Instance) -> list[Instance]:
    rf = ctx.ld.region_of_face
    fo = ctx.sk.face_of
    fr = Frame(ctx, inst.mirrored)
    out = []
    for b in inst.blocks:
        if not b.is_cycle:
            continue
        cyc = [b.leader] + b.assigned if b.assigned[0] != b.leader else list(b.assigned)
        child = rf[fr.left_face(cyc[0], cyc[1])]
        if child < 0 or ctx.ld.regions[child].level != inst.level + 1:
            raise PlacementError(f"block {b.vertices} does not enclose a deeper region")
        mirrored = rf[fo[(cyc[1], cyc[0])]] != child
        ci = Instance(child, inst.level + 1, cyc, mirrored)
        ci.cidx = {v: i for i, v in enumerate(cyc)}
        out.append(ci)
    inst.children = out
    return out


# ---------------------------------------------------------------------------
# Page assignment
# ---------------------------------------------------------------------------


def orient_and_assign_planar(ctx: Context, inst: Instance, pos: dict[int, int]) -> None:
    """Pages p1-p3 (or p4-p6) for the H' edges owned by the region."""
    P, _ = page_set(inst.level)
    level = ctx.ld.level
    for e in ctx.region_edges[inst.region]:
        if e in inst.X or e in ctx.pages:
            continue
        k = inst.kind(level, e)
        if k == "L":
            page, tag = P[0], "chord"
        elif k == "I":
            b = inst.blocks[inst.edge_block[e]]
            page, tag = P[1 + b.side], "block"
        else:
            x, y = e if level[e[0]] > level[e[1]] else (e[1], e[0])
            b = inst.blocks[inst.block_of[x]]
            if pos[x] < pos[y] and b.parent < 0 and x == b.leader:
                # the first inner node acts as the leader of a virtual parent
                page, tag = P[1], "binding-forward-first"
            elif pos[x] < pos[y]:
                page, tag = P[2 - b.side], "binding-forward"
            else:
                page, tag = P[0], "binding-backward"
        ctx.pages[e] = page
        ctx.provenance[e] = f"L{inst.level}:{tag}"


def assign_crossing_pages(ctx: Context, inst: Instance, pos: dict[int, int]) -> None:
    """Pages c1-c4 (or c5-c8) for the edges of X (cases D1-D4)."""
    _, Cp = page_set(inst.level)
    level = ctx.ld.level
    blocks = inst.blocks
    led: dict[int, list[Block]] = {}
    for b in blocks:
        led.setdefault(b.leader, []).append(b)
    d4: dict[int, tuple[int, int]] = {}

    def d4_claim(b: Block, e: tuple[int, int]) -> None:
        if b.id in d4 and d4[b.id] != e:
            raise MultipleD4EdgesPerBlock(f"block {b.vertices} has D4 edges {d4[b.id]} and {e}")
        d4[b.id] = e

    for e, case in sorted(inst.X.items()):
        k = inst.kind(level, e)
        if case == "S1-outer":
            # drawn outside C: placed by the caller once every other page is known
            inst.roles[e] = "outer-crossing"
            continue
        if case == "S2-seam":
            # joins v_1 to a vertex of its own slot, like a backward edge
            ctx.pages[e], role = page_set(inst.level)[0][0], "seam-backward"
        elif k == "L":
            ctx.pages[e], role = Cp[0], "D2"
        elif k == "B":
            x, y = e if level[e[0]] > level[e[1]] else (e[1], e[0])
            role = "D1-plain"
            for b in led.get(x, []):
                zs = inst.zsucc[b.component]
                if zs.get(b.dominator) != y:
                    continue
                if any(blocks[c].dominator == b.dominator for c in b.children):
                    continue
                d4_claim(b, e)
                role = "D1-forbidden"
                break
            if role == "D1-plain":
                ctx.pages[e] = Cp[0]
        else:
            c, d = inst.partner[e]
            if level[d] != inst.level + 1:
                c, d = d, c
            a, bb = e
            ba = inst.edge_block.get(_norm(a, d))
            bb_ = inst.edge_block.get(_norm(bb, d))
            if ba is None or bb_ is None:
                raise PlacementError(f"level edge {e} in X without block edges to {d}")
            if ba == bb_:
                # a and b flank d on one block cycle: the edge spans d only
                ctx.pages[e], role = Cp[1], "D3-short"
                inst.roles[e] = role
                ctx.provenance[e] = f"L{inst.level}:{inst.X[e]}:{role}"
                continue
            cands = []
            for bid, xv in ((ba, a), (bb_, bb)):
                blk = blocks[bid]
                if blk.leader == d and blk.parent >= 0:
                    cands.append((pos[blk.assigned[0]], blk, xv))
            if not cands:
                raise PlacementError(f"level edge {e} in X: no block led by {d}")
            _, blk, xv = max(cands, key=lambda t: t[0])
            if xv == blk.assigned[0]:
                ctx.pages[e], role = Cp[1], "D3-first"
            elif xv == blk.assigned[-1]:
                d4_claim(blk, e)
                role = "D3-last"
            else:
                raise PlacementError(f"level edge {e} in X touches the middle of block {blk.vertices}")
        inst.roles[e] = role
        ctx.provenance[e] = f"L{inst.level}:{inst.X[e]}:{role}"
    for bid, e in d4.items():
        ctx.pages[e] = Cp[2] if blocks[bid].depth % 2 == 0 else Cp[3]
        ctx.provenance[e] = ctx.provenance[e] + ":D4"
