"""Peeling the planar skeleton into levels, regions and 2-level subgraphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .augment import PlanarSkeleton
from .graph import EmbeddingError, OnePlanarEmbedding, _norm


class LevelGapViolation(EmbeddingError):
    pass


class NotCactus(EmbeddingError):
    pass


class NonSimpleCycle(EmbeddingError):
    pass


# ---------------------------------------------------------------------------
# Levels and regions
# ---------------------------------------------------------------------------


@dataclass
class Region:
    """Skeleton faces of one min-level, connected across shared edges.

    ``cycle`` is the enclosing cycle of level ``level`` listed clockwise
    (region on the right of consecutive vertices), starting at its smallest
    vertex id; ``parent`` is the region on the other side of that cycle.
    """

    id: int
    level: int
    faces: list[int]
    cycle: list[int]
    parent: int  # -1 for level 0
    children: list[int] = field(default_factory=list)


@dataclass
class LevelDecomposition:
    level: list[int]
    face_level: list[int]  # min vertex level per skeleton face; -1 for the outer face
    region_of_face: list[int]  # -1 for the outer face
    regions: list[Region]

    @property
    def depth(self) -> int:
        return max(self.level, default=-1) + 1

    def cycles(self) -> dict[int, list[list[int]]]:
        out: dict[int, list[list[int]]] = {}
        for r in self.regions:
            out.setdefault(r.level, []).append(r.cycle)
        return out

    def containment(self) -> dict[int, int]:
        return {r.id: r.parent for r in self.regions}


def vertex_levels(sk: PlanarSkeleton) -> list[int]:
    """BFS over vertex-face incidences starting from the outer face."""
    n = sk.graph.n
    level = [-1] * n
    nf = len(sk.walks)
    seen_face = [False] * nf
    if sk.outer_face < 0:
        return [0] * n
    frontier = [sk.outer_face]
    seen_face[sk.outer_face] = True
    lv = 0
    while frontier:
        verts = []
        for f in frontier:
            for u, _ in sk.walks[f]:
                if level[u] == -1:
                    level[u] = lv
                    verts.append(u)
        nxt = []
        for u in verts:
            for w in sk.pm.rot[u]:
                f = sk.face_of[(u, w)]
                if not seen_face[f]:
                    seen_face[f] = True
                    nxt.append(f)
        frontier = nxt
        lv += 1
    for v in range(n):
        if level[v] == -1:
            level[v] = 0  # isolated vertex
    return level


def level_decompose(sk: PlanarSkeleton) -> LevelDecomposition:
    level = vertex_levels(sk)
    nf = len(sk.walks)
    flevel = [min(level[u] for u, _ in w) for w in sk.walks]
    if sk.outer_face >= 0:
        flevel[sk.outer_face] = -1
    region_of = [-1] * nf
    regions: list[Region] = []
    for f0 in range(nf):
        if f0 == sk.outer_face or region_of[f0] != -1:
            continue
        rid = len(regions)
        region_of[f0] = rid
        faces = [f0]
        q = deque([f0])
        while q:
            f = q.popleft()
            for u, v in sk.walks[f]:
                g = sk.face_of[(v, u)]
                if region_of[g] == -1 and g != sk.outer_face and flevel[g] == flevel[f0]:
                    region_of[g] = rid
                    faces.append(g)
                    q.append(g)
        regions.append(Region(rid, flevel[f0], faces, [], -1))
    for r in regions:
        succ: dict[int, int] = {}
        parent = -1
        for f in r.faces:
            for u, v in sk.walks[f]:
                g = sk.face_of[(v, u)]
                if flevel[g] < r.level:
                    if v in succ:
                        raise NonSimpleCycle(f"region {r.id}: vertex {v} repeats on its enclosing cycle")
                    succ[v] = u
                    if g != sk.outer_face:
                        parent = region_of[g]
        if not succ:
            raise NonSimpleCycle(f"region {r.id} has no enclosing cycle")
        start = min(succ)
        cyc = [start]
        x = succ[start]
        while x != start:
            cyc.append(x)
            if len(cyc) > len(succ):
                raise NonSimpleCycle(f"region {r.id}: boundary is not one cycle")
            x = succ[x]
        if len(cyc) != len(succ):
            raise NonSimpleCycle(f"region {r.id}: boundary is not one cycle")
        if any(level[v] != r.level for v in cyc):
            raise LevelGapViolation(f"region {r.id}: cycle vertex off level {r.level}")
        r.cycle = cyc
        r.parent = parent
        if parent >= 0:
            regions[parent].children.append(r.id)
    return LevelDecomposition(level, flevel, region_of, regions)


def levels_by_stripping(sk: PlanarSkeleton) -> list[int]:
    """Reference levels: repeatedly delete the outer-face vertices and re-trace faces.

    After a deletion, the new outer face is every face of the remaining map
    that occupies the former position of a deleted vertex.  Quadratic; used
    as a test oracle for ``vertex_levels``.
    """
    from ._plane import PlaneMap

    n = sk.graph.n
    level = [-1] * n
    alive = set(range(n))
    full = sk.pm.rot
    outer = {u for u, _ in sk.walks[sk.outer_face]} if sk.outer_face >= 0 else set(range(n))
    lv = 0
    while alive:
        for v in outer:
            level[v] = lv
        alive -= outer
        if not alive:
            break
        pm = PlaneMap([[w for w in r if w in alive] if v in alive else [] for v, r in enumerate(full)])
        _, face_of = pm.faces()
        marked = set()
        outer = set()
        for v in alive:
            r = full[v]
            if not pm.rot[v]:
                outer.add(v)
                continue
            for i, s in enumerate(r):
                if s in alive:
                    continue
                j = i
                while r[j] not in alive:
                    j -= 1
                marked.add(face_of[(v, r[j])])
        for f, walk in enumerate(pm.faces()[0]):
            if f in marked:
                outer |= {u for u, _ in walk}
        lv += 1
    return level


# ---------------------------------------------------------------------------
# Edge classification and ownership
# ---------------------------------------------------------------------------


def classify_edges(emb: OnePlanarEmbedding, level: list[int]) -> dict[tuple[int, int], tuple[str, int]]:
    """('level', i) or ('binding', i) meaning levels i and i+1."""
    out = {}
    for u, v in emb.edges:
        a, b = level[u], level[v]
        if abs(a - b) >= 2:
            raise LevelGapViolation(f"edge ({u}, {v}) joins levels {a} and {b}")
        out[(u, v)] = ("level", a) if a == b else ("binding", min(a, b))
    return out


def edge_owners(
    emb: OnePlanarEmbedding, sk: PlanarSkeleton, ld: LevelDecomposition
) -> dict[tuple[int, int], int]:
    """The region whose 2-level subgraph assigns each edge a page.

    A skeleton edge belongs to the region on its lower-level side (a cycle
    edge of the deeper region is a block edge of the shallower one); a
    crossing pair belongs to the region of the skeleton face holding it.
    Edges of the level-0 cycle and crossings in the outer face belong to
    the level-0 region.
    """
    owner: dict[tuple[int, int], int] = {}
    rf = ld.region_of_face
    top = next((r.id for r in ld.regions if r.level == 0), -1)
    for u, v in sk.graph.edges:
        f, g = rf[sk.face_of[(u, v)]], rf[sk.face_of[(v, u)]]
        if f == -1 or g == -1:
            owner[(u, v)] = top
            continue
        lf, lg = ld.regions[f].level, ld.regions[g].level
        owner[(u, v)] = f if lf <= lg else g
    for k, (a, b) in enumerate(emb.crossings):
        f = rf[sk.face_of_crossing(emb, k)]
        if f == -1:
            f = top
        owner[emb.edges[a]] = f
        owner[emb.edges[b]] = f
    return owner


@dataclass
class TwoLevelSubgraph:
    region: int
    level: int
    cycle: list[int]
    inner: list[int]
    edges: list[tuple[int, int]]  # owned edges, excluding the cycle's own edges
    crossings: list[int]  # crossing ids owned by this region


def extract_two_level(
    emb: OnePlanarEmbedding, sk: PlanarSkeleton, ld: LevelDecomposition, owners=None
) -> list[TwoLevelSubgraph]:
    if owners is None:
        owners = edge_owners(emb, sk, ld)
    out = [
        TwoLevelSubgraph(r.id, r.level, list(r.cycle), [], [], [])
        for r in ld.regions
    ]
    cyc_edges = [
        {_norm(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}
        for c in (r.cycle for r in ld.regions)
    ]
    for e, r in owners.items():
        if r >= 0 and e not in cyc_edges[r]:
            out[r].edges.append(e)
    inner: list[set[int]] = [set() for _ in ld.regions]
    for r in ld.regions:
        for f in r.faces:
            for u, _ in sk.walks[f]:
                if ld.level[u] == r.level + 1:
                    inner[r.id].add(u)
    for k, (a, _) in enumerate(emb.crossings):
        r = owners[emb.edges[a]]
        if r >= 0:
            out[r].crossings.append(k)
    for t in out:
        t.inner = sorted(inner[t.region])
        t.edges.sort()
    return out


# ---------------------------------------------------------------------------
# Blocks of a cactus
# ---------------------------------------------------------------------------


def biconnected_blocks(vertices, adj: dict[int, list[int]]) -> list[list[tuple[int, int]]]:
    """Edge sets of the blocks (iterative Tarjan); isolated vertices give none."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[list[tuple[int, int]]] = []
    t = 0
    for s in vertices:
        if s in disc:
            continue
        disc[s] = low[s] = t
        t += 1
        estack: list[tuple[int, int]] = []
        stack = [(s, -1, iter(adj.get(s, ())))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = t
                    t += 1
                    estack.append((v, w))
                    stack.append((w, v, iter(adj.get(w, ()))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    blk = []
                    while True:
                        e = estack.pop()
                        blk.append(_norm(*e))
                        if e == (p, v):
                            break
                    blocks.append(blk)
    return blocks


def check_cactus(blocks: list[list[tuple[int, int]]]) -> None:
    for blk in blocks:
        verts = {x for e in blk for x in e}
        if len(blk) > 1 and len(blk) != len(verts):
            raise NotCactus(f"block on {len(verts)} vertices has {len(blk)} edges")
        if len(blk) > 1:
            deg: dict[int, int] = {}
            for a, b in blk:
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            if any(d != 2 for d in deg.values()):
                raise NotCactus("block is not a simple cycle")
