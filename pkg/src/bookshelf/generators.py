"""Embedded test graphs: extended wheels, random 1-planar graphs, small fixtures."""

from __future__ import annotations

import math
import os
import random
from fractions import Fraction
from itertools import combinations

from ._plane import PlaneMap
from .graph import OnePlanarEmbedding, _norm, require_valid


def embedding_from_rotation(
    n: int, rotation, outer: tuple[int, int]
) -> OnePlanarEmbedding:
    """Build an embedding from a planarization rotation (dummies are ids >= n)."""
    rotation = tuple(tuple(r) for r in rotation)
    edges: set[tuple[int, int]] = set()
    pairs = []
    for x in range(n, len(rotation)):
        r = rotation[x]
        if len(r) != 4:
            raise ValueError(f"dummy {x} has degree {len(r)}")
        e1, e2 = _norm(r[0], r[2]), _norm(r[1], r[3])
        edges.update((e1, e2))
        pairs.append((e1, e2))
    for u in range(n):
        for v in rotation[u]:
            if v < n and u < v:
                edges.add((u, v))
    order = sorted(edges)
    idx = {e: i for i, e in enumerate(order)}
    crossings = tuple((idx[a], idx[b]) for a, b in pairs)
    return OnePlanarEmbedding(n, tuple(order), crossings, rotation, outer)


def plane_embedding(pm: PlaneMap, n: int, outer: tuple[int, int]) -> OnePlanarEmbedding:
    emb = embedding_from_rotation(n, pm.rot, outer)
    require_valid(emb)
    return emb


# ---------------------------------------------------------------------------
# Straight-line drawings
# ---------------------------------------------------------------------------


def _segment_cross(p1, p2, p3, p4):
    """Proper intersection point of two segments, or None."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(p3, p4, p1), orient(p3, p4, p2)
    d3, d4 = orient(p1, p2, p3), orient(p1, p2, p4)
    if d1 * d2 < 0 and d3 * d4 < 0:
        t = Fraction(d1, d1 - d2)
        return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))
    return None


def embedding_from_drawing(coords, edges) -> OnePlanarEmbedding:
    """1-planar embedding of a straight-line drawing with integer coordinates."""
    n = len(coords)
    pts = [tuple(Fraction(c) for c in p) for p in coords]
    edges = sorted({_norm(u, v) for u, v in edges})
    hits: dict[tuple[int, int], list] = {}
    dummies = []
    for e, f in combinations(edges, 2):
        if set(e) & set(f):
            continue
        x = _segment_cross(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]])
        if x is not None:
            hits.setdefault(e, []).append(f)
            hits.setdefault(f, []).append(e)
            dummies.append((e, f, x))
    for e, fs in hits.items():
        if len(fs) > 1:
            raise ValueError(f"edge {e} is crossed {len(fs)} times")
    allpts = pts + [d[2] for d in dummies]
    nbrs: list[list[int]] = [[] for _ in allpts]
    crossed = {}
    for k, (e, f, _) in enumerate(dummies):
        crossed[e] = crossed[f] = n + k
    for u, v in edges:
        if (u, v) in crossed:
            x = crossed[(u, v)]
            nbrs[u].append(x)
            nbrs[v].append(x)
            nbrs[x].extend((u, v))
        else:
            nbrs[u].append(v)
            nbrs[v].append(u)

    def angle(a, b):
        return math.atan2(float(allpts[b][1] - allpts[a][1]), float(allpts[b][0] - allpts[a][0]))

    rotation = [sorted(ns, key=lambda w, a=a: angle(a, w)) for a, ns in enumerate(nbrs)]
    low = min(range(n), key=lambda v: (pts[v][1], pts[v][0]))
    if not rotation[low]:
        raise ValueError("lowest vertex is isolated")
    outer = (low, rotation[low][-1])
    emb = embedding_from_rotation(n, rotation, outer)
    require_valid(emb)
    return emb


# ---------------------------------------------------------------------------
# Combinatorial construction helpers
# ---------------------------------------------------------------------------


def cross_edge(pm: PlaneMap, a: int, b: int) -> int:
    """Replace edge ab (two triangular faces abc, bad) by a crossing with cd."""
    _, c = pm.next(a, b)
    _, d = pm.next(b, a)
    if pm.next(b, c) != (c, a) or pm.next(a, d) != (d, b):
        raise ValueError("edge is not between two triangles")
    x = pm.add_vertex()
    pm.rot[x] = [a, d, b, c]
    pm.replace_neighbor(a, b, x)
    pm.replace_neighbor(b, a, x)
    # corner at c between b (pred) and a; corner at d between a (pred) and b
    pm._insert(c, x, b)
    pm._insert(d, x, a)
    return x


def _real_triangle(pm: PlaneMap, u: int, v: int, n: int) -> int | None:
    _, w = pm.next(u, v)
    if w >= n or pm.next(v, w) != (w, u):
        return None
    return w


def triangle_map() -> PlaneMap:
    return PlaneMap([[1, 2], [2, 0], [0, 1]])


def random_triangulation(n: int, rng: random.Random, flips: int | None = None) -> PlaneMap:
    """Stacked triangulation on n vertices scrambled by random edge flips.

    The outer face is the triangle 0, 2, 1 (dart 0->2).
    """
    if n < 3:
        raise ValueError("need n >= 3")
    pm = triangle_map()
    inner = [(0, 1, 2)]
    for v in range(3, n):
        i = rng.randrange(len(inner))
        a, b, c = inner[i]
        inner[i] = inner[-1]
        inner.pop()
        pm.add_vertex()
        pm.rot[v] = [a, b, c]
        pm._insert(a, v, c)
        pm._insert(b, v, a)
        pm._insert(c, v, b)
        inner.extend([(a, b, v), (b, c, v), (c, a, v)])
    outer = {(0, 2), (2, 1), (1, 0), (2, 0), (1, 2), (0, 1)}
    if flips is None:
        flips = 2 * n
    for _ in range(flips):
        a = rng.randrange(n)
        if pm.degree(a) <= 3:
            continue
        b = pm.rot[a][rng.randrange(pm.degree(a))]
        if (a, b) in outer or pm.degree(b) <= 3:
            continue
        _, c = pm.next(a, b)
        _, d = pm.next(b, a)
        if c == d or pm.has_edge(c, d):
            continue
        pm.remove_edge(a, b)
        pm.insert_edge(c, b, d, a)
    return pm


def gen_random_1planar(n: int, density: float, seed: int | None = None) -> OnePlanarEmbedding:
    """Random planar triangulation with crossing pairs inserted in quads.

    Each inner edge whose two incident faces are still real triangles is
    crossed by the opposite diagonal with probability ``density``.
    """
    if seed is None:
        seed = int(os.environ.get("BOOKSHELF_SEED", "0"))
    rng = random.Random(seed)
    pm = random_triangulation(n, rng)
    outer_tri = {0, 1, 2}
    if density > 0:
        cand = [(a, b) for a in range(n) for b in pm.rot[a] if a < b]
        real = set(cand)
        rng.shuffle(cand)
        for a, b in cand:
            if rng.random() >= density:
                continue
            if not pm.has_edge(a, b):
                continue
            c = _real_triangle(pm, a, b, n)
            d = _real_triangle(pm, b, a, n)
            if c is None or d is None or _norm(c, d) in real:
                continue
            if {a, b, c} == outer_tri or {a, b, d} == outer_tri:
                continue
            cross_edge(pm, a, b)
            real.add(_norm(c, d))
    return plane_embedding(pm, n, (0, 2))


def gen_extended_wheel(k: int) -> OnePlanarEmbedding:
    """Extended wheel XW_{2k}: rim v_0..v_{2k-1}, inner pole N, outer pole S.

    The planar skeleton is the quadrangulation where N sees the even rim
    vertices and S the odd ones; every quadrangle carries both diagonals,
    crossing once.  The outer face is the triangle S, v_1, Y_{k-1}.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    r = 2 * k
    N, S = r, r + 1
    n = r + 2
    X = [n + j for j in range(k)]  # inner crossings (N,v_{2j+1}) x (v_{2j},v_{2j+2})
    Y = [n + k + j for j in range(k)]  # outer crossings (S,v_{2j+2}) x (v_{2j+1},v_{2j+3})
    rot: list[list[int]] = [[] for _ in range(n + 2 * k)]
    for i in range(r):
        nxt, prv = (i + 1) % r, (i - 1) % r
        j = i // 2
        if i % 2:
            rot[i] = [S, Y[j], nxt, X[j], prv, Y[(j - 1) % k]]
        else:
            rot[i] = [Y[(j - 1) % k], nxt, X[j], N, X[(j - 1) % k], prv]
    rot[N] = [v if v % 2 == 0 else X[v // 2] for v in range(r)]
    around_s = []
    for j in range(k):
        around_s += [2 * j + 1, Y[j]]
    rot[S] = around_s[::-1]
    for j in range(k):
        rot[X[j]] = [2 * j + 1, (2 * j + 2) % r, N, 2 * j]
        rot[Y[j]] = [S, (2 * j + 3) % r, (2 * j + 2) % r, 2 * j + 1]
    emb = embedding_from_rotation(n, rot, (S, 1))
    require_valid(emb)
    return emb


def gen_k4() -> OnePlanarEmbedding:
    return embedding_from_drawing([(0, 0), (6, 0), (3, 6), (3, 2)], list(combinations(range(4), 2)))


def gen_k5() -> OnePlanarEmbedding:
    """K5 with a single crossing (rectilinear crossing number 1)."""
    coords = [(0, 0), (12, 0), (6, 12), (5, 3), (7, 5)]
    return embedding_from_drawing(coords, list(combinations(range(5), 2)))


def gen_k6() -> OnePlanarEmbedding:
    """K6 as an octahedron whose three antipodal pairs cross three skeleton edges."""
    coords = [(0, 0), (12, 0), (6, 12), (6, 2), (8, 6), (4, 6)]
    octa = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
            (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)]
    base = embedding_from_drawing(coords, octa)
    for trio in combinations(octa, 3):
        pm = base.plane_map()
        real = set(octa)
        ok = True
        for a, b in trio:
            c = _real_triangle(pm, a, b, 6)
            d = _real_triangle(pm, b, a, 6)
            if c is None or d is None or _norm(c, d) in real or {0, 1, 2} in ({a, b, c}, {a, b, d}):
                ok = False
                break
            cross_edge(pm, a, b)
            real.add(_norm(c, d))
        if ok:
            emb = plane_embedding(pm, 6, base.outer)
            if emb.m == 15:
                return emb
    raise RuntimeError("no K6 crossing pattern found")


def gen_cycle(n: int) -> OnePlanarEmbedding:
    coords = [
        (round(1000 * math.cos(2 * math.pi * i / n)), round(1000 * math.sin(2 * math.pi * i / n)))
        for i in range(n)
    ]
    return embedding_from_drawing(coords, [(i, (i + 1) % n) for i in range(n)])


def gen_triangulation(n: int, seed: int = 0) -> OnePlanarEmbedding:
    return gen_random_1planar(n, 0.0, seed)


# ---------------------------------------------------------------------------
# Graphs with separation pairs
# ---------------------------------------------------------------------------


def _planar_real_darts(emb: OnePlanarEmbedding) -> list[tuple[int, int]]:
    crossed = {emb.edges[i] for i in emb.crossing_of_edge}
    return [(u, v) for u in range(emb.n) for v in emb.rotation[u] if v < emb.n and _norm(u, v) not in crossed]


def glue_at_edge(host: OnePlanarEmbedding, dart: tuple[int, int], piece: OnePlanarEmbedding) -> OnePlanarEmbedding:
    """Attach ``piece`` inside the face left of ``dart`` of ``host``.

    The piece's outer dart ``(u2, v2)`` must be an uncrossed edge; u2 and
    v2 are identified with the dart's ends, so the result has them as a
    separation pair.  The piece is mirrored so that its interior lands on
    the left of the host dart.
    """
    u, v = dart
    u2, v2 = piece.outer
    if u2 >= piece.n or v2 >= piece.n or piece.edges.index(_norm(u2, v2)) in piece.crossing_of_edge:
        raise ValueError("the piece's outer dart must be an uncrossed real edge")
    n1, n2 = host.n, piece.n
    others = [w for w in range(n2) if w not in (u2, v2)]
    nn = n1 + len(others)
    ren = {u2: u, v2: v}
    for i, w in enumerate(others):
        ren[w] = n1 + i
    for k in range(len(piece.crossings)):
        ren[n2 + k] = nn + len(host.crossings) + k

    def host_id(x: int) -> int:
        return x if x < n1 else x + len(others)

    rot = [[host_id(w) for w in host.rotation[x]] for x in range(host.num_nodes)]
    rot = rot[:n1] + [[] for _ in others] + rot[n1:] + [[] for _ in piece.crossings]
    mirrored = [list(reversed(r)) for r in piece.rotation]
    for x in range(piece.num_nodes):
        if x not in (u2, v2):
            rot[ren[x]] = [ren[w] for w in mirrored[x]]

    def fan(x: int, skip: int) -> list[int]:
        r = mirrored[x]
        i = r.index(skip)
        return [ren[w] for w in r[i + 1 :] + r[:i]]

    ru = rot[u]
    i = ru.index(v)
    rot[u] = ru[: i + 1] + fan(u2, v2) + ru[i + 1 :]
    rv = rot[v]
    j = rv.index(u)
    rot[v] = rv[:j] + fan(v2, u2) + rv[j:]
    outer = tuple(host_id(x) for x in host.outer)
    if outer == (u, v):
        outer = (v, rv[j - 1])
    emb = embedding_from_rotation(nn, rot, outer)
    require_valid(emb)
    return emb


def gen_separated(n: int, pieces: int, density: float = 0.5, seed: int | None = None) -> OnePlanarEmbedding:
    """Random 1-planar graph with nested separation pairs.

    A base graph on about ``n / (pieces + 1)`` vertices receives ``pieces``
    small random 1-planar graphs, each glued into a face next to a random
    uncrossed edge of the graph built so far (possibly inside an earlier
    piece, which nests the pairs).
    """
    if seed is None:
        seed = int(os.environ.get("BOOKSHELF_SEED", "0"))
    rng = random.Random(seed)
    size = max(4, n // (pieces + 1))
    emb = gen_random_1planar(max(4, n - pieces * (size - 2)), density, rng.randrange(1 << 30))
    for _ in range(pieces):
        m = rng.randint(4, size + 2)
        piece = gen_random_1planar(m, density, rng.randrange(1 << 30))
        if piece.outer[0] >= piece.n or piece.outer[1] >= piece.n:
            continue
        darts = _planar_real_darts(emb)
        emb = glue_at_edge(emb, rng.choice(darts), piece)
    return emb
