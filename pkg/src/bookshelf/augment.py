"""Planar-maximal augmentation, normal form, planar skeleton, separation pairs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ._plane import Dart, PlaneMap
from .graph import EmbeddingError, Graph, OnePlanarEmbedding, _norm, require_valid


class NotTwoConnected(EmbeddingError):
    pass


class NotThreeConnected(EmbeddingError):
    pass


def _rebuild(emb: OnePlanarEmbedding, pm: PlaneMap, outer: Dart) -> OnePlanarEmbedding:
    """Embedding with edges/crossings recomputed from a modified planarization.

    Edge indices of ``emb`` are kept; new real-real adjacencies are appended
    in sorted order.  Crossings are unchanged (dummies never move).
    """
    n = emb.n
    old = set(emb.edges)
    new = sorted(
        {_norm(u, v) for u in range(n) for v in pm.rot[u] if v < n} - old
    )
    gone = {
        e for i, e in enumerate(emb.edges)
        if i not in emb.crossing_of_edge and not pm.has_edge(*e)
    }  # fmt: skip
    if gone:
        # rerouted edges are removed and re-added, so they must reappear
        raise AssertionError(f"planar edges lost during rebuild: {sorted(gone)[:5]}")
    edges = emb.edges + tuple(new)
    out = OnePlanarEmbedding(n, edges, emb.crossings, tuple(tuple(r) for r in pm.rot), outer)
    return out


# ---------------------------------------------------------------------------
# Planar-maximal augmentation
# ---------------------------------------------------------------------------


def _best_chord(walk: list[int], n: int, adjacent) -> tuple[int, int] | None:
    """Corner pair (i, j) of the closest non-adjacent real vertices on a face."""
    L = len(walk)
    for d in range(2, L // 2 + 1):
        best = None
        for i in range(L):
            j = (i + d) % L
            u, v = walk[i], walk[j]
            if u >= n or v >= n or u == v or adjacent(u, v):
                continue
            key = (min(u, v), max(u, v), i)
            if best is None or key < best[0]:
                best = (key, i, j)
        if best is not None:
            return best[1], best[2]
    return None


def planar_maximal_augment(emb: OnePlanarEmbedding, *, validate: bool = True) -> OnePlanarEmbedding:
    """Add uncrossed edges inside faces until no face admits one.

    Faces are processed in face-id order (then newly created faces, FIFO);
    within a face the pair closest along the face walk is joined first, ties
    broken lexicographically.
    """
    if validate:
        require_valid(emb)
    n = emb.n
    pm = emb.plane_map()
    adj = {e for e in emb.edges}

    def adjacent(u: int, v: int) -> bool:
        return _norm(u, v) in adj

    walks, _ = pm.faces()
    queue = deque(w[0] for w in walks)
    while queue:
        d0 = queue.popleft()
        walk_darts = pm.face_walk(*d0)
        verts = [d[0] for d in walk_darts]
        pick = _best_chord(verts, n, adjacent)
        if pick is None:
            continue
        i, j = pick
        a, b = verts[i], verts[j]
        pa, pb = verts[i - 1], verts[j - 1]
        # corner at a lies between dart (pa -> a) and (a -> next); insert
        # b just before pa in a's ccw rotation, likewise for b.
        pm.insert_edge(a, pa, b, pb)
        adj.add(_norm(a, b))
        queue.append((a, b))
        queue.append((b, a))
    return _rebuild(emb, pm, emb.outer)


def k4_violations(emb: OnePlanarEmbedding) -> list[tuple[int, int]]:
    """Crossing pairs whose four endpoints do not induce a K4."""
    g = emb.graph
    bad = []
    for k, (a, b) in enumerate(emb.crossings):
        ends = emb.edges[a] + emb.edges[b]
        for x in range(4):
            for y in range(x + 1, 4):
                if not g.has_edge(ends[x], ends[y]):
                    bad.append((k, _norm(ends[x], ends[y])))
    return bad


# ---------------------------------------------------------------------------
# Normal form
# ---------------------------------------------------------------------------


def _hugs(pm: PlaneMap, n: int, p: int, q: int) -> bool:
    """Whether planar edge pq closes a triangle with some crossing dummy."""
    for u, v in ((p, q), (q, p)):
        _, w = pm.next(u, v)
        if w >= n and pm.next(v, w) == (w, u):
            return True
    return False


def normal_form(emb: OnePlanarEmbedding) -> tuple[OnePlanarEmbedding, dict[int, str]]:
    """``_normal_form`` plus a configuration tag per crossing."""
    require_valid(emb)
    out = _normal_form(emb)
    return out, config_tags(out)


def _normal_form(emb: OnePlanarEmbedding) -> OnePlanarEmbedding:
    """Route the K4 edges of every crossing pair alongside the crossing.

    For each crossing x and each pair of consecutive neighbours (r, s) of x,
    the face between them becomes the triangle x r s: a missing edge rs is
    inserted there; an existing planar edge rs that does not already hug
    another crossing is moved there.  Crossed edges are never moved.
    """
    n = emb.n
    pm = emb.plane_map()
    edges = set(emb.edges)
    crossed = {emb.edges[e] for pair in emb.crossings for e in pair}
    outer = emb.outer
    for k in range(len(emb.crossings)):
        x = n + k
        for j in range(4):
            r, s = pm.rot[x][j], pm.rot[x][(j + 1) % 4]
            if pm.next(x, r) == (r, s) and pm.next(r, s) == (s, x):
                continue
            e = _norm(r, s)
            if e in crossed:
                continue
            if e in edges:
                if _hugs(pm, n, r, s):
                    continue
                if outer in ((r, s), (s, r)):
                    # keep the outer witness valid: shift it along its face
                    outer = pm.next(*outer)
                    if outer in ((r, s), (s, r)):
                        continue
                pm.remove_edge(r, s)
            # face left of x->r: walk x, r, ..., pred, s, x
            walk = pm.face_walk(x, r)
            pred_s = walk[-2][0] if walk[-1][0] == s else None
            if pred_s is None:
                raise AssertionError("unexpected face walk at crossing")
            pm.insert_edge(r, x, s, pred_s)
            edges.add(e)
    return _rebuild(emb, pm, outer)


def config_tags(emb: OnePlanarEmbedding) -> dict[int, str]:
    """augmented-B for crossings in the skeleton's outer face, else augmented-X."""
    sk = planar_skeleton(emb)
    tags = {}
    for k in range(len(emb.crossings)):
        f = sk.face_of_crossing(emb, k)
        tags[k] = "augmented-B" if f == sk.outer_face else "augmented-X"
    return tags


def normalize(emb: OnePlanarEmbedding, *, tags: bool = True) -> tuple[OnePlanarEmbedding, dict[int, str]]:
    """augment -> normal form -> augment -> separating-edge routing; the
    pipeline's preprocessing.

    With ``tags=False`` the configuration tags are skipped (empty dict).
    """
    a = planar_maximal_augment(emb)
    b = _normal_form(a)
    c = route_separating_edges(planar_maximal_augment(b, validate=False))
    return c, config_tags(c) if tags else {}


# ---------------------------------------------------------------------------
# Planar skeleton
# ---------------------------------------------------------------------------


@dataclass
class PlanarSkeleton:
    graph: Graph
    pm: PlaneMap
    walks: list[list[Dart]]
    face_of: dict[Dart, int]
    outer_face: int
    planarization: PlaneMap

    @property
    def rotation(self) -> list[list[int]]:
        return self.pm.rot

    def face_of_corner(self, emb: OnePlanarEmbedding, a: int, w: int) -> int:
        """Skeleton face containing the planarization face left of dart a->w."""
        n = emb.n
        if w >= n:
            rot = emb.rotation[a]
            i = self.planarization.index(a, w)
            while rot[i] >= n:
                i -= 1
            w = rot[i]
        return self.face_of[(a, w)]

    def face_of_crossing(self, emb: OnePlanarEmbedding, k: int) -> int:
        x = emb.n + k
        r = emb.rotation[x][0]
        return self.face_of_corner(emb, r, x)

    def inner_face_degrees(self) -> list[int]:
        return [len(w) for f, w in enumerate(self.walks) if f != self.outer_face]


def planar_skeleton(emb: OnePlanarEmbedding) -> PlanarSkeleton:
    n = emb.n
    rot = [[w for w in emb.rotation[v] if w < n] for v in range(n)]
    pm = PlaneMap(rot)
    walks, face_of = pm.faces()
    edges = [(u, w) for u in range(n) for w in rot[u] if u < w]
    g = Graph(n, tuple(sorted(edges)))
    full = emb.plane_map()
    sk = PlanarSkeleton(g, pm, walks, face_of, -1, full)
    a, w = emb.outer
    if a >= n:
        # step along the outer face to a real vertex
        a, w = full.next(a, w)
    sk.outer_face = sk.face_of_corner(emb, a, w) if rot[a] else -1
    return sk


# ---------------------------------------------------------------------------
# Biconnectivity and separation pairs
# ---------------------------------------------------------------------------


def articulation_points(n: int, adj) -> list[int]:
    """Iterative Hopcroft-Tarjan lowpoint computation."""
    disc = [-1] * n
    low = [0] * n
    out = set()
    t = 0
    for s in range(n):
        if disc[s] != -1:
            continue
        disc[s] = low[s] = t
        t += 1
        children = 0
        stack = [(s, -1, iter(adj[s]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    if v == s:
                        children += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p != s and low[v] >= disc[p]:
                    out.add(p)
        if children > 1:
            out.add(s)
    return sorted(out)


def is_connected(n: int, adj) -> bool:
    if n == 0:
        return True
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return all(seen)


@dataclass
class SeparationPair:
    u: int
    v: int
    # each sector: the faces (ids) bounding it and the real vertices strictly inside
    sectors: list[list[int]] = field(default_factory=list)


def separation_pairs(emb: OnePlanarEmbedding) -> list[SeparationPair]:
    """All real 2-cuts of a connected planarization, found through shared faces.

    Around u, the faces shared with v split u's rotation into sectors; each
    sector holding a neighbour other than v is one side of a closed curve
    through u and v.  Two or more such sectors means {u, v} separates.  A
    sector that holds any vertex other than u, v holds a real one, since a
    dummy has four distinct real neighbours.
    """
    n = emb.n
    pm = emb.plane_map()
    walks, face_of = pm.faces()
    corners: dict[tuple[int, int], list[int]] = {}
    for f, walk in enumerate(walks):
        reals = [d[0] for d in walk if d[0] < n]
        seen = set()
        for u in reals:
            for v in reals:
                if u < v and (u, v) not in seen:
                    seen.add((u, v))
                    corners.setdefault((u, v), []).append(f)
    out = []
    for (u, v), fs in sorted(corners.items()):
        if len(set(fs)) < 2:
            continue
        # corner index i at u: face left of dart u -> rot[u][i]
        rot = pm.rot[u]
        shared = set(fs)
        idx = sorted(i for i, w in enumerate(rot) if face_of[(u, w)] in shared)
        if len(idx) < 2:
            continue
        sectors = []
        for a, b in zip(idx, idx[1:] + [idx[0] + len(rot)]):
            inside = [rot[(a + 1 + s) % len(rot)] for s in range(b - a)]
            if inside == [v] or not inside:
                continue
            sectors.append(inside)
        if len(sectors) >= 2:
            out.append(SeparationPair(u, v, sectors))
    return out


def components_without(g: Graph, u: int, v: int) -> list[list[int]]:
    """Vertex sets of the components of G - {u, v}."""
    seen = {u, v}
    out = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        i = 0
        while i < len(comp):
            for w in g.adjacency[comp[i]]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
            i += 1
        out.append(sorted(comp))
    return out


def main_component(comps: list[list[int]]) -> list[int]:
    """The largest component (ties: smallest first vertex)."""
    return min(comps, key=lambda c: (-len(c), c[0]))


def _sector_labels(emb_n: int, pm: PlaneMap, u: int, v: int, cid: dict[int, int]) -> list[int | None]:
    """Component of every neighbour of u in ccw order; None for v."""
    out: list[int | None] = []
    for w in pm.rot[u]:
        if w == v:
            out.append(None)
        elif w < emb_n:
            out.append(cid[w])
        else:
            out.append(next(cid[y] for y in pm.rot[w] if y < emb_n and y not in (u, v)))
    return out


def route_separating_edges(emb: OnePlanarEmbedding) -> OnePlanarEmbedding:
    """Move every separating edge (u, v) next to its main component.

    Afterwards the inner components of {u, v} form one contiguous run in
    u's rotation, bounded by the main component on one end and by v on
    the other.  The edge is re-inserted into the gap face between the main
    component and the first inner component ccw from it; such gaps hold
    only u, v and crossings, so no planar edge becomes addable.
    """
    n = emb.n
    pm = emb.plane_map()
    outer = emb.outer
    moved = False
    g = emb.graph
    for sp in separation_pairs(emb):
        u, v = sp.u, sp.v
        if not pm.has_edge(u, v):
            continue
        comps = components_without(g, u, v)
        main = set(main_component(comps))
        cid = {w: (0 if w in main else 1 + i) for i, c in enumerate(comps) for w in c}
        lab = _sector_labels(n, pm, u, v, cid)
        k = len(lab)
        i = lab.index(None)
        if lab[(i - 1) % k] == 0 or lab[(i + 1) % k] == 0:
            continue
        # corner after the last main neighbour, ccw
        j = next(
            (t for t in range(k) if lab[t] == 0 and lab[(t + 1) % k] not in (0, None)),
            None,
        )
        if j is None:
            continue
        a, b = pm.rot[u][j], pm.rot[u][(j + 1) % k]
        if outer in ((u, v), (v, u)):
            outer = pm.next(*outer)
        pm.remove_edge(u, v)
        walk = pm.face_walk(u, a)
        pred_v = next((p for p, q in walk if q == v), None)
        if pred_v is None:
            raise EmbeddingError(f"gap face at {u} between {a} and {b} misses {v}")
        pm.insert_edge(u, b, v, pred_v)
        moved = True
    return _rebuild(emb, pm, outer) if moved else emb


def separation_pairs_bruteforce(g: Graph) -> set[tuple[int, int]]:
    out = set()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            keep = [w for w in range(g.n) if w not in (u, v)]
            if not keep:
                continue
            idx = {w: i for i, w in enumerate(keep)}
            adj = [[idx[y] for y in g.adjacency[w] if y in idx] for w in keep]
            if not is_connected(len(keep), adj):
                out.add((u, v))
    return out


def is_three_connected(emb: OnePlanarEmbedding) -> bool:
    g = emb.graph
    if g.n < 4:
        return False
    if not is_connected(g.n, g.adjacency) or articulation_points(g.n, g.adjacency):
        return False
    return not separation_pairs(emb)


# ---------------------------------------------------------------------------
# Induced sub-embeddings
# ---------------------------------------------------------------------------


def sub_embedding(emb: OnePlanarEmbedding, keep) -> tuple[OnePlanarEmbedding, list[int]]:
    """The embedding induced on the real vertices ``keep``.

    A crossing whose partner edge is deleted becomes a plain edge.  The
    outer face is the face covering the old outer face where any of it
    survives, else the longest face.  Returns the embedding (vertices
    renumbered in sorted order) and the new-to-old vertex map.
    """
    from .generators import embedding_from_rotation

    n = emb.n
    keep_set = set(keep)
    old_ids = sorted(keep_set)
    new_id = {v: i for i, v in enumerate(old_ids)}
    kept_cross = []
    through: dict[tuple[int, int], int] = {}  # (real, dummy) -> far real end
    for k, (a, b) in enumerate(emb.crossings):
        x = n + k
        ea, eb = emb.edges[a], emb.edges[b]
        ka = ea[0] in keep_set and ea[1] in keep_set
        kb = eb[0] in keep_set and eb[1] in keep_set
        if ka and kb:
            new_id[x] = len(old_ids) + len(kept_cross)
            kept_cross.append(x)
        elif ka or kb:
            p, q = ea if ka else eb
            through[(p, x)] = q
            through[(q, x)] = p

    def image(v: int, w: int) -> int | None:
        if w in new_id:
            return new_id[w]
        far = through.get((v, w))
        return None if far is None else new_id[far]

    rot: list[list[int]] = []
    for v in old_ids + kept_cross:
        r = [image(v, w) for w in emb.rotation[v]]
        rot.append([w for w in r if w is not None])
    pm = emb.plane_map()
    a, w = emb.outer
    outer = None
    for u, x in pm.face_walk(a, w):
        if u not in new_id or not rot[new_id[u]]:
            continue
        r = emb.rotation[u]
        i = pm.index(u, x)
        for s in range(len(r)):
            y = image(u, r[(i - s) % len(r)])
            if y is not None:
                outer = (new_id[u], y)
                break
        if outer is not None:
            break
    if outer is None:
        walks, _ = PlaneMap(rot).faces()
        outer = max(walks, key=len)[0] if walks else (0, 0)
    sub = embedding_from_rotation(len(old_ids), rot, outer)
    return sub, old_ids
