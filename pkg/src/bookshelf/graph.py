"""Graphs, combinatorial 1-planar embeddings and their planarizations."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ._plane import Dart, PlaneMap


class EmbeddingError(ValueError):
    """Base class for domain errors raised on bad embeddings."""


class InvalidEmbedding(EmbeddingError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        head = "; ".join(violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"invalid 1-planar embedding: {head}{more}")


class DisconnectedPlanarization(EmbeddingError):
    pass


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, tuple(sorted({_norm(u, v) for u, v in edges})))

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edge_set


@dataclass(frozen=True)
class CrossingPair:
    e1: tuple[int, int]
    e2: tuple[int, int]
    crossing_vertex: int


@dataclass(frozen=True)
class OnePlanarEmbedding:
    """A simple graph with a rotation system of its planarization.

    Vertices ``0..n-1`` are real; crossing ``k`` is the dummy vertex
    ``n + k`` joining the two halves of both of its edges.  ``rotation``
    lists the counter-clockwise neighbours of every planarization vertex and
    ``outer`` is a dart whose left face is the outer face.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    crossings: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    outer: Dart

    @cached_property
    def graph(self) -> Graph:
        return Graph(self.n, self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def num_nodes(self) -> int:
        return self.n + len(self.crossings)

    def is_dummy(self, v: int) -> bool:
        return v >= self.n

    @cached_property
    def crossing_of_edge(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for k, (a, b) in enumerate(self.crossings):
            out[a] = k
            out[b] = k
        return out

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def crossing_pairs(self) -> list[CrossingPair]:
        return [
            CrossingPair(self.edges[a], self.edges[b], self.n + k)
            for k, (a, b) in enumerate(self.crossings)
        ]

    def planar_edge_indices(self) -> list[int]:
        crossed = self.crossing_of_edge
        return [i for i in range(self.m) if i not in crossed]

    def plane_map(self) -> PlaneMap:
        return PlaneMap(self.rotation)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def expected_planarization(emb: OnePlanarEmbedding) -> list[set[int]]:
    """Neighbour sets of the planarization implied by edges + crossings."""
    nbrs: list[set[int]] = [set() for _ in range(emb.num_nodes)]
    crossed = emb.crossing_of_edge
    for i, (u, v) in enumerate(emb.edges):
        if i in crossed:
            x = emb.n + crossed[i]
            nbrs[u].add(x)
            nbrs[v].add(x)
            nbrs[x].update((u, v))
        else:
            nbrs[u].add(v)
            nbrs[v].add(u)
    return nbrs


def _components(adj: list[list[int]] | tuple[tuple[int, ...], ...]) -> list[int]:
    comp = [-1] * len(adj)
    c = 0
    for s in range(len(adj)):
        if comp[s] != -1:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp[w] == -1:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


def validate_embedding(emb: OnePlanarEmbedding) -> ValidationReport:
    rep = ValidationReport()
    bad = rep.violations
    n = emb.n

    seen: set[tuple[int, int]] = set()
    for i, (u, v) in enumerate(emb.edges):
        if not (0 <= u < n and 0 <= v < n):
            bad.append(f"edge {i} has endpoint out of range")
            continue
        if u == v:
            bad.append(f"edge {i} is a loop")
        e = _norm(u, v)
        if e in seen:
            bad.append(f"edge {i} is a parallel edge")
        seen.add(e)

    uses: dict[int, int] = {}
    for k, (a, b) in enumerate(emb.crossings):
        if not (0 <= a < emb.m and 0 <= b < emb.m):
            bad.append(f"crossing {k} references a missing edge")
            continue
        if a == b:
            bad.append(f"crossing {k} crosses edge {a} with itself")
            continue
        if len(set(emb.edges[a]) | set(emb.edges[b])) != 4:
            bad.append(f"crossing {k} edges share an endpoint")
        for e in (a, b):
            if e in uses:
                bad.append(f"edge crossed twice: edge {e} in crossings {uses[e]} and {k}")
            uses[e] = k
    if bad:
        return rep

    if len(emb.rotation) != emb.num_nodes:
        bad.append(
            f"rotation has {len(emb.rotation)} entries, expected {emb.num_nodes}"
        )
        return rep

    want = expected_planarization(emb)
    for v, r in enumerate(emb.rotation):
        if len(set(r)) != len(r):
            bad.append(f"rotation of {v} repeats a neighbour")
        elif set(r) != want[v]:
            bad.append(f"rotation of {v} does not match its incident edges")
    if bad:
        return rep

    for k, (a, b) in enumerate(emb.crossings):
        x = n + k
        r = emb.rotation[x]
        ea, eb = set(emb.edges[a]), set(emb.edges[b])
        if not ({r[0], r[2]} in (ea, eb) and {r[1], r[3]} in (ea, eb)):
            bad.append(f"crossing {k}: halves of an edge are not opposite at the dummy")

    pm = emb.plane_map()
    walks, face_of = pm.faces()
    comp = _components(emb.rotation)
    ncomp = max(comp) + 1 if comp else 0
    verts = [0] * ncomp
    edges2 = [0] * ncomp
    nfaces = [0] * ncomp
    for v in range(emb.num_nodes):
        verts[comp[v]] += 1
        edges2[comp[v]] += len(emb.rotation[v])
        if not emb.rotation[v]:
            nfaces[comp[v]] += 1
    for w in walks:
        nfaces[comp[w[0][0]]] += 1
    for c in range(ncomp):
        if verts[c] - edges2[c] // 2 + nfaces[c] != 2:
            bad.append(f"component {c} violates Euler's formula: not a planar rotation")

    u, v = emb.outer
    if not (0 <= u < emb.num_nodes) or v not in emb.rotation[u]:
        bad.append("outer face witness is not a dart of the planarization")
    return rep


def require_valid(emb: OnePlanarEmbedding) -> None:
    rep = validate_embedding(emb)
    if not rep.ok:
        raise InvalidEmbedding(rep.violations)


# ---------------------------------------------------------------------------
# Planarization and faces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Planarization:
    graph: Graph
    is_dummy: tuple[bool, ...]


def planarize(emb: OnePlanarEmbedding) -> Planarization:
    require_valid(emb)
    edges = []
    for v, r in enumerate(emb.rotation):
        edges.extend((v, w) for w in r if v < w)
    g = Graph.from_edges(emb.num_nodes, edges)
    return Planarization(g, tuple(v >= emb.n for v in range(emb.num_nodes)))


@dataclass(frozen=True)
class FaceList:
    faces: tuple[tuple[int, ...], ...]
    darts: tuple[tuple[Dart, ...], ...]
    outer: int

    def degree(self, f: int) -> int:
        return len(self.faces[f])


def faces(emb: OnePlanarEmbedding) -> FaceList:
    require_valid(emb)
    comp = _components(emb.rotation)
    if len(set(comp)) > 1:
        raise DisconnectedPlanarization("planarization is not connected")
    pm = emb.plane_map()
    walks, face_of = pm.faces()
    if not walks:
        return FaceList(((0,),), ((),), 0)
    return FaceList(
        tuple(tuple(d[0] for d in w) for w in walks),
        tuple(tuple(w) for w in walks),
        face_of[emb.outer],
    )


def contract_dummies(emb: OnePlanarEmbedding, planar_edges) -> set[tuple[int, int]]:
    """Recover the real edge set from planarization edges."""
    out: set[tuple[int, int]] = set()
    half: dict[int, list[int]] = {}
    for u, v in planar_edges:
        if u >= emb.n and v >= emb.n:
            raise ValueError("two dummies adjacent")
        if u >= emb.n or v >= emb.n:
            x, r = (u, v) if u >= emb.n else (v, u)
            half.setdefault(x, []).append(r)
        else:
            out.add(_norm(u, v))
    for x, rs in half.items():
        k = x - emb.n
        for e in emb.crossings[k]:
            a, b = emb.edges[e]
            if a in rs and b in rs:
                out.add(_norm(a, b))
    return out
