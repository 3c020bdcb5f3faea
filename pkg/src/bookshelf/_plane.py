"""Mutable rotation-system map used internally by every embedding stage.

Rotations are stored counter-clockwise.  A dart ``(u, v)`` is the edge
``uv`` traversed from ``u`` to ``v``; its face is the one on its left, so
bounded faces are traced counter-clockwise and the outer face clockwise.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

Dart = tuple[int, int]


class PlaneMap:
    def __init__(self, rotation: Iterable[Sequence[int]]) -> None:
        self.rot: list[list[int]] = [list(r) for r in rotation]
        self._pos: list[dict[int, int] | None] = [None] * len(self.rot)

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.rot)

    def copy(self) -> "PlaneMap":
        return PlaneMap(self.rot)

    def _positions(self, v: int) -> dict[int, int]:
        p = self._pos[v]
        if p is None:
            p = {x: i for i, x in enumerate(self.rot[v])}
            self._pos[v] = p
        return p

    def index(self, v: int, w: int) -> int:
        return self._positions(v)[w]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._positions(u)

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def next(self, u: int, v: int) -> Dart:
        """Successor of dart u->v along its (left) face."""
        r = self.rot[v]
        return v, r[self.index(v, u) - 1]

    def prev(self, u: int, v: int) -> Dart:
        r = self.rot[u]
        return r[(self.index(u, v) + 1) % len(r)], u

    def cw(self, v: int, w: int) -> int:
        """Neighbour of v immediately clockwise of w."""
        return self.rot[v][self.index(v, w) - 1]

    def ccw(self, v: int, w: int) -> int:
        r = self.rot[v]
        return r[(self.index(v, w) + 1) % len(r)]

    def darts(self) -> Iterator[Dart]:
        for u, r in enumerate(self.rot):
            for v in r:
                yield u, v

    def face_walk(self, u: int, v: int) -> list[Dart]:
        walk = [(u, v)]
        d = self.next(u, v)
        while d != (u, v):
            walk.append(d)
            d = self.next(*d)
        return walk

    def faces(self) -> tuple[list[list[Dart]], dict[Dart, int]]:
        """All face walks (in dart order of discovery) and the dart->face map."""
        face_of: dict[Dart, int] = {}
        walks: list[list[Dart]] = []
        rot = self.rot
        pos = [self._positions(v) for v in range(len(rot))]
        for u, r in enumerate(rot):
            for v in r:
                if (u, v) in face_of:
                    continue
                fid = len(walks)
                walk = []
                a, b = u, v
                while True:
                    d = (a, b)
                    face_of[d] = fid
                    walk.append(d)
                    a, b = b, rot[b][pos[b][a] - 1]
                    if a == u and b == v:
                        break
                walks.append(walk)
        return walks, face_of

    # -- mutation ------------------------------------------------------------

    def add_vertex(self) -> int:
        self.rot.append([])
        self._pos.append(None)
        return len(self.rot) - 1

    def _insert(self, a: int, b: int, before: int | None) -> None:
        r = self.rot[a]
        if before is None or not r:
            r.append(b)
        else:
            r.insert(self.index(a, before), b)
        self._pos[a] = None

    def insert_edge(self, a: int, pa: int | None, b: int, pb: int | None) -> None:
        """Add edge ab inside the face containing darts pa->a and pb->b.

        ``pa`` is the predecessor of ``a`` on the face walk (None if a is
        isolated); the new edge is placed in that corner, likewise for b.
        """
        self._insert(a, b, pa)
        self._insert(b, a, pb)

    def remove_edge(self, a: int, b: int) -> None:
        self.rot[a].remove(b)
        self.rot[b].remove(a)
        self._pos[a] = None
        self._pos[b] = None

    def replace_neighbor(self, v: int, old: int, new: int) -> None:
        pos = self._positions(v)
        i = pos.pop(old)
        self.rot[v][i] = new
        pos[new] = i
