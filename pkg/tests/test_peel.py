from __future__ import annotations

import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bookshelf.augment import articulation_points, normalize, planar_skeleton
from bookshelf.generators import (
    embedding_from_drawing,
    gen_extended_wheel,
    gen_k4,
    gen_random_1planar,
    gen_triangulation,
)
from bookshelf.graph import _norm
from bookshelf.peel import (
    LevelGapViolation,
    NotCactus,
    biconnected_blocks,
    check_cactus,
    classify_edges,
    extract_two_level,
    level_decompose,
    levels_by_stripping,
    vertex_levels,
)

# outer triangle 0 1 2, vertex 3 inside it, vertex 4 inside triangle 3 1 2
DISK = (
    [(0, 0), (12, 0), (6, 12), (5, 3), (7, 5)],
    [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)],
)


def levels_of(emb) -> list[int]:
    return vertex_levels(planar_skeleton(emb))


def inside(poly, p) -> bool:
    """Strict point-in-polygon test by ray casting (exact arithmetic)."""
    x, y = p
    hit = False
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        if (y1 > y) != (y2 > y):
            t = x1 + Fraction(y - y1) * (x2 - x1) / (y2 - y1)
            if t > x:
                hit = not hit
    return hit


# ---------------------------------------------------------------------------
# Levels
# ---------------------------------------------------------------------------


def test_one_interior_vertex_levels():
    assert levels_of(gen_k4()) == [0, 0, 0, 1]


@pytest.mark.parametrize("seed", range(8))
def test_levels_match_outer_face_stripping_on_triangulations(seed):
    emb = gen_triangulation(20 + 15 * seed, seed)
    sk = planar_skeleton(emb)
    assert vertex_levels(sk) == levels_by_stripping(sk)


@pytest.mark.parametrize("seed", range(6))
def test_levels_match_stripping_on_normalized_inputs(seed):
    norm, _ = normalize(gen_random_1planar(60, 0.7, seed))
    sk = planar_skeleton(norm)
    assert vertex_levels(sk) == levels_by_stripping(sk)


def test_levels_never_jump_by_two():
    for s in range(6):
        norm, _ = normalize(gen_random_1planar(80, 0.9, s))
        lv = levels_of(norm)
        assert all(abs(lv[u] - lv[v]) <= 1 for u, v in norm.edges)


def test_classify_rejects_level_gap():
    emb = gen_k4()
    with pytest.raises(LevelGapViolation):
        classify_edges(emb, [0, 0, 0, 2])


# ---------------------------------------------------------------------------
# Edge classification
# ---------------------------------------------------------------------------


def test_outer_cycle_edges_are_level_zero():
    norm, _ = normalize(gen_random_1planar(40, 0.5, 1))
    sk = planar_skeleton(norm)
    ld = level_decompose(sk)
    cls = classify_edges(norm, ld.level)
    top = next(r for r in ld.regions if r.level == 0)
    c = top.cycle
    for i in range(len(c)):
        assert cls[_norm(c[i], c[(i + 1) % len(c)])] == ("level", 0)


def test_extended_wheel_classification_table():
    norm, _ = normalize(gen_extended_wheel(4))
    lv = levels_by_stripping(planar_skeleton(norm))
    table = {
        (u, v): ("level", lv[u]) if lv[u] == lv[v] else ("binding", min(lv[u], lv[v])) for u, v in norm.edges
    }
    assert classify_edges(norm, lv) == table
    assert {k for k, _ in table.values()} == {"level", "binding"}


# ---------------------------------------------------------------------------
# Regions and 2-level subgraphs
# ---------------------------------------------------------------------------


def test_cycles_and_containment():
    norm, _ = normalize(gen_random_1planar(120, 0.6, 5))
    ld = level_decompose(planar_skeleton(norm))
    assert ld.depth >= 3
    for r in ld.regions:
        assert all(ld.level[v] == r.level for v in r.cycle)
        if r.level == 0:
            assert r.parent == -1
        else:
            assert ld.regions[r.parent].level == r.level - 1
            assert r.id in ld.regions[r.parent].children
    levels = set(ld.cycles())
    assert levels == set(range(max(levels) + 1)) and max(levels) < ld.depth


def test_region_with_empty_interior_is_its_cycle():
    norm, _ = normalize(gen_triangulation(60, 2))
    sk = planar_skeleton(norm)
    ld = level_decompose(sk)
    subs = extract_two_level(norm, sk, ld)
    empty = [t for t in subs if not t.inner and not t.crossings and len(ld.regions[t.region].faces) == 1]
    assert empty
    for t in empty:
        assert t.edges == []


def test_two_level_edges_match_point_in_region():
    coords, edges = DISK
    emb = embedding_from_drawing(coords, edges)
    sk = planar_skeleton(emb)
    ld = level_decompose(sk)
    assert ld.level == [0, 0, 0, 1, 1]
    (sub,) = [t for t in extract_two_level(emb, sk, ld) if t.level == 0]
    poly = [coords[v] for v in sub.cycle]
    c = sub.cycle
    ring = {_norm(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}
    want = sorted(
        (u, v)
        for u, v in emb.edges
        if (u, v) not in ring
        and inside(poly, (Fraction(coords[u][0] + coords[v][0], 2), Fraction(coords[u][1] + coords[v][1], 2)))
    )
    assert sub.edges == want
    assert sub.inner == [3, 4]


def test_two_level_subgraphs_partition_the_edges():
    norm, _ = normalize(gen_random_1planar(90, 0.8, 3))
    sk = planar_skeleton(norm)
    ld = level_decompose(sk)
    subs = extract_two_level(norm, sk, ld)
    owned = [e for t in subs for e in t.edges]
    assert len(owned) == len(set(owned))
    cycle_edges = {
        _norm(r.cycle[i], r.cycle[(i + 1) % len(r.cycle)]) for r in ld.regions if r.level == 0 for i in range(len(r.cycle))
    }
    assert set(owned) | cycle_edges == set(norm.edges)


# ---------------------------------------------------------------------------
# Cactus blocks
# ---------------------------------------------------------------------------


def random_cactus(rng: random.Random, steps: int) -> tuple[int, list[tuple[int, int]]]:
    n, edges = 1, []
    for _ in range(steps):
        a = rng.randrange(n)
        if rng.random() < 0.4:
            edges.append((a, n))
            n += 1
        else:
            k = rng.randint(3, 6)
            ring = [a] + list(range(n, n + k - 1))
            n += k - 1
            edges += [_norm(ring[i], ring[(i + 1) % k]) for i in range(k)]
    return n, edges


def adjacency(edges) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    return adj


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 25))
def test_cactus_blocks_match_networkx(seed, steps):
    n, edges = random_cactus(random.Random(seed), steps)
    mine = {frozenset(_norm(*e) for e in b) for b in biconnected_blocks(range(n), adjacency(edges))}
    h = nx.Graph(edges)
    theirs = {frozenset(_norm(*e) for e in b) for b in nx.biconnected_component_edges(h)}
    assert mine == theirs
    check_cactus(list(map(list, mine)))
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    assert set(articulation_points(n, adj)) == set(nx.articulation_points(h))


def test_non_cactus_block_is_rejected():
    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    with pytest.raises(NotCactus):
        check_cactus(biconnected_blocks(range(4), adjacency(k4)))
