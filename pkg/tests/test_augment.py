from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest

from bookshelf.augment import (
    components_without,
    config_tags,
    is_three_connected,
    k4_violations,
    main_component,
    normal_form,
    normalize,
    planar_maximal_augment,
    planar_skeleton,
    separation_pairs,
    separation_pairs_bruteforce,
    sub_embedding,
)
from bookshelf.generators import (
    embedding_from_drawing,
    gen_extended_wheel,
    gen_k5,
    gen_k6,
    gen_random_1planar,
    gen_separated,
    gen_triangulation,
)
from bookshelf.graph import validate_embedding
from bookshelf.pipeline import inner_components
from oracles import addable_pairs, is_planar, to_nx

PENTAGON = ([(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)], [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3)])

# a crossing whose K4 quadrangle 0123 holds vertex 4 next to edge (0, 1)
QUAD_WITH_VERTEX = (
    [(0, 0), (8, 0), (8, 8), (0, 8), (4, 1), (4, -8), (16, 4), (4, 16), (-8, 4)],
    [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (4, 0), (4, 1), (5, 0), (5, 1), (6, 1), (6, 2),
     (7, 2), (7, 3), (8, 3), (8, 0), (5, 6), (6, 7), (7, 8), (8, 5)],
)  # fmt: skip


def unhugged(emb) -> list[tuple[int, int, int]]:
    """(crossing, r, s) where x r s is not a face for consecutive neighbours r, s of x."""
    pm = emb.plane_map()
    bad = []
    for k in range(len(emb.crossings)):
        x = emb.n + k
        for j in range(4):
            r, s = pm.rot[x][j], pm.rot[x][(j + 1) % 4]
            if not (pm.next(x, r) == (r, s) and pm.next(r, s) == (s, x)):
                bad.append((k, r, s))
    return bad


def same_side(emb, u: int, v: int) -> bool:
    """Main component's neighbours of u form one run next to v in u's rotation."""
    comps = components_without(emb.graph, u, v)
    main = set(main_component(comps))
    lab = []
    for w in emb.rotation[u]:
        if w == v:
            lab.append(None)
        elif w < emb.n:
            lab.append(w in main)
        else:
            lab.append(next(y in main for y in emb.rotation[w] if y < emb.n and y not in (u, v)))
    i = lab.index(None)
    body = lab[i + 1 :] + lab[:i]
    idx = [j for j, m in enumerate(body) if m]
    return idx == list(range(idx[0], idx[-1] + 1)) and (idx[0] == 0 or idx[-1] == len(body) - 1)


# ---------------------------------------------------------------------------
# Planar-maximal augmentation
# ---------------------------------------------------------------------------


def test_lone_crossing_becomes_k4():
    emb = embedding_from_drawing([(0, 0), (4, 0), (4, 4), (0, 4)], [(0, 2), (1, 3)])
    aug = planar_maximal_augment(emb)
    assert set(aug.edges) == set(combinations(range(4), 2))
    assert not k4_violations(aug)


def test_maximal_planar_graph_is_unchanged():
    emb = gen_triangulation(30, seed=4)
    assert planar_maximal_augment(emb).edges == emb.edges


def test_pentagon_with_crossing_chords():
    emb = embedding_from_drawing(*PENTAGON)
    assert len(emb.crossings) == 1
    assert addable_pairs(emb)
    aug = planar_maximal_augment(emb)
    # oracle: nothing addable in any face; hand count: K5 on 5 vertices
    assert addable_pairs(aug) == set()
    assert aug.m == 10
    assert set(emb.edges) <= set(aug.edges)


@pytest.mark.parametrize("seed", range(6))
def test_augmentation_is_maximal_and_keeps_edges(seed):
    emb = gen_random_1planar(40, 0.6, seed)
    aug = planar_maximal_augment(emb)
    assert validate_embedding(aug).ok
    assert set(emb.edges) <= set(aug.edges)
    assert addable_pairs(aug) == set()
    assert not k4_violations(aug)


# ---------------------------------------------------------------------------
# Normal form
# ---------------------------------------------------------------------------


def test_vertex_inside_k4_quadrangle_is_rerouted():
    emb = embedding_from_drawing(*QUAD_WITH_VERTEX)
    assert unhugged(emb)
    norm, tags = normalize(emb)
    assert unhugged(norm) == []
    assert tags == {0: "augmented-X"}
    assert is_three_connected(norm)


def test_normal_form_tags_and_validity():
    out, tags = normal_form(planar_maximal_augment(gen_k6()))
    assert validate_embedding(out).ok
    assert set(tags.values()) <= {"augmented-X", "augmented-B"}


@pytest.mark.parametrize("make", [gen_k5, gen_k6, lambda: gen_extended_wheel(5), lambda: gen_random_1planar(60, 0.9, 2)])
def test_normalize_is_idempotent(make):
    a, ta = normalize(make())
    b, tb = normalize(a)
    assert (a.edges, a.rotation, ta) == (b.edges, b.rotation, tb)


def test_three_connected_normal_form_has_at_most_one_outer_b():
    for s in range(10):
        norm, tags = normalize(gen_random_1planar(50, 0.8, s))
        if is_three_connected(norm):
            assert list(tags.values()).count("augmented-B") <= 1


def test_separating_edge_keeps_crossings_on_one_side():
    checked = 0
    for s in range(12):
        for pieces in (2, 4, 6):
            norm, _ = normalize(gen_separated(30, pieces, 0.9, s), tags=False)
            for sp in separation_pairs(norm):
                if norm.graph.has_edge(sp.u, sp.v):
                    assert same_side(norm, sp.u, sp.v), (s, pieces, sp.u, sp.v)
                    checked += 1
    assert checked >= 20


# ---------------------------------------------------------------------------
# Planar skeleton
# ---------------------------------------------------------------------------


def test_k5_skeleton_drops_the_crossing_pair():
    sk = planar_skeleton(gen_k5())
    assert sk.graph.m == 8
    assert set(sk.graph.edges) == set(gen_k5().edges) - {gen_k5().edges[i] for i in gen_k5().crossings[0]}


def test_planar_input_skeleton_is_the_input():
    emb = gen_triangulation(25, seed=1)
    assert planar_skeleton(emb).graph.edges == emb.graph.edges


@pytest.mark.parametrize("seed", range(5))
def test_skeleton_is_planar_and_uncrossed(seed):
    emb = gen_random_1planar(70, 0.8, seed)
    sk = planar_skeleton(emb)
    crossed = {emb.edges[i] for i in emb.crossing_of_edge}
    assert not crossed & set(sk.graph.edges)
    assert is_planar(sk.graph)


@pytest.mark.parametrize("seed", range(5))
def test_normal_three_connected_inner_faces_are_small(seed):
    norm, _ = normalize(gen_random_1planar(80, 0.7, seed))
    assert is_three_connected(norm)
    assert set(planar_skeleton(norm).inner_face_degrees()) <= {3, 4}


# ---------------------------------------------------------------------------
# Separation pairs
# ---------------------------------------------------------------------------


def test_three_connected_input_has_no_separation_pairs():
    for emb in (gen_extended_wheel(4), gen_k6(), gen_random_1planar(50, 0.5, 1)):
        norm, _ = normalize(emb)
        assert separation_pairs(norm) == []
        assert inner_components(norm) == []


def test_pair_with_two_inner_components():
    norm, _ = normalize(gen_separated(20, 4, 0.9, 11), tags=False)
    comps = [c for c in inner_components(norm) if (c.u, c.v) == (1, 6)]
    assert len(comps) == 2
    for c in comps:
        sub, ids = sub_embedding(norm, c.vertices + [c.u, c.v])
        pm = sub.plane_map()
        on_outer = {ids[a] for a, _ in pm.face_walk(*sub.outer) if a < sub.n}
        assert {c.u, c.v} <= on_outer


def nx_two_cuts(g) -> set[tuple[int, int]]:
    h = to_nx(g)
    out = set()
    for u, v in combinations(range(g.n), 2):
        rest = h.subgraph([w for w in range(g.n) if w not in (u, v)])
        if rest.number_of_nodes() and not nx.is_connected(rest):
            out.add((u, v))
    return out


@pytest.mark.parametrize("seed", range(25))
def test_separation_pairs_match_exhaustive_two_cuts(seed):
    n = 8 + seed % 5
    emb = gen_separated(n, 1 + seed % 3, 0.9, seed)
    norm, _ = normalize(emb, tags=False)
    want = nx_two_cuts(norm.graph)
    assert {(sp.u, sp.v) for sp in separation_pairs(norm)} == want
    assert separation_pairs_bruteforce(norm.graph) == want


def test_some_small_inputs_do_have_separation_pairs():
    hits = sum(
        bool(separation_pairs(normalize(gen_separated(8 + s % 5, 1 + s % 3, 0.9, s), tags=False)[0]))
        for s in range(25)
    )
    assert hits >= 3


# ---------------------------------------------------------------------------
# Induced sub-embeddings
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(8))
def test_sub_embedding_is_valid_and_induced(seed):
    emb = gen_random_1planar(30, 0.7, seed)
    keep = list(range(0, 30, 2)) + list(range(1, 12, 2))
    sub, ids = sub_embedding(emb, keep)
    assert validate_embedding(sub).ok
    want = {(u, v) for u, v in emb.edges if u in keep and v in keep}
    assert {(ids[a], ids[b]) for a, b in sub.edges} == want


def test_config_tags_cover_every_crossing():
    norm, _ = normalize(gen_k6())
    assert set(config_tags(norm)) == set(range(len(norm.crossings)))
