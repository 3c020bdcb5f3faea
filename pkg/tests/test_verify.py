from __future__ import annotations

import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bookshelf.book import BookEmbedding
from bookshelf.generators import gen_cycle, gen_extended_wheel, gen_k4, gen_k5, gen_triangulation
from bookshelf.graph import Graph
from bookshelf.pipeline import embed_3connected, find_hamiltonian_cycle
from bookshelf.verify import (
    BudgetExhausted,
    check_book_embedding,
    check_book_embedding_bruteforce,
    conflict_graph,
    edge_count_lower_bound,
    exact_book_thickness,
    min_pages_for_order,
)
from faults import fault_cases
from oracles import book_thickness_bruteforce, interleave, is_outerplanar, pages_needed_bruteforce


def naive_pairs(g: Graph, be: BookEmbedding) -> set[frozenset]:
    pos = be.position()
    items = [(e, p) for e, p in be.pages.items() if g.has_edge(*e)]
    out = set()
    for i, (e, p) in enumerate(items):
        for f, q in items[i + 1 :]:
            if p == q and interleave(pos[e[0]], pos[e[1]], pos[f[0]], pos[f[1]]):
                out.add(frozenset((e, f)))
    return out


# ---------------------------------------------------------------------------
# Checker
# ---------------------------------------------------------------------------


def test_cycle_in_spine_order_is_clean():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert check_book_embedding(g, BookEmbedding([0, 1, 2, 3], {e: "p1" for e in g.edges})).ok


def test_two_interleaving_edges_conflict():
    g = Graph.from_edges(4, [(0, 2), (1, 3)])
    rep = check_book_embedding(g, BookEmbedding([0, 1, 2, 3], {(0, 2): "p1", (1, 3): "p1"}))
    assert len(rep.conflicts) == 1
    c = rep.conflicts[0]
    assert {c.e, c.f} == {(0, 2), (1, 3)} and c.page == "p1"


def test_pipeline_output_for_small_extended_wheel_is_clean():
    emb = gen_extended_wheel(4)
    assert check_book_embedding(emb.graph, embed_3connected(emb)).ok


def test_coverage_errors():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    rep = check_book_embedding(g, BookEmbedding([0, 1, 1], {(0, 1): "p1", (0, 2): "p1"}))
    text = " ".join(rep.coverage)
    assert "twice" in text and "misses" in text and "non-edge" in text and "no page" in text
    assert not rep.ok


@pytest.mark.parametrize("n", [4, 5, 7])
def test_convex_complete_graph_has_one_conflict_per_four_vertices(n):
    g = Graph.from_edges(n, list(combinations(range(n), 2)))
    rep = check_book_embedding(g, BookEmbedding(list(range(n)), {e: "p1" for e in g.edges}))
    assert len(rep.conflicts) == comb(n, 4)
    assert all(not set(c.e) & set(c.f) for c in rep.conflicts)


@pytest.mark.parametrize("case", fault_cases(40, seed=5), ids=lambda c: c.fault)
def test_fast_checker_matches_bruteforce(case):
    fast = check_book_embedding(case.graph, case.book)
    slow = check_book_embedding_bruteforce(case.graph, case.book)
    assert fast.ok == slow.ok
    assert fast.pairs() == slow.pairs()
    assert fast.coverage == slow.coverage
    if not fast.coverage:
        assert fast.pairs() == naive_pairs(case.graph, case.book)


@settings(max_examples=80, deadline=None)
@given(st.integers(4, 14), st.integers(0, 10**6), st.integers(1, 3))
def test_checker_agrees_with_pairwise_definition(n, seed, k):
    rng = random.Random(seed)
    edges = {tuple(sorted(rng.sample(range(n), 2))) for _ in range(2 * n)}
    g = Graph.from_edges(n, edges)
    order = list(range(n))
    rng.shuffle(order)
    be = BookEmbedding(order, {e: f"p{rng.randint(1, k)}" for e in g.edges})
    assert check_book_embedding(g, be).pairs() == naive_pairs(g, be)


# ---------------------------------------------------------------------------
# Pages for a fixed order
# ---------------------------------------------------------------------------


def test_outerplanar_in_outer_cycle_order_needs_one_page():
    g = gen_cycle(7).graph
    assert is_outerplanar(g)
    assert min_pages_for_order(g, list(range(7)))[0] == 1
    fan = Graph.from_edges(6, [(i, i + 1) for i in range(5)] + [(0, i) for i in range(2, 6)])
    assert min_pages_for_order(fan, list(range(6)))[0] == 1


def test_planar_hamiltonian_in_cycle_order_needs_at_most_two():
    emb = gen_triangulation(12, seed=0)
    cyc = find_hamiltonian_cycle(emb)
    assert cyc is not None
    assert min_pages_for_order(emb.graph, cyc)[0] <= 2


def test_k5_fixed_order_matches_exhaustive_assignment():
    g = gen_k5().graph
    k, assign = min_pages_for_order(g, list(range(5)))
    assert k == pages_needed_bruteforce(g, list(range(5)))
    adj = conflict_graph(g, list(range(5)))
    for i, e in enumerate(g.edges):
        assert all(assign[e] != assign[g.edges[j]] for j in adj[i])


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 7), st.integers(0, 10**6))
def test_fixed_order_minimum_matches_bruteforce(n, seed):
    rng = random.Random(seed)
    edges = {tuple(sorted(rng.sample(range(n), 2))) for _ in range(n + 2)}
    g = Graph.from_edges(n, edges)
    order = list(range(n))
    rng.shuffle(order)
    assert min_pages_for_order(g, order)[0] == pages_needed_bruteforce(g, order)


# ---------------------------------------------------------------------------
# Exact book thickness
# ---------------------------------------------------------------------------


def test_k4_needs_two_pages():
    g = gen_k4().graph
    res = exact_book_thickness(g)
    assert res.pages == 2 == book_thickness_bruteforce(g)
    assert not is_outerplanar(g)
    assert check_book_embedding(g, res.witness).ok


def test_k5_needs_three_pages():
    g = gen_k5().graph
    res = exact_book_thickness(g)
    assert res.pages == 3 == book_thickness_bruteforce(g)
    assert check_book_embedding(g, res.witness).ok


@pytest.mark.parametrize("n", [3, 5, 8])
def test_cycles_need_one_page(n):
    g = gen_cycle(n).graph
    assert exact_book_thickness(g).pages == 1
    assert is_outerplanar(g)


def test_budget_exhaustion_reports_bounds():
    with pytest.raises(BudgetExhausted) as info:
        exact_book_thickness(gen_extended_wheel(4).graph, budget_nodes=50)
    assert info.value.lower >= 1


def test_thickness_result_json():
    res = exact_book_thickness(gen_k4().graph, graph_id="k4")
    js = res.to_json()
    assert js["graph"] == "k4" and js["pages"] == 2 and js["exact"] is True


def test_edge_count_lower_bound():
    assert edge_count_lower_bound(5, 10) == 3  # more than 3n-6 edges
    assert edge_count_lower_bound(4, 6) == 2
    assert edge_count_lower_bound(6, 5) == 1
    assert edge_count_lower_bound(10, 32) <= 4
