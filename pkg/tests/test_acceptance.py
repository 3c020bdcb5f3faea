"""Acceptance criteria; each test prints one PASS/FAIL line (see the summary)."""

from __future__ import annotations

import json
import random
import time

import pytest

from bookshelf.augment import normalize, separation_pairs
from bookshelf.bench import bench_scaling
from bookshelf.cli import run_cli
from bookshelf.corpus import iter_corpus
from bookshelf.formats import dumps_embedding
from bookshelf.generators import gen_cycle, gen_extended_wheel, gen_k4, gen_k5, gen_random_1planar
from bookshelf.pipeline import embed_3connected, embed_general, embed_hamiltonian, find_hamiltonian_cycle
from bookshelf.verify import check_book_embedding, check_book_embedding_bruteforce, exact_book_thickness
from faults import fault_cases
from oracles import book_thickness_bruteforce, is_outerplanar, is_planar
from structure import structure_report


@pytest.fixture(scope="module")
def corpus():
    return list(iter_corpus())


# ---------------------------------------------------------------------------
# Page bounds
# ---------------------------------------------------------------------------


def test_page_bounds_on_corpus(corpus, acceptance):
    bad: list[str] = []
    worst_general = worst_3conn = three_conn = 0
    elapsed = 0.0
    for name, emb in corpus:
        t = time.perf_counter()
        be = embed_general(emb, check=False)
        elapsed += time.perf_counter() - t
        rep = check_book_embedding(emb.graph, be)
        worst_general = max(worst_general, be.page_count)
        if not rep.ok or be.page_count > 16:
            bad.append(f"{name} general {be.page_count} pages, {len(rep.conflicts)} conflicts")
        if not separation_pairs(normalize(emb, tags=False)[0]):
            three_conn += 1
            t = time.perf_counter()
            be3 = embed_3connected(emb, check=False)
            elapsed += time.perf_counter() - t
            rep3 = check_book_embedding(emb.graph, be3)
            worst_3conn = max(worst_3conn, be3.page_count)
            if not rep3.ok or be3.page_count > 14:
                bad.append(f"{name} 3conn {be3.page_count} pages, {len(rep3.conflicts)} conflicts")
    ok = len(corpus) >= 500 and not bad and elapsed < 60
    acceptance(
        "page bounds",
        ok,
        f"{len(corpus)} inputs ({three_conn} 3-connected), max {worst_general} pages general / "
        f"{worst_3conn} 3conn, {len(bad)} failures, embedding time {elapsed:.1f}s",
    )
    assert ok, bad[:5]


# ---------------------------------------------------------------------------
# Extended wheel lower bound
# ---------------------------------------------------------------------------


@pytest.mark.slow
def test_extended_wheel_eight_needs_four_pages(acceptance):
    g = gen_extended_wheel(4).graph
    res = exact_book_thickness(g, budget_secs=600)
    ok = res.pages == 4 and check_book_embedding(g, res.witness).ok and res.seconds <= 600
    acceptance("XW_8 exact thickness", ok, f"{res.pages} pages, {res.nodes} nodes, {res.seconds:.0f}s")
    assert ok


@pytest.mark.stretch
@pytest.mark.parametrize("k", [5, 6])
def test_larger_extended_wheels_need_four_pages(k, acceptance):
    g = gen_extended_wheel(k).graph
    res = exact_book_thickness(g)
    acceptance(f"XW_{2 * k} exact thickness (stretch)", res.pages == 4, f"{res.pages} pages, {res.seconds:.0f}s")
    assert res.pages == 4


# ---------------------------------------------------------------------------
# Hamiltonian skeletons
# ---------------------------------------------------------------------------


def test_hamiltonian_mode_within_four_pages(tmp_path, capsys, acceptance):
    rng = random.Random(17)
    done = worst = 0
    bad = []
    tries = 0
    while done < 60 and tries < 400:
        tries += 1
        n = rng.randint(6, 20)
        emb = gen_random_1planar(n, rng.choice((0.3, 0.6, 0.9)), rng.randrange(1 << 30))
        cyc = find_hamiltonian_cycle(emb)
        if cyc is None:
            continue
        src, cyc_file = tmp_path / "in.txt", tmp_path / "cycle.txt"
        src.write_text(dumps_embedding(emb))
        cyc_file.write_text(" ".join(map(str, cyc)))
        code = run_cli(["embed", str(src), "--mode", "hamiltonian", "--cycle", str(cyc_file), "--format", "json"])
        out, err = capsys.readouterr()
        if code != 0:
            bad.append(f"n={n}: exit {code} {err.strip()}")
            continue
        book = json.loads(out)
        be = embed_hamiltonian(emb, cyc, check=False)
        rep = check_book_embedding(emb.graph, be)
        worst = max(worst, book["page_count"])
        if not rep.ok or book["page_count"] > 4 or book["order"] != cyc:
            bad.append(f"n={n}: {book['page_count']} pages, {len(rep.conflicts)} conflicts")
        done += 1
    ok = done >= 50 and not bad
    acceptance("Hamiltonian skeleton 4 pages", ok, f"{done} instances, max {worst} pages, {len(bad)} failures")
    assert ok, bad[:5]


# ---------------------------------------------------------------------------
# Linear time
# ---------------------------------------------------------------------------


@pytest.mark.slow
def test_extended_wheel_doubling_ratios(acceptance):
    rows = bench_scaling("xw", [10_000, 20_000, 40_000, 80_000])
    ratios = [r.ratio for r in rows[1:]]
    ok = all(r <= 2.5 for r in ratios)
    times = ", ".join(f"n={r.n} {r.seconds:.2f}s" for r in rows)
    acceptance("linear-time doubling ratios", ok, f"ratios {', '.join(f'{r:.2f}' for r in ratios)} ({times})")
    assert ok


# ---------------------------------------------------------------------------
# Checker equivalence
# ---------------------------------------------------------------------------


def test_fast_checker_equals_bruteforce(acceptance):
    cases = fault_cases(200, seed=2024)
    disagree = []
    faulty = 0
    for i, c in enumerate(cases):
        fast = check_book_embedding(c.graph, c.book)
        slow = check_book_embedding_bruteforce(c.graph, c.book)
        faulty += not slow.ok
        if fast.ok != slow.ok or fast.pairs() != slow.pairs() or fast.coverage != slow.coverage:
            disagree.append(f"case {i} ({c.fault})")
    ok = not disagree and len(cases) == 200
    acceptance(
        "checker equivalence",
        ok,
        f"{len(cases) - len(disagree)}/{len(cases)} agree ({faulty} with faults detected)",
    )
    assert ok, disagree[:5]


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------


def test_structural_invariants(corpus, acceptance):
    counts = dict.fromkeys(("k4", "faces", "cactus", "levels", "cycle span", "interior span"), 0)
    literal = regions = faces_checked = 0
    failures = []
    for name, emb in corpus:
        r = structure_report(emb)
        regions += r.regions
        literal += r.literal_span_violations
        faces_checked += r.faces_ok is not None
        for key, val in (
            ("k4", r.k4_induced),
            ("faces", r.faces_ok is not False),
            ("cactus", r.cactus_ok),
            ("levels", r.level_gap_ok),
            ("cycle span", r.cycle_span_ok),
            ("interior span", r.interior_span_ok),
        ):
            if not val:
                counts[key] += 1
                failures.append(f"{name}: {key} {r.problems[:1]}")
    n = len(corpus)
    acceptance("K4 induction", counts["k4"] == 0, f"{n - counts['k4']}/{n}")
    acceptance("inner faces 3/4-gons", counts["faces"] == 0, f"{faces_checked - counts['faces']}/{faces_checked} 3-connected")
    acceptance("cactus blocks", counts["cactus"] == 0, f"{n - counts['cactus']}/{n}")
    acceptance("level gap at most 1", counts["levels"] == 0, f"{n - counts['levels']}/{n}")
    acceptance(
        "cycle interior contiguity",
        counts["cycle span"] == counts["interior span"] == 0,
        f"{n - max(counts['cycle span'], counts['interior span'])}/{n} inputs, {regions} regions",
    )
    acceptance(
        "cycle interior contiguity, strict reading",
        None,
        f"{literal}/{regions} regions have a vertex of the enclosing level inside the interior's span",
    )
    assert not failures, failures[:5]


# ---------------------------------------------------------------------------
# Small graphs
# ---------------------------------------------------------------------------


def characterization_lower_bound(g) -> int:
    """One page only for outerplanar graphs, two pages only for planar ones."""
    if is_outerplanar(g):
        return 1
    return 2 if is_planar(g) else 3


def test_small_graph_exact_values(acceptance):
    cases = [("K4", gen_k4(), 2), ("K5", gen_k5(), 3)] + [(f"C{n}", gen_cycle(n), 1) for n in (3, 5, 8)]
    notes = []
    ok = True
    for name, emb, want in cases:
        g = emb.graph
        exact = exact_book_thickness(g).pages
        brute = book_thickness_bruteforce(g) if g.n <= 8 else exact
        char_ok = exact >= characterization_lower_bound(g)
        char_ok &= (exact == 1) == is_outerplanar(g)
        if is_planar(g) and not emb.crossings and find_hamiltonian_cycle(emb) is not None:
            char_ok &= exact <= 2
        pipe = embed_general(emb).page_count
        good = exact == want == brute and char_ok and pipe >= exact
        ok &= good
        notes.append(f"{name}={exact} (pipeline {pipe})")
    acceptance("small-graph exact values", ok, ", ".join(notes))
    assert ok
