"""Independent book-embedding checker and exact page-number search.

Nothing here depends on how an embedding was produced: the checker only
looks at the spine order and the page labels, and the exact solver works on
the bare graph.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from .book import PAGE_LABELS, PAGE_RANK, BookEmbedding
from .graph import EmbeddingError, Graph, _norm

Edge = tuple[int, int]


# ---------------------------------------------------------------------------
# Conflict checker
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Conflict:
    e: Edge
    f: Edge
    page: str
    positions: tuple[int, int, int, int]  # pos(a) < pos(c) < pos(b) < pos(d)


@dataclass
class ConflictReport:
    conflicts: list[Conflict] = field(default_factory=list)
    coverage: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.conflicts and not self.coverage

    def __bool__(self) -> bool:
        return self.ok

    def pairs(self) -> set[frozenset[Edge]]:
        return {frozenset((c.e, c.f)) for c in self.conflicts}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "conflicts": [
                {"e": list(c.e), "f": list(c.f), "page": c.page, "positions": list(c.positions)}
                for c in self.conflicts
            ],
            "coverage": list(self.coverage),
        }


def _coverage(g: Graph, be: BookEmbedding) -> tuple[list[str], dict[int, int] | None]:
    errs = []
    pos: dict[int, int] = {}
    for i, v in enumerate(be.order):
        if v in pos:
            errs.append(f"vertex {v} appears twice in the order")
        pos[v] = i
    missing = [v for v in range(g.n) if v not in pos]
    extra = [v for v in pos if not 0 <= v < g.n]
    if missing:
        errs.append(f"order misses vertices {missing[:10]}")
    if extra:
        errs.append(f"order has unknown vertices {extra[:10]}")
    for e in be.duplicates:
        errs.append(f"edge {e} assigned more than once")
    eset = g.edge_set
    for e in g.edges:
        if e not in be.pages:
            errs.append(f"edge {e} has no page")
    for e in be.pages:
        if _norm(*e) not in eset:
            errs.append(f"page assignment for non-edge {e}")
    usable = not missing and not extra and len(pos) == len(be.order)
    return errs, (pos if usable else None)


def _page_intervals(g: Graph, be: BookEmbedding, pos: dict[int, int]):
    by_page: dict[str, list[tuple[int, int, Edge]]] = {}
    for e, p in be.pages.items():
        if _norm(*e) not in g.edge_set:
            continue
        a, b = pos[e[0]], pos[e[1]]
        if a > b:
            a, b = b, a
        by_page.setdefault(p, []).append((a, b, _norm(*e)))
    return by_page


def _page_is_clean(iv: list[tuple[int, int, Edge]]) -> bool:
    """Stack sweep: a page is conflict-free iff its intervals are laminar."""
    stack: list[int] = []
    for left, right, _ in sorted(iv, key=lambda t: (t[0], -t[1])):
        while stack and stack[-1] <= left:
            stack.pop()
        if stack and stack[-1] < right:
            return False
        stack.append(right)
    return True


def _page_conflicts(iv: list[tuple[int, int, Edge]], page: str) -> list[Conflict]:
    """All interleaving pairs on one page, output-sensitive.

    Intervals sorted by left end sit in a max-segment-tree over right ends;
    for (l, r) we descend into the slice with left in (l, r) and report every
    leaf whose right end exceeds r.
    """
    iv = sorted(iv)
    lefts = [t[0] for t in iv]
    size = 1
    while size < len(iv):
        size *= 2
    tree = [-1] * (2 * size)
    for i, t in enumerate(iv):
        tree[size + i] = t[1]
    for i in range(size - 1, 0, -1):
        tree[i] = max(tree[2 * i], tree[2 * i + 1])
    from bisect import bisect_left, bisect_right

    out = []
    for a, b, e in iv:
        lo, hi = bisect_right(lefts, a), bisect_left(lefts, b)
        if lo >= hi:
            continue
        stack = [(1, 0, size)]
        while stack:
            node, nl, nr = stack.pop()
            if nr <= lo or nl >= hi or tree[node] <= b:
                continue
            if node >= size:
                c, d, f = iv[node - size]
                out.append(Conflict(e, f, page, (a, c, b, d)))
                continue
            mid = (nl + nr) // 2
            stack.append((2 * node + 1, mid, nr))
            stack.append((2 * node, nl, mid))
    return out


def check_book_embedding(g: Graph, be: BookEmbedding) -> ConflictReport:
    errs, pos = _coverage(g, be)
    rep = ConflictReport(coverage=errs)
    if pos is None:
        return rep
    for page, iv in sorted(_page_intervals(g, be, pos).items(), key=lambda t: PAGE_RANK.get(t[0], 99)):
        if not _page_is_clean(iv):
            rep.conflicts.extend(_page_conflicts(iv, page))
    return rep


def check_book_embedding_bruteforce(g: Graph, be: BookEmbedding) -> ConflictReport:
    """Pairwise definition, O(m^2); the reference for the sweep above."""
    errs, pos = _coverage(g, be)
    rep = ConflictReport(coverage=errs)
    if pos is None:
        return rep
    items = []
    for e, p in be.pages.items():
        e = _norm(*e)
        if e in g.edge_set:
            a, b = sorted((pos[e[0]], pos[e[1]]))
            items.append((a, b, e, p))
    items.sort()
    for i, (a, b, e, p) in enumerate(items):
        for c, d, f, q in items[i + 1 :]:
            if p == q and a < c < b < d:
                rep.conflicts.append(Conflict(e, f, p, (a, c, b, d)))
    return rep


# ---------------------------------------------------------------------------
# Minimum pages for a fixed order (circle-graph colouring)
# ---------------------------------------------------------------------------


def conflict_graph(g: Graph, order) -> list[set[int]]:
    pos = {v: i for i, v in enumerate(order)}
    iv = [tuple(sorted((pos[u], pos[v]))) for u, v in g.edges]
    adj: list[set[int]] = [set() for _ in iv]
    for i, (a, b) in enumerate(iv):
        for j in range(i + 1, len(iv)):
            c, d = iv[j]
            if a < c < b < d or c < a < d < b:
                adj[i].add(j)
                adj[j].add(i)
    return adj


def _greedy_clique(adj: list[set[int]]) -> list[int]:
    best: list[int] = []
    for s in sorted(range(len(adj)), key=lambda v: -len(adj[v])):
        clique = [s]
        cand = set(adj[s])
        while cand:
            v = max(cand, key=lambda w: len(adj[w] & cand))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _dsatur_colour(adj: list[set[int]], limit: int | None = None) -> list[int] | None:
    """Exact DSATUR branch and bound; returns an optimal colouring.

    With ``limit`` set, returns a colouring with fewer than ``limit`` colours
    or None if none exists.
    """
    n = len(adj)
    if n == 0:
        return []
    clique = _greedy_clique(adj)
    lower = len(clique)
    best: list[int] | None = None
    best_k = limit if limit is not None else n + 1
    colour = [-1] * n
    for i, v in enumerate(clique):
        colour[v] = i

    def pick() -> int:
        top, key = -1, (-1, -1)
        for v in range(n):
            if colour[v] < 0:
                sat = len({colour[w] for w in adj[v] if colour[w] >= 0})
                k = (sat, len(adj[v]))
                if k > key:
                    top, key = v, k
        return top

    def rec(used: int, left: int) -> bool:
        nonlocal best, best_k
        if left == 0:
            best, best_k = list(colour), used
            return best_k <= lower
        v = pick()
        taken = {colour[w] for w in adj[v] if colour[w] >= 0}
        for c in range(min(used + 1, best_k - 1)):
            if c in taken:
                continue
            colour[v] = c
            if rec(max(used, c + 1), left - 1):
                return True
            colour[v] = -1
        return False

    rec(len(clique), n - len(clique))
    return best


def min_pages_for_order(g: Graph, order) -> tuple[int, dict[Edge, int]]:
    adj = conflict_graph(g, order)
    col = _dsatur_colour(adj)
    assert col is not None
    k = max(col, default=-1) + 1
    return k, {e: col[i] for i, e in enumerate(g.edges)}


# ---------------------------------------------------------------------------
# Exact book thickness
# ---------------------------------------------------------------------------


class BudgetExhausted(EmbeddingError):
    def __init__(self, lower: int, upper: int | None, nodes: int, seconds: float):
        self.lower, self.upper, self.nodes, self.seconds = lower, upper, nodes, seconds
        super().__init__(
            f"search budget exhausted: page number in [{lower}, {upper if upper is not None else '?'}]"
        )


@dataclass
class ThicknessResult:
    graph_id: str
    pages: int
    witness: BookEmbedding
    nodes: int
    seconds: float
    exact: bool = True

    def to_json(self) -> dict:
        from .formats import book_to_json

        return {
            "graph": self.graph_id,
            "pages": self.pages,
            "exact": self.exact,
            "witness": book_to_json(self.witness),
            "nodes": self.nodes,
            "seconds": round(self.seconds, 3),
        }


class _Budget:
    def __init__(self, nodes: int | None, secs: float | None):
        self.max_nodes, self.max_secs = nodes, secs
        self.nodes = 0
        self.start = time.perf_counter()

    def tick(self) -> bool:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            return False
        if self.max_secs is not None and self.nodes % 512 == 0:
            return time.perf_counter() - self.start <= self.max_secs
        return True


class _OutOfBudget(Exception):
    pass


def _k_page_search(g: Graph, k: int, budget: _Budget) -> tuple[list[int], dict[Edge, int]] | None:
    """Depth-first search over spine orders with incremental page assignment.

    Vertices are appended one at a time.  When q is appended, each edge to
    an earlier vertex p needs a page on which p is not strictly covered by an
    earlier edge; an edge (p, q) on page X then covers everything placed
    after p on X.  So per page only the set of still-usable active vertices
    (placed, with unplaced neighbours) matters, cut back to the leftmost
    endpoint used on that page.  Failed states are memoised with pages
    treated as interchangeable.
    """
    n = g.n
    adj = g.adjacency
    nbr_mask = [0] * n
    for v in range(n):
        for w in adj[v]:
            nbr_mask[v] |= 1 << w
    failed: set = set()
    order: list[int] = []
    assign: dict[Edge, int] = {}

    def children(placed: int, active: list[int], usable: list[int], q: int):
        """Pareto-maximal page cuts for appending q."""
        back = [i for i, v in enumerate(active) if nbr_mask[q] >> v & 1]
        opts = []
        for X in range(k):
            opts.append([None] + [i for i in back if usable[X] >> i & 1])
        results = []
        for cuts in product(*opts):
            ok = True
            for b in back:
                if not any(c is not None and c <= b and usable[X] >> b & 1 for X, c in enumerate(cuts)):
                    ok = False
                    break
            if ok:
                results.append(cuts)
        # keep only cut vectors not dominated by a componentwise larger one
        def dominates(x, y):
            return x != y and all((a is None) or (b is not None and a >= b) for a, b in zip(x, y))

        return [c for c in results if not any(dominates(o, c) for o in results)], back

    def pages_for(back: list[int], usable: list[int], cuts) -> list[int]:
        out = []
        for b in back:
            for X, c in enumerate(cuts):
                if c is not None and c <= b and usable[X] >> b & 1:
                    out.append(X)
                    break
        return out

    def rec(placed: int, active: list[int], usable: list[int]) -> bool:
        if placed == (1 << n) - 1:
            return True
        key = (placed, tuple(active), tuple(sorted(usable)))
        if key in failed:
            return False
        if not budget.tick():
            raise _OutOfBudget
        cands = [q for q in range(n) if not placed >> q & 1]
        if n > 2 and (placed >> 1 & 1) == 0:
            cands = [q for q in cands if q != n - 1]
        cands.sort(key=lambda q: -bin(nbr_mask[q] & placed).count("1"))
        for q in cands:
            options, back = children(placed, active, usable, q)
            new_placed = placed | 1 << q
            for cuts in options:
                new_usable = []
                for X, c in enumerate(cuts):
                    u = usable[X]
                    if c is not None:
                        u &= (1 << (c + 1)) - 1
                    new_usable.append(u | 1 << len(active))
                seq = active + [q]
                keep = [i for i, v in enumerate(seq) if nbr_mask[v] & ~new_placed]
                remap = {old: new for new, old in enumerate(keep)}
                comp = []
                for u in new_usable:
                    cu = 0
                    for old, new in remap.items():
                        if u >> old & 1:
                            cu |= 1 << new
                    comp.append(cu)
                order.append(q)
                pg = pages_for(back, usable, cuts)
                for b, X in zip(back, pg):
                    assign[_norm(active[b], q)] = X
                if rec(new_placed, [seq[i] for i in keep], comp):
                    return True
                order.pop()
        failed.add(key)
        return False

    if n == 0:
        return [], {}
    placed0 = 1
    active0 = [0] if nbr_mask[0] else []
    usable0 = [1 if active0 else 0] * k
    order.append(0)
    if rec(placed0, active0, usable0):
        return list(order), dict(assign)
    return None


def _witness(order: list[int], assign: dict[Edge, int], prov: str) -> BookEmbedding:
    pages = {e: PAGE_LABELS[x] for e, x in assign.items()}
    return BookEmbedding(list(order), pages, {e: prov for e in pages})


def exact_book_thickness(
    g: Graph,
    max_k: int = 8,
    budget_nodes: int | None = None,
    budget_secs: float | None = None,
    graph_id: str = "",
) -> ThicknessResult:
    """Smallest k with a k-page book embedding, by exhaustive search over orders.

    Vertex 0 is pinned first (cyclic shifts preserve conflicts) and vertex 1
    must precede vertex n-1 (reversal symmetry).
    """
    budget = _Budget(budget_nodes, budget_secs)
    if g.m == 0:
        be = BookEmbedding(list(range(g.n)), {})
        return ThicknessResult(graph_id, 0, be, 0, 0.0)
    upper = None
    for k in range(1, max_k + 1):
        try:
            found = _k_page_search(g, k, budget)
        except _OutOfBudget:
            raise BudgetExhausted(k, upper, budget.nodes, time.perf_counter() - budget.start) from None
        if found is not None:
            order, assign = found
            be = _witness(order, assign, "exact-search")
            rep = check_book_embedding(g, be)
            if not rep.ok:  # pragma: no cover - would be a solver bug
                raise AssertionError(f"solver witness fails the checker: {rep.to_json()}")
            return ThicknessResult(graph_id, k, be, budget.nodes, time.perf_counter() - budget.start)
    raise BudgetExhausted(max_k + 1, upper, budget.nodes, time.perf_counter() - budget.start)


def edge_count_lower_bound(n: int, m: int) -> int:
    """Smallest k with m <= (k+1)n - 3k, the edge bound for k-page graphs."""
    if m == 0:
        return 0
    k = 1
    while n >= 3 and m > (k + 1) * n - 3 * k:
        k += 1
    return k
