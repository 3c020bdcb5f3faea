"""Text and JSON encodings of embeddings and book embeddings.

Text embedding format (one item per line, single spaces)::

    bookshelf-embedding v1
    n m c
    u v                      # m edge lines, edge index = line number
    e1 e2                    # c crossing lines, dummy id = n + line number
    tok tok ...              # n + c rotation lines, counter-clockwise
    outer u v                # a dart whose left face is the outer face

A rotation token is ``e`` for a whole (uncrossed) edge and ``e@w`` for the
half of crossed edge ``e`` whose real endpoint is ``w``.  On a real vertex
``v`` that half is always ``e@v``; on a dummy it names the neighbour.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .book import BookEmbedding
from .graph import EmbeddingError, OnePlanarEmbedding, _norm

EMBED_TAG = "bookshelf-embedding"
BOOK_TAG = "bookshelf-book"
VERSION = 1


class FormatError(EmbeddingError):
    pass


# ---------------------------------------------------------------------------
# Embedding text format
# ---------------------------------------------------------------------------


def embedding_to_text(emb: OnePlanarEmbedding) -> str:
    n = emb.n
    idx = emb.edge_index
    lines = [f"{EMBED_TAG} v{VERSION}", f"{n} {emb.m} {len(emb.crossings)}"]
    lines += [f"{u} {v}" for u, v in emb.edges]
    lines += [f"{a} {b}" for a, b in emb.crossings]
    dummy_half: dict[tuple[int, int], int] = {}
    for k, (a, b) in enumerate(emb.crossings):
        for e in (a, b):
            for w in emb.edges[e]:
                dummy_half[(n + k, w)] = e
    for v, rot in enumerate(emb.rotation):
        toks = []
        for w in rot:
            if v < n and w < n:
                toks.append(str(idx[_norm(v, w)]))
            elif v < n:
                e = next(e for e in emb.crossings[w - n] if v in emb.edges[e])
                toks.append(f"{e}@{v}")
            else:
                toks.append(f"{dummy_half[(v, w)]}@{w}")
        lines.append(" ".join(toks))
    lines.append(f"outer {emb.outer[0]} {emb.outer[1]}")
    return "\n".join(lines) + "\n"


def _ints(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"line {lineno}: expected {count} integers")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers") from None


def embedding_from_text(text: str) -> OnePlanarEmbedding:
    lines = text.splitlines()
    if not lines or lines[0].strip() != f"{EMBED_TAG} v{VERSION}":
        raise FormatError(f"missing format tag '{EMBED_TAG} v{VERSION}'")
    pos = 1

    def take() -> tuple[str, int]:
        nonlocal pos
        if pos >= len(lines):
            raise FormatError("unexpected end of input")
        pos += 1
        return lines[pos - 1], pos

    line, ln = take()
    n, m, c = _ints(line, 3, ln)
    if min(n, m, c) < 0:
        raise FormatError("negative counts")
    edges = []
    for _ in range(m):
        line, ln = take()
        u, v = _ints(line, 2, ln)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {ln}: endpoint out of range")
        edges.append((u, v))
    crossings = []
    for _ in range(c):
        line, ln = take()
        a, b = _ints(line, 2, ln)
        if not (0 <= a < m and 0 <= b < m):
            raise FormatError(f"line {ln}: edge index out of range")
        crossings.append((a, b))
    dummy_of = {}
    for k, (a, b) in enumerate(crossings):
        dummy_of[a] = dummy_of[b] = n + k
    rotation = []
    for v in range(n + c):
        line, ln = take()
        rot = []
        for tok in line.split():
            e_s, at, w_s = tok.partition("@")
            try:
                e = int(e_s)
                w = int(w_s) if at else None
            except ValueError:
                raise FormatError(f"line {ln}: bad token {tok!r}") from None
            if not 0 <= e < m:
                raise FormatError(f"line {ln}: edge index out of range")
            a, b = edges[e]
            if w is None:
                if v not in (a, b):
                    raise FormatError(f"line {ln}: edge {e} not incident to {v}")
                rot.append(b if v == a else a)
            else:
                if e not in dummy_of or w not in (a, b):
                    raise FormatError(f"line {ln}: bad half-edge {tok!r}")
                if v == w:
                    rot.append(dummy_of[e])
                elif v == dummy_of[e]:
                    rot.append(w)
                else:
                    raise FormatError(f"line {ln}: half-edge {tok!r} not incident to {v}")
        rotation.append(tuple(rot))
    line, ln = take()
    parts = line.split()
    if len(parts) != 3 or parts[0] != "outer":
        raise FormatError(f"line {ln}: expected 'outer u v'")
    u, v = _ints(" ".join(parts[1:]), 2, ln)
    if any(x.strip() for x in lines[pos:]):
        raise FormatError("trailing content after outer line")
    return OnePlanarEmbedding(n, tuple(edges), tuple(crossings), tuple(rotation), (u, v))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def embedding_to_json(emb: OnePlanarEmbedding) -> dict:
    return {
        "format": EMBED_TAG,
        "version": VERSION,
        "n": emb.n,
        "edges": [list(e) for e in emb.edges],
        "crossings": [list(c) for c in emb.crossings],
        "rotation": [list(r) for r in emb.rotation],
        "outer": list(emb.outer),
    }


def embedding_from_json(obj: dict) -> OnePlanarEmbedding:
    if obj.get("format") != EMBED_TAG or obj.get("version") != VERSION:
        raise FormatError(f"expected {EMBED_TAG} version {VERSION}")
    try:
        return OnePlanarEmbedding(
            int(obj["n"]),
            tuple((int(u), int(v)) for u, v in obj["edges"]),
            tuple((int(a), int(b)) for a, b in obj["crossings"]),
            tuple(tuple(int(w) for w in r) for r in obj["rotation"]),
            (int(obj["outer"][0]), int(obj["outer"][1])),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"malformed embedding JSON: {exc}") from None


def book_to_json(be: BookEmbedding) -> dict:
    keys = sorted(be.pages)
    return {
        "format": BOOK_TAG,
        "version": VERSION,
        "order": list(be.order),
        "pages": [[u, v, be.pages[(u, v)]] for u, v in keys],
        "page_count": be.page_count,
        "provenance": [[u, v, be.provenance[(u, v)]] for u, v in keys if (u, v) in be.provenance],
    }


def book_from_json(obj: dict) -> BookEmbedding:
    if obj.get("format") != BOOK_TAG or obj.get("version") != VERSION:
        raise FormatError(f"expected {BOOK_TAG} version {VERSION}")
    try:
        pages: dict[tuple[int, int], str] = {}
        dups = []
        for u, v, p in obj["pages"]:
            e = _norm(int(u), int(v))
            if e in pages:
                dups.append(e)
            pages[e] = str(p)
        prov = {_norm(int(u), int(v)): str(t) for u, v, t in obj.get("provenance", [])}
        return BookEmbedding([int(v) for v in obj["order"]], pages, prov, dups)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed book JSON: {exc}") from None


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def atomic_write(path: str | os.PathLike, data: str) -> None:
    """Write via a temp file in the target directory, then rename over it."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps_embedding(emb: OnePlanarEmbedding, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(embedding_to_json(emb)) + "\n"
    return embedding_to_text(emb)


def loads_embedding(data: str) -> OnePlanarEmbedding:
    """Parse either encoding, sniffing JSON by its leading brace."""
    if data.lstrip().startswith("{"):
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from None
        return embedding_from_json(obj)
    return embedding_from_text(data)
