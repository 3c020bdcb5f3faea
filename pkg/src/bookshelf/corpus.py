"""The standard test corpus: named, deterministic 1-planar embeddings."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .generators import (
    gen_extended_wheel,
    gen_k4,
    gen_k5,
    gen_k6,
    gen_random_1planar,
    gen_separated,
    gen_triangulation,
)
from .graph import OnePlanarEmbedding

DENSITIES = (0.2, 0.5, 0.9)


@dataclass(frozen=True)
class CorpusItem:
    name: str
    make: Callable[[], OnePlanarEmbedding]


def _sizes(rng: random.Random, count: int, lo: int, hi: int) -> list[int]:
    """Log-uniform sizes in [lo, hi], always including both ends."""
    out = [lo, hi]
    while len(out) < count:
        out.append(int(round(lo * (hi / lo) ** rng.random())))
    return sorted(out)


def standard_corpus(seed: int = 0, random_count: int = 300, tri_count: int = 120, sep_count: int = 80) -> list[CorpusItem]:
    """XW_{2k} for k = 3..12, K4, K5, K6, random 1-planar graphs (n in [10, 500],
    three densities), planar triangulations and graphs with separation pairs."""
    rng = random.Random(seed)
    items = [CorpusItem(f"xw{2 * k}", lambda k=k: gen_extended_wheel(k)) for k in range(3, 13)]
    items += [CorpusItem("k4", gen_k4), CorpusItem("k5", gen_k5), CorpusItem("k6", gen_k6)]
    for i, n in enumerate(_sizes(rng, random_count, 10, 500)):
        d = DENSITIES[i % len(DENSITIES)]
        s = rng.randrange(1 << 30)
        items.append(CorpusItem(f"random-n{n}-d{d}-s{s}", lambda n=n, d=d, s=s: gen_random_1planar(n, d, s)))
    for n in _sizes(rng, tri_count, 4, 400):
        s = rng.randrange(1 << 30)
        items.append(CorpusItem(f"tri-n{n}-s{s}", lambda n=n, s=s: gen_triangulation(n, s)))
    for i, n in enumerate(_sizes(rng, sep_count, 12, 300)):
        pieces = 1 + i % 6
        d = DENSITIES[i % len(DENSITIES)]
        s = rng.randrange(1 << 30)
        items.append(
            CorpusItem(f"sep-n{n}-p{pieces}-d{d}-s{s}", lambda n=n, p=pieces, d=d, s=s: gen_separated(n, p, d, s))
        )
    return items


def iter_corpus(**kw) -> Iterator[tuple[str, OnePlanarEmbedding]]:
    for item in standard_corpus(**kw):
        yield item.name, item.make()
