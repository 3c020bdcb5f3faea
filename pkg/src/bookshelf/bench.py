"""Scaling benchmark of the general embedder."""

from __future__ import annotations

import csv
import gc
import io
import statistics
import time
from dataclasses import dataclass

from .generators import gen_extended_wheel, gen_random_1planar
from .graph import OnePlanarEmbedding
from .pipeline import embed_general

FAMILIES = ("xw", "random")


@dataclass
class BenchRow:
    family: str
    n: int
    m: int
    seconds: float  # median over the timed runs
    ratio: float | None  # seconds / seconds of the previous row


def make_instance(family: str, n: int, seed: int = 0) -> OnePlanarEmbedding:
    if family == "xw":
        return gen_extended_wheel(max(3, (n - 2) // 2))
    if family == "random":
        return gen_random_1planar(n, 0.5, seed)
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")


def time_once(emb: OnePlanarEmbedding) -> float:
    """Wall time of one embed_general call with the cyclic GC paused."""
    gc.collect()
    gc.disable()
    try:
        t = time.perf_counter()
        embed_general(emb)
        return time.perf_counter() - t
    finally:
        gc.enable()


def bench_scaling(family: str, sizes, runs: int = 5, seed: int = 0) -> list[BenchRow]:
    """Median of ``runs`` timed calls per size after one warm-up call."""
    rows: list[BenchRow] = []
    for n in sorted(sizes):
        emb = make_instance(family, n, seed)
        embed_general(emb)
        med = statistics.median(time_once(emb) for _ in range(max(1, runs)))
        ratio = med / rows[-1].seconds if rows and rows[-1].seconds > 0 else None
        rows.append(BenchRow(family, emb.n, emb.m, med, ratio))
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "n", "m", "seconds", "doubling_ratio"])
    for r in rows:
        w.writerow([r.family, r.n, r.m, f"{r.seconds:.4f}", "" if r.ratio is None else f"{r.ratio:.3f}"])
    return buf.getvalue()
