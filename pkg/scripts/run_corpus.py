"""Embed the standard corpus in both modes and print one CSV row per input."""

from __future__ import annotations

import argparse
import csv
import sys
import time

from bookshelf.augment import normalize, separation_pairs
from bookshelf.corpus import iter_corpus
from bookshelf.pipeline import embed_3connected, embed_general
from bookshelf.verify import check_book_embedding


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["name", "n", "m", "general_pages", "3conn_pages", "conflicts", "seconds"])
    failures = 0
    for name, emb in iter_corpus(seed=args.seed):
        t = time.perf_counter()
        be = embed_general(emb, check=False)
        conflicts = len(check_book_embedding(emb.graph, be).conflicts)
        three = ""
        if not separation_pairs(normalize(emb, tags=False)[0]):
            be3 = embed_3connected(emb, check=False)
            conflicts += len(check_book_embedding(emb.graph, be3).conflicts)
            three = be3.page_count
        failures += conflicts > 0 or be.page_count > 16 or (three != "" and three > 14)
        out.writerow([name, emb.n, emb.m, be.page_count, three, conflicts, f"{time.perf_counter() - t:.3f}"])
    print(f"# {failures} failures", file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
