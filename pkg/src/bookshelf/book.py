"""Book embeddings: a spine order plus a labelled page per edge."""

from __future__ import annotations

from dataclasses import dataclass, field

# Fixed lane order used for rendering and for sorting reports.
PAGE_LABELS: tuple[str, ...] = (
    "p1", "p2", "p3", "p4", "p5", "p6",
    "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8",
    "q1", "q2",
)  # fmt: skip
PAGE_RANK = {p: i for i, p in enumerate(PAGE_LABELS)}


@dataclass
class BookEmbedding:
    order: list[int]
    pages: dict[tuple[int, int], str]
    provenance: dict[tuple[int, int], str] = field(default_factory=dict)
    # edges listed more than once by an external source (kept for the checker)
    duplicates: list[tuple[int, int]] = field(default_factory=list)

    @property
    def page_count(self) -> int:
        return len(set(self.pages.values()))

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def used_pages(self) -> list[str]:
        return sorted(set(self.pages.values()), key=lambda p: PAGE_RANK.get(p, len(PAGE_RANK)))
