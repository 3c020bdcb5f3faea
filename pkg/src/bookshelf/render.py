"""SVG arc diagrams of book embeddings, one horizontal lane per page."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .book import BookEmbedding
from .graph import EmbeddingError, Graph, _norm
from .verify import check_book_embedding

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173", "#3182bd",
)  # fmt: skip
CONFLICT_COLOUR = "#e00000"


class UnverifiedEmbedding(EmbeddingError):
    pass


@dataclass
class RenderSpec:
    spacing: float = 24.0  # spine distance between consecutive vertices
    lane_height: float | None = None  # default: tallest arc of any lane
    margin: float = 20.0
    legend_width: float = 260.0
    labels: bool = True


def _provenance_summary(be: BookEmbedding, page: str, top: int = 3) -> str:
    tags = Counter(
        be.provenance.get(e, "").split(":")[1] if be.provenance.get(e, "").count(":") else be.provenance.get(e, "")
        for e, p in be.pages.items()
        if p == page
    )
    return ", ".join(f"{t or '?'} x{c}" for t, c in tags.most_common(top))


def render_arc_diagram(g: Graph, be: BookEmbedding, spec: RenderSpec | None = None, *, force: bool = False) -> str:
    """Deterministic SVG document; refuses invalid embeddings unless ``force``.

    With ``force`` the conflicting edges are drawn in red and dashed.
    """
    spec = spec or RenderSpec()
    rep = check_book_embedding(g, be)
    if not rep.ok and not force:
        first = rep.conflicts[0] if rep.conflicts else None
        why = f"{first.e} x {first.f} on {first.page}" if first else rep.coverage[0]
        raise UnverifiedEmbedding(f"refusing to draw an invalid embedding ({why}); use force to override")
    bad = {c.e for c in rep.conflicts} | {c.f for c in rep.conflicts}
    pos = be.position()
    lanes = be.used_pages()
    span = {p: 0 for p in lanes}
    for e, p in be.pages.items():
        if e[0] in pos and e[1] in pos:
            span[p] = max(span[p], abs(pos[e[0]] - pos[e[1]]))
    width = spec.margin * 2 + max(len(be.order) - 1, 1) * spec.spacing
    heights = {p: spec.lane_height or max(span[p] * spec.spacing / 2, spec.spacing) + spec.spacing for p in lanes}
    total_h = spec.margin * 2 + sum(heights.values())
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + spec.legend_width:.0f}" '
        f'height="{total_h:.0f}" font-family="monospace" font-size="10">',
        f'<rect width="100%" height="100%" fill="white"/>',
    ]
    y0 = spec.margin
    for lane, p in enumerate(lanes):
        colour = PALETTE[lane % len(PALETTE)]
        base = y0 + heights[p]
        out.append(f'<g id="page-{escape(p)}">')
        out.append(
            f'<line x1="{spec.margin}" y1="{base:.1f}" x2="{width - spec.margin:.1f}" y2="{base:.1f}" stroke="#aaa"/>'
        )
        for e in sorted(x for x, q in be.pages.items() if q == p):
            if e[0] not in pos or e[1] not in pos:
                continue
            a, b = sorted((pos[e[0]], pos[e[1]]))
            x1 = spec.margin + a * spec.spacing
            x2 = spec.margin + b * spec.spacing
            r = (x2 - x1) / 2
            hit = _norm(*e) in bad
            stroke = CONFLICT_COLOUR if hit else colour
            dash = ' stroke-dasharray="4 2"' if hit else ""
            out.append(
                f'<path d="M {x1:.1f} {base:.1f} A {r:.1f} {r:.1f} 0 0 1 {x2:.1f} {base:.1f}" '
                f'fill="none" stroke="{stroke}"{dash}><title>{e[0]}-{e[1]} {escape(p)}</title></path>'
            )
        for i, v in enumerate(be.order):
            x = spec.margin + i * spec.spacing
            out.append(f'<circle cx="{x:.1f}" cy="{base:.1f}" r="2.5" fill="black"/>')
            if spec.labels:
                out.append(f'<text x="{x:.1f}" y="{base + 11:.1f}" text-anchor="middle">{v}</text>')
        summary = escape(_provenance_summary(be, p))
        out.append(
            f'<text x="{width + 4:.1f}" y="{base - 4:.1f}" fill="{colour}">lane {lane}: {escape(p)}  {summary}</text>'
        )
        out.append("</g>")
        y0 = base
    out.append("</svg>")
    return "\n".join(out) + "\n"
