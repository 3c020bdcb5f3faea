"""Regenerate tests/data/xw8_witness.json with the exact solver (about a minute)."""

from __future__ import annotations

import json
from pathlib import Path

from bookshelf.formats import book_to_json
from bookshelf.generators import gen_extended_wheel
from bookshelf.verify import exact_book_thickness

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "xw8_witness.json"


def main() -> None:
    res = exact_book_thickness(gen_extended_wheel(4).graph, graph_id="XW_8")
    obj = {"pages": res.pages, "exact": res.exact, "book": book_to_json(res.witness)}
    OUT.write_text(json.dumps(obj, indent=1) + "\n")
    print(f"XW_8: {res.pages} pages, witness written to {OUT}")


if __name__ == "__main__":
    main()
