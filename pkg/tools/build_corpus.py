"""Regenerate the JSON corpus under src/rp3kh/data/corpus.

Run from the repository root:  python3 tools/build_corpus.py
The output is deterministic; the tests compare the shipped files against the
census and the move functions, so rerunning should produce no diff.
"""

from __future__ import annotations

import itertools
import string
from pathlib import Path

from rp3kh.census import essential_links
from rp3kh.diagram import Arc, ProjectiveDiagram, Slot, dumps, faces
from rp3kh.moves import MoveError, add_curl, flip_crossing, push_across, slide_curl, slide_triangle

OUT = Path(__file__).resolve().parent.parent / "src" / "rp3kh" / "data" / "corpus"

# A projective line linked with a trivial circle.  The trivial component
# meets the boundary twice; with this encoding every partial differential of
# the worked example comes out with exactly the reference signs.
EXAMPLE = ProjectiveDiagram(2, (
    Arc(0, Slot(0, 1), Slot(1, 3), 1),
    Arc(1, Slot(0, 2), Slot(1, 0), 0),
    Arc(2, Slot(1, 1), Slot(0, 3), 1),
    Arc(3, Slot(1, 2), Slot(0, 0), 1),
))


def first_triangle_pair(seed: ProjectiveDiagram):
    """Search pushes of ``seed`` for a diagram admitting R-III."""
    ids = sorted(a.id for a in seed.arcs)
    for a, b in itertools.product(ids, repeat=2):
        for variant in range(16):
            try:
                d = push_across(seed, a, b, variant=variant)
            except MoveError:
                break
            for f in faces(d):
                cs = sorted({c.crossing for c in f})
                if len(f) == 3 and len(cs) == 3:
                    try:
                        return d, slide_triangle(d, cs)
                    except MoveError:
                        pass
    raise RuntimeError("no R-III site found")


def build() -> dict[str, ProjectiveDiagram]:
    out = {
        "empty": ProjectiveDiagram(0),
        "unknot0": ProjectiveDiagram(0, (), (0,)),
        "unknot1": ProjectiveDiagram(0, (), (1,)),
        "example": EXAMPLE,
    }
    for letter, d in zip(string.ascii_lowercase, essential_links()):
        out[f"essential_{letter}"] = d

    out["r1_before"] = EXAMPLE
    out["r1_after"] = add_curl(EXAMPLE, 1, sign=1)

    out["r2_before"] = EXAMPLE
    out["r2_after"] = push_across(EXAMPLE, 0, 2)
    out["r2_unknot_before"] = out["unknot0"]
    out["r2_unknot_after"] = push_across(out["unknot0"], None, loop=0)
    with_loop = ProjectiveDiagram(EXAMPLE.n_crossings, EXAMPLE.arcs, (0,))
    out["r2_loop_before"] = with_loop
    out["r2_loop_after"] = push_across(with_loop, 1, loop=0)

    out["r3_before"], out["r3_after"] = first_triangle_pair(out["essential_h"])

    out["r4_before"] = EXAMPLE
    out["r4_after"] = flip_crossing(EXAMPLE, 0)

    curl = add_curl(EXAMPLE, 0, sign=-1)
    out["r5_before"] = curl
    out["r5_after"] = slide_curl(curl, curl.n_crossings - 1)
    return out


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    for name, d in build().items():
        (OUT / f"{name}.json").write_text(dumps(d), encoding="utf-8")
        print(f"{name:16s} {d.n_crossings} crossings")


if __name__ == "__main__":
    main()
