"""Named diagrams shipped with the package (see tools/build_corpus.py)."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .diagram import ProjectiveDiagram, loads

_DESCRIPTIONS = {
    "empty": "the empty diagram",
    "unknot0": "unknot, a free loop that stays inside the disk",
    "unknot1": "projective line, a free loop through the boundary",
    "example": "projective line linked with a trivial circle, two crossings",
}
for _l in "abcdefghijk":
    _DESCRIPTIONS[f"essential_{_l}"] = "essential two-crossing link"
for _m, _what in (("r1", "R-I"), ("r2", "R-II"), ("r2_unknot", "R-II on the unknot"),
                  ("r2_loop", "R-II with a free loop"),
                  ("r3", "R-III"), ("r4", "R-IV"), ("r5", "R-V")):
    _DESCRIPTIONS[f"{_m}_before"] = f"{_what}, before"
    _DESCRIPTIONS[f"{_m}_after"] = f"{_what}, after"

MOVE_PAIRS = {
    "RII": [("r2_before", "r2_after"), ("r2_unknot_before", "r2_unknot_after"),
            ("r2_loop_before", "r2_loop_after")],
    "RIII": [("r3_before", "r3_after")],
    "RIV": [("r4_before", "r4_after")],
    "RV": [("r5_before", "r5_after")],
}
CURL_PAIR = ("r1_before", "r1_after")


def _dir():
    return resources.files("rp3kh") / "data" / "corpus"


def names() -> list[str]:
    found = {p.name[:-5] for p in _dir().iterdir() if p.name.endswith(".json")}
    known = [n for n in _DESCRIPTIONS if n in found]
    return known + sorted(found - set(known))


def describe(name: str) -> str:
    return _DESCRIPTIONS.get(name, "")


def raw(name: str) -> str:
    path = _dir() / f"{name}.json"
    if not path.is_file():
        raise KeyError(name)
    return path.read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def get(name: str) -> ProjectiveDiagram:
    return loads(raw(name))


def corpus() -> dict[str, ProjectiveDiagram]:
    return {n: get(n) for n in names()}


def essential() -> dict[str, ProjectiveDiagram]:
    return {n: d for n, d in corpus().items() if n.startswith("essential_")}
