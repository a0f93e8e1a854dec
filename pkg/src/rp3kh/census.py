"""Census of two-crossing diagrams in the projective plane.

Used to rebuild the shipped corpus and to check it in the tests.  A graph is
a perfect matching of the eight ports ``(v, k)`` of two rigid 4-valent
vertices, with a twist bit per edge; a link adds, per vertex, which port
pair carries the under-strand.

Two graphs count as the same when one of these relates them: swapping the
vertices, rotating a vertex, or flipping a vertex (reverse its rotation and
toggle the twist of each edge to the other vertex).  For links the crossing
data is carried along by the same relabelling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .diagram import ProjectiveDiagram, Slot, resolve, validate
from .rewrite import PortGraph, orient

Port = tuple[int, int]
Edge = tuple[Port, Port, int]

PORTS: tuple[Port, ...] = tuple((v, k) for v in range(2) for k in range(4))


def _matchings(items: list[Port]) -> Iterator[list[tuple[Port, Port]]]:
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(first, items[i])] + m


def _surface(edges: list[Edge]) -> tuple[int, bool]:
    """Euler characteristic and orientability of the ribbon surface."""
    nbr: dict = {}

    def link(a, b):
        nbr.setdefault(a, []).append(b)
        nbr.setdefault(b, []).append(a)

    for v, k in PORTS:
        link(((v, k), 1), ((v, (k + 1) % 4), -1))
    for p, q, t in edges:
        for side in (1, -1):
            link((p, side), (q, side if t else -side))
    seen: set = set()
    n_faces = 0
    for node in nbr:
        if node in seen:
            continue
        n_faces += 1
        stack = [node]
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(nbr[x])
    colour = {0: 0}
    for _ in range(2):
        for p, q, t in edges:
            if p[0] in colour and q[0] not in colour:
                colour[q[0]] = colour[p[0]] ^ t
            elif q[0] in colour and p[0] not in colour:
                colour[p[0]] = colour[q[0]] ^ t
    orientable = all(not (colour[p[0]] ^ colour[q[0]] ^ t) for p, q, t in edges)
    return 2 - 4 + n_faces, orientable


def _images(edges: list[Edge], under: tuple[int, int] | None):
    for swap in (0, 1):
        for rot in itertools.product(range(4), repeat=2):
            for flip in itertools.product((0, 1), repeat=2):
                def move(p: Port) -> Port:
                    v = p[0] ^ swap
                    k = (p[1] + rot[v]) % 4
                    return (v, (-k) % 4 if flip[v] else k)

                es = []
                for p, q, t in edges:
                    a, b = move(p), move(q)
                    if a[0] != b[0]:
                        t ^= flip[a[0]] ^ flip[b[0]]
                    es.append((min(a, b), max(a, b), t))
                und = None
                if under is not None:
                    und = [0, 0]
                    for v in range(2):
                        und[v ^ swap] = move((v, under[v]))[1] % 2
                    und = tuple(und)
                yield tuple(sorted(es)), und


def canonical(edges: list[Edge], under: tuple[int, int] | None = None):
    return min(_images(edges, under))


def projective_graphs() -> list[tuple[Edge, ...]]:
    """Connected two-vertex graphs whose ribbon surface is RP^2, one per class."""
    classes = set()
    for m in _matchings(list(PORTS)):
        if not any(a[0] != b[0] for a, b in m):
            continue
        for twists in itertools.product((0, 1), repeat=4):
            edges = [(min(a, b), max(a, b), t) for (a, b), t in zip(m, twists)]
            if _surface(edges) == (1, False):
                classes.add(canonical(edges)[0])
    return sorted(classes)


def to_diagram(edges, under: tuple[int, int]) -> ProjectiveDiagram:
    """Orient a graph with crossing data; ``under[v]`` picks ports (0, 2) or (1, 3)."""

    def slot(p: Port) -> Slot:
        return Slot(p[0], (p[1] - under[p[0]]) % 4)

    d = orient(PortGraph(2, [(slot(p), slot(q), t) for p, q, t in edges], []))
    validate(d)
    return d


def edge_kinds(d: ProjectiveDiagram) -> dict[str, str]:
    """Bifurcation type of the four edges of a two-crossing cube."""
    def kind(s0, s1):
        diff = len(resolve(d, s0).circles) - len(resolve(d, s1).circles)
        return {1: "2->1", -1: "1->2", 0: "1->1"}[diff]

    return {
        "0*": kind((0, 0), (0, 1)),
        "*0": kind((0, 0), (1, 0)),
        "*1": kind((0, 1), (1, 1)),
        "1*": kind((1, 0), (1, 1)),
    }


def is_essential(d: ProjectiveDiagram) -> bool:
    """False when both paths round the square pass a 1->1 edge."""
    k = edge_kinds(d)
    return not ("1->1" in (k["0*"], k["*1"]) and "1->1" in (k["*0"], k["1*"]))


@dataclass(frozen=True)
class CensusEntry:
    graph: tuple[Edge, ...]
    under: tuple[int, int]
    diagram: ProjectiveDiagram
    essential: bool


def two_crossing_links() -> list[CensusEntry]:
    """Every two-crossing link on a projective graph, one per symmetry class."""
    out = []
    seen = set()
    for g in projective_graphs():
        for under in itertools.product((0, 1), repeat=2):
            key = canonical(list(g), under)
            if key in seen:
                continue
            seen.add(key)
            d = to_diagram(g, under)
            out.append(CensusEntry(g, under, d, is_essential(d)))
    return out


def essential_links() -> list[ProjectiveDiagram]:
    return [e.diagram for e in two_crossing_links() if e.essential]
