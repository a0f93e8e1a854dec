"""Unoriented port graphs, used to rebuild diagrams after local surgery.

Smoothing a crossing or performing a move joins arc ends in ways that do not
respect the old orientation.  A :class:`PortGraph` forgets orientation: each
crossing has four ports numbered counterclockwise with the under-strand on
ports 0 and 2, and edges join ports.  :func:`orient` walks the components
again and produces a valid :class:`ProjectiveDiagram`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Arc, ProjectiveDiagram, Slot, _PARTNER


@dataclass
class PortGraph:
    n_crossings: int
    edges: list[tuple[Slot, Slot, int]] = field(default_factory=list)
    free_loops: list[int] = field(default_factory=list)

    def other_end(self) -> dict[Slot, tuple[int, Slot]]:
        out = {}
        for k, (a, b, _) in enumerate(self.edges):
            out[a] = (k, b)
            out[b] = (k, a)
        return out


def to_ports(d: ProjectiveDiagram) -> PortGraph:
    arcs = sorted(d.arcs, key=lambda a: a.id)
    return PortGraph(d.n_crossings, [(a.src, a.dst, a.crosscap) for a in arcs], list(d.free_loops))


def _through(port: Slot) -> Slot:
    return Slot(port.crossing, (port.slot + 2) % 4)


def orient(pg: PortGraph) -> ProjectiveDiagram:
    """Orient every component and relabel slots to the diagram convention.

    Components are oriented following the first of their edges, in list
    order, as written.  Arc ids follow the edge list.
    """
    ends = pg.other_end()
    direction: dict[int, bool] = {}
    for k, (a, _b, _) in enumerate(pg.edges):
        if k in direction:
            continue
        edge, fwd = k, True
        while edge not in direction:
            direction[edge] = fwd
            x, y, _ = pg.edges[edge]
            head = y if fwd else x
            nxt = _through(head)
            edge, _ = ends[nxt]
            fwd = pg.edges[edge][0] == nxt
    # rotate a crossing by two if its under strand now runs 2 -> 0
    rotate = [False] * pg.n_crossings
    for k, (a, b, _) in enumerate(pg.edges):
        head = b if direction[k] else a
        if head.slot == 2:
            rotate[head.crossing] = True

    def fix(s: Slot) -> Slot:
        return Slot(s.crossing, (s.slot + 2) % 4) if rotate[s.crossing] else s

    arcs = []
    for k, (a, b, p) in enumerate(pg.edges):
        src, dst = (a, b) if direction[k] else (b, a)
        arcs.append(Arc(k, fix(src), fix(dst), p % 2))
    return ProjectiveDiagram(pg.n_crossings, tuple(arcs), tuple(p % 2 for p in pg.free_loops))


def remove_crossing(pg: PortGraph, c: int, pairing: dict[int, int]) -> PortGraph:
    """Delete crossing ``c``, joining its ports as ``pairing`` says.

    Edges passing through are merged; their parities add.  Closed pieces that
    no longer meet a crossing become free loops.
    """
    ends = pg.other_end()
    used: set[int] = set()
    new_edges: list[tuple[Slot, Slot, int]] = []
    loops = list(pg.free_loops)

    def walk(start: Slot) -> tuple[Slot, int, bool]:
        """Follow from a port outside ``c`` until another outside port."""
        parity = 0
        pos = start
        while True:
            edge, far = ends[pos]
            used.add(edge)
            parity += pg.edges[edge][2]
            if far.crossing != c:
                return far, parity, False
            pos = Slot(c, pairing[far.slot])
            if pos == start:  # pragma: no cover - cannot start inside c
                return pos, parity, True

    for k, (a, b, p) in enumerate(pg.edges):
        if k in used:
            continue
        if a.crossing != c and b.crossing != c:
            used.add(k)
            new_edges.append((a, b, p))
            continue
        outside = a if a.crossing != c else (b if b.crossing != c else None)
        if outside is None:
            continue
        far, parity, _ = walk(outside)
        # keep the old direction when the walk ran against it
        new_edges.append((outside, far, parity) if outside == a else (far, outside, parity))
    # leftover edges with both ends at c form closed loops through the smoothing
    for k, (a, b, p) in enumerate(pg.edges):
        if k in used:
            continue
        parity = 0
        pos = a
        while True:
            edge, far = ends[pos]
            if edge in used:
                break
            used.add(edge)
            parity += pg.edges[edge][2]
            pos = Slot(c, pairing[far.slot])
        loops.append(parity % 2)

    def renumber(s: Slot) -> Slot:
        return Slot(s.crossing - 1, s.slot) if s.crossing > c else s

    return PortGraph(pg.n_crossings - 1,
                     [(renumber(a), renumber(b), p) for a, b, p in new_edges], loops)


def smooth(d: ProjectiveDiagram, c: int, choice: int) -> ProjectiveDiagram:
    """The diagram with crossing ``c`` replaced by its ``choice``-smoothing."""
    return orient(remove_crossing(to_ports(d), c, _PARTNER[choice]))


def reverse_component(d: ProjectiveDiagram, index: int) -> ProjectiveDiagram:
    """Reverse the orientation of one link component (numbered as in
    :func:`~rp3kh.diagram.components`)."""
    from .diagram import components

    comps = components(d)
    if not 0 <= index < len(comps):
        raise IndexError(f"diagram has {len(comps)} components")
    flip = set(comps[index])
    pg = to_ports(d)
    ids = sorted(a.id for a in d.arcs)
    pg.edges = [(b, a, p) if ids[k] in flip else (a, b, p) for k, (a, b, p) in enumerate(pg.edges)]
    return orient(pg)
