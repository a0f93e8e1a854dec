"""Oriented link diagrams in the projective plane.

A diagram is stored as a rotation system with a crosscap parity on every arc.
Each crossing has four slots numbered counterclockwise in the disk picture:

* slot 0 -- under-strand, incoming
* slot 2 -- under-strand, outgoing
* slots 1 and 3 -- over-strand, one incoming and one outgoing

An arc runs from an outgoing slot to an incoming slot; its ``crosscap`` bit is
the number of times it passes through the antipodally identified boundary of
the disk, mod 2.  Components that meet no crossing are kept separately in
``free_loops`` as bare parities.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence


class DiagramError(ValueError):
    """Raised when a diagram violates one of its structural invariants."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class ParseError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Slot:
    crossing: int
    slot: int


@dataclass(frozen=True)
class Arc:
    id: int
    src: Slot
    dst: Slot
    crosscap: int = 0


@dataclass(frozen=True)
class ProjectiveDiagram:
    n_crossings: int
    arcs: tuple[Arc, ...] = ()
    free_loops: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "free_loops", tuple(self.free_loops))

    @cached_property
    def arc_by_id(self) -> dict[int, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def end_at(self) -> dict[Slot, tuple[int, bool]]:
        """Map slot -> (arc id, True if the arc *starts* there)."""
        out: dict[Slot, tuple[int, bool]] = {}
        for a in self.arcs:
            out[a.dst] = (a.id, False)
            out[a.src] = (a.id, True)
        return out

    def arc_at(self, crossing: int, slot: int) -> int:
        return self.end_at[Slot(crossing, slot)][0]

    @cached_property
    def signs(self) -> tuple[int, ...]:
        out = []
        for c in range(self.n_crossings):
            a3, starts3 = self.end_at[Slot(c, 3)]
            out.append(-1 if starts3 else 1)
        return tuple(out)

    def sorted(self) -> "ProjectiveDiagram":
        return ProjectiveDiagram(self.n_crossings, tuple(sorted(self.arcs, key=lambda a: a.id)),
                                 self.free_loops)


# ---------------------------------------------------------------------------
# JSON format

_ARC_FIELDS = {"id", "from", "to", "crosscap"}
_TOP_FIELDS = {"crossings", "arcs", "free_loops"}


def _parse_slot(raw, where: str) -> Slot:
    if (not isinstance(raw, list) or len(raw) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw)):
        raise ParseError(f"{where}: expected [crossing, slot]")
    return Slot(raw[0], raw[1])


def diagram_from_dict(data) -> ProjectiveDiagram:
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    unknown = set(data) - _TOP_FIELDS
    if unknown:
        raise ParseError(f"unknown field(s): {sorted(unknown)}")
    if "crossings" not in data:
        raise ParseError("missing field 'crossings'")
    n = data["crossings"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("'crossings' must be a non-negative integer")
    arcs = []
    for idx, raw in enumerate(data.get("arcs", [])):
        if not isinstance(raw, dict):
            raise ParseError(f"arc #{idx} must be an object")
        unknown = set(raw) - _ARC_FIELDS
        if unknown:
            raise ParseError(f"arc #{idx}: unknown field(s): {sorted(unknown)}")
        missing = {"id", "from", "to"} - set(raw)
        if missing:
            raise ParseError(f"arc #{idx}: missing field(s): {sorted(missing)}")
        aid = raw["id"]
        if not isinstance(aid, int) or isinstance(aid, bool) or aid < 0:
            raise ParseError(f"arc #{idx}: id must be a non-negative integer")
        cc = raw.get("crosscap", 0)
        if cc not in (0, 1) or isinstance(cc, bool):
            raise ParseError(f"arc #{idx}: crosscap must be 0 or 1")
        arcs.append(Arc(aid, _parse_slot(raw["from"], f"arc {aid} 'from'"),
                        _parse_slot(raw["to"], f"arc {aid} 'to'"), cc))
    loops = data.get("free_loops", [])
    if not isinstance(loops, list) or any(p not in (0, 1) or isinstance(p, bool) for p in loops):
        raise ParseError("'free_loops' must be a list of 0/1 parities")
    return ProjectiveDiagram(n, tuple(arcs), tuple(loops))


def diagram_to_dict(d: ProjectiveDiagram) -> dict:
    return {
        "crossings": d.n_crossings,
        "arcs": [
            {"id": a.id, "from": [a.src.crossing, a.src.slot],
             "to": [a.dst.crossing, a.dst.slot], "crosscap": a.crosscap}
            for a in sorted(d.arcs, key=lambda a: a.id)
        ],
        "free_loops": list(d.free_loops),
    }


def loads(text: str) -> ProjectiveDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    return diagram_from_dict(data)


def dumps(d: ProjectiveDiagram) -> str:
    return json.dumps(diagram_to_dict(d), separators=(", ", ": ")) + "\n"


def load(path) -> ProjectiveDiagram:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# ---------------------------------------------------------------------------
# validation


def validate(d: ProjectiveDiagram) -> None:
    """Raise :class:`DiagramError` on the first violated invariant."""
    ids = set()
    for a in d.arcs:
        if a.id < 0 or a.id in ids:
            raise DiagramError("bad arc id", f"arc id {a.id} is negative or repeated")
        ids.add(a.id)
        if a.crosscap not in (0, 1):
            raise DiagramError("bad crosscap", f"arc {a.id} has crosscap {a.crosscap}")
        for end in (a.src, a.dst):
            if not (0 <= end.crossing < d.n_crossings and 0 <= end.slot < 4):
                raise DiagramError("dangling slot",
                                   f"arc {a.id} refers to nonexistent slot {end}")
    for p in d.free_loops:
        if p not in (0, 1):
            raise DiagramError("bad crosscap", f"free loop parity {p}")

    used: dict[Slot, int] = {}
    for a in d.arcs:
        for end in (a.src, a.dst):
            if end in used:
                raise DiagramError("doubly-used slot",
                                   f"slot {end} used by arcs {used[end]} and {a.id}")
            used[end] = a.id
    for c in range(d.n_crossings):
        for s in range(4):
            if Slot(c, s) not in used:
                raise DiagramError("dangling slot", f"slot ({c}, {s}) is not attached to any arc")

    outgoing = {a.src for a in d.arcs}
    for c in range(d.n_crossings):
        if Slot(c, 0) in outgoing:
            raise DiagramError("orientation inconsistency", f"slot 0 of crossing {c} is outgoing")
        if Slot(c, 2) not in outgoing:
            raise DiagramError("orientation inconsistency", f"slot 2 of crossing {c} is incoming")
        if (Slot(c, 1) in outgoing) == (Slot(c, 3) in outgoing):
            raise DiagramError("orientation inconsistency",
                               f"over-strand slots of crossing {c} are not one in, one out")

    _check_surface(d)


def is_valid(d: ProjectiveDiagram) -> bool:
    try:
        validate(d)
    except DiagramError:
        return False
    return True


def components(d: ProjectiveDiagram) -> list[list[int]]:
    """Link components as cyclic lists of arc ids in orientation order.

    Free loops are not included.
    """
    seen: set[int] = set()
    out = []
    for a in sorted(d.arcs, key=lambda a: a.id):
        if a.id in seen:
            continue
        comp = []
        cur = a
        while cur.id not in seen:
            seen.add(cur.id)
            comp.append(cur.id)
            c, s = cur.dst.crossing, cur.dst.slot
            nxt_slot = 2 if s == 0 else (1 if s == 3 else 3)
            cur = d.arc_by_id[d.arc_at(c, nxt_slot)]
        out.append(comp)
    return out


def _graph_components(d: ProjectiveDiagram) -> list[set[int]]:
    parent = list(range(d.n_crossings))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in d.arcs:
        ra, rb = find(a.src.crossing), find(a.dst.crossing)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, set[int]] = {}
    for c in range(d.n_crossings):
        groups.setdefault(find(c), set()).add(c)
    return list(groups.values())


def _face_graph(d: ProjectiveDiagram, crossings: set[int] | None = None):
    """Boundary graph of the ribbon surface.

    Nodes are ``(slot, side)`` where side +1 faces slot+1 and side -1 faces
    slot-1.  Corner links stay at a crossing; band links follow an arc and
    swap sides unless the band is twisted.
    """
    nbr: dict[tuple[Slot, int], list[tuple[tuple[Slot, int], str]]] = {}

    def link(u, v, kind):
        nbr.setdefault(u, []).append((v, kind))
        nbr.setdefault(v, []).append((u, kind))

    for a in d.arcs:
        if crossings is not None and a.src.crossing not in crossings:
            continue
        for end in (a.src, a.dst):
            link((end, 1), (Slot(end.crossing, (end.slot + 1) % 4), -1), "corner")
        for side in (1, -1):
            link((a.src, side), (a.dst, side if a.crosscap else -side), "band")
    return nbr


def face_walks(d: ProjectiveDiagram) -> list[tuple[tuple[Slot, ...], tuple[int, ...]]]:
    """Faces as ``(corners, arcs)`` in boundary order.

    ``Slot(c, s)`` in ``corners`` is the corner between slots ``s`` and
    ``s + 1`` of crossing ``c``; ``arcs`` lists the arc ids along the face.
    """
    nbr = _face_graph(d)
    seen = set()
    out = []
    for start in sorted(nbr, key=lambda u: (u[0], u[1])):
        if start in seen:
            continue
        corners, arcs = [], []
        u, came = start, None
        while True:
            seen.add(u)
            v, kind = next((v, kind) for v, kind in nbr[u] if kind != came)
            if kind == "corner":
                corners.append((u if u[1] == 1 else v)[0])
            else:
                arcs.append(d.end_at[u[0]][0])
            came = kind
            u = v
            if u == start:
                break
        out.append((tuple(corners), tuple(arcs)))
    return out


def faces(d: ProjectiveDiagram) -> list[tuple[Slot, ...]]:
    return [corners for corners, _ in face_walks(d)]


def face_count(d: ProjectiveDiagram, crossings: set[int] | None = None) -> int:
    """Number of boundary components of the ribbon surface (the faces)."""
    nbr = _face_graph(d, crossings)
    seen = set()
    count = 0
    for node in nbr:
        if node in seen:
            continue
        count += 1
        stack = [node]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            stack.extend(v for v, _ in nbr[u])
    return count


def _orientable(d: ProjectiveDiagram, crossings: set[int]) -> bool:
    colour: dict[int, int] = {}
    adj: dict[int, list[tuple[int, int]]] = {c: [] for c in crossings}
    for a in d.arcs:
        if a.src.crossing in crossings:
            adj[a.src.crossing].append((a.dst.crossing, a.crosscap))
            adj[a.dst.crossing].append((a.src.crossing, a.crosscap))
    for start in crossings:
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v, t in adj[u]:
                want = colour[u] ^ t
                if v not in colour:
                    colour[v] = want
                    stack.append(v)
                elif colour[v] != want:
                    return False
    return True


def _check_surface(d: ProjectiveDiagram) -> None:
    nonorientable = sum(d.free_loops)
    for comp in _graph_components(d):
        v = len(comp)
        e = 2 * v
        f = face_count(d, comp)
        chi = v - e + f
        if _orientable(d, comp):
            if chi != 2:
                raise DiagramError("not projective-planar",
                                   f"component {sorted(comp)} needs an orientable surface with euler characteristic {chi}")
        else:
            if chi != 1:
                raise DiagramError("not projective-planar",
                                   f"component {sorted(comp)} needs a non-orientable surface with euler characteristic {chi}")
            nonorientable += 1
    if nonorientable > 1:
        raise DiagramError("not projective-planar",
                           f"{nonorientable} one-sided pieces cannot coexist in the projective plane")


# ---------------------------------------------------------------------------
# signs


class CrossingSigns(NamedTuple):
    signs: tuple[int, ...]
    n_plus: int
    n_minus: int
    writhe: int


def crossing_signs(d: ProjectiveDiagram) -> CrossingSigns:
    signs = d.signs
    n_plus = sum(1 for s in signs if s > 0)
    n_minus = len(signs) - n_plus
    return CrossingSigns(signs, n_plus, n_minus, n_plus - n_minus)


# Slot positions once a crossing is turned so both outgoing ends point north.
# Index by sign: {+1: ..., -1: ...}.
NE = {1: 1, -1: 2}
NW = {1: 2, -1: 3}
SW = {1: 3, -1: 0}
SE = {1: 0, -1: 1}

# smoothing -> pairs of slots joined
_PARTNER = {
    0: {0: 1, 1: 0, 2: 3, 3: 2},
    1: {0: 3, 3: 0, 1: 2, 2: 1},
}


def smoothing_partner(slot: int, choice: int) -> int:
    return _PARTNER[choice][slot]


# ---------------------------------------------------------------------------
# states and circles


class CircleKind(enum.Enum):
    TRIVIAL = "trivial"
    PROJECTIVE = "projective"


@dataclass(frozen=True)
class Circle:
    """A state circle as an oriented cyclic walk over arcs.

    ``walk`` holds ``(arc_id, forward)`` pairs.  Free loops have an empty walk
    and carry their index in ``free_loop``.
    """

    walk: tuple[tuple[int, bool], ...]
    crosscap_parity: int
    free_loop: int | None = None

    @property
    def kind(self) -> CircleKind:
        return CircleKind.PROJECTIVE if self.crosscap_parity else CircleKind.TRIVIAL

    @property
    def projective(self) -> bool:
        return bool(self.crosscap_parity)

    @cached_property
    def direction(self) -> dict[int, bool]:
        return dict(self.walk)

    @cached_property
    def arc_set(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.walk)

    @property
    def key(self) -> tuple:
        """Identity of the circle independent of orientation."""
        if self.free_loop is not None:
            return ("loop", self.free_loop)
        return ("arcs", self.arc_set)

    @property
    def min_arc(self) -> int:
        return min(self.arc_set)

    def reversed(self) -> "Circle":
        if not self.walk:
            return self
        return Circle(tuple((a, not f) for a, f in reversed(self.walk)),
                      self.crosscap_parity, self.free_loop)


@dataclass(frozen=True)
class ResolvedState:
    state: tuple[int, ...]
    circles: tuple[Circle, ...]

    @property
    def n_trivial(self) -> int:
        return sum(1 for c in self.circles if not c.projective)

    @property
    def n_projective(self) -> int:
        return sum(1 for c in self.circles if c.projective)

    def __len__(self) -> int:
        return len(self.circles)

    def circle_of_arc(self, arc_id: int) -> int:
        for i, c in enumerate(self.circles):
            if arc_id in c.direction:
                return i
        raise KeyError(arc_id)

    @property
    def shift(self) -> int:
        return self.state.count(0) - self.state.count(1)


def _trace(d: ProjectiveDiagram, state: Sequence[int]) -> list[Circle]:
    seen: set[int] = set()
    circles = []
    for start in sorted(d.arc_by_id):
        if start in seen:
            continue
        walk = []
        parity = 0
        arc_id, fwd = start, True
        while True:
            seen.add(arc_id)
            walk.append((arc_id, fwd))
            arc = d.arc_by_id[arc_id]
            parity ^= arc.crosscap
            end = arc.dst if fwd else arc.src
            partner = Slot(end.crossing, _PARTNER[state[end.crossing]][end.slot])
            arc_id, starts = d.end_at[partner]
            fwd = starts
            if arc_id == start and fwd:
                break
        circles.append(Circle(tuple(walk), parity))
    for i, p in enumerate(d.free_loops):
        circles.append(Circle((), p, free_loop=i))
    return circles


def canonical_order(circles: Iterable[Circle]) -> tuple[Circle, ...]:
    """Sort by lowest arc id (free loops after, by index), projective last."""

    def key(c: Circle):
        base = (1, c.free_loop) if c.free_loop is not None else (0, c.min_arc)
        return (c.projective, base)

    return tuple(sorted(circles, key=key))


def resolve(d: ProjectiveDiagram, state: Sequence[int]) -> ResolvedState:
    """Smooth every crossing of ``d`` according to ``state``.

    Each circle is oriented along its lowest-id arc and the circles are
    listed in canonical order.
    """
    state = tuple(int(s) for s in state)
    if len(state) != d.n_crossings or any(s not in (0, 1) for s in state):
        raise ValueError(f"state {state} does not match {d.n_crossings} crossings")
    return ResolvedState(state, canonical_order(_trace(d, state)))


def circle_count(d: ProjectiveDiagram, state: Sequence[int]) -> tuple[int, int]:
    """(|s|_T, |s|_P) without building circle objects; used by the state sum."""
    rs = _trace(d, state)
    p = sum(c.crosscap_parity for c in rs)
    return len(rs) - p, p


# ---------------------------------------------------------------------------
# local consistency and bifurcations


class Consistency(enum.Enum):
    CONSISTENT = 1
    INCONSISTENT = -1
    INDETERMINED = 0


def local_consistency(d: ProjectiveDiagram, circle: Circle, crossing: int) -> Consistency:
    sign = d.signs[crossing]
    readings = []
    ne_arc = d.arc_at(crossing, NE[sign])
    if ne_arc in circle.direction:
        # the NE arc leaves the crossing; agreeing means walking it forward
        readings.append(circle.direction[ne_arc])
    sw_arc = d.arc_at(crossing, SW[sign])
    if sw_arc in circle.direction:
        # the SW arc enters the crossing; disagreeing means walking it backward
        readings.append(not circle.direction[sw_arc])
    if not readings:
        raise ValueError(f"circle does not pass through crossing {crossing}")
    if all(readings):
        return Consistency.CONSISTENT
    if not any(readings):
        return Consistency.INCONSISTENT
    return Consistency.INDETERMINED


class BifurcationType(enum.Enum):
    TWO_TO_ONE = "2->1"
    ONE_TO_TWO = "1->2"
    ONE_TO_ONE = "1->1"


@dataclass(frozen=True)
class Bifurcation:
    """How the circles change along one edge of the cube.

    ``source`` and ``target`` list indices into the resolved states' circle
    tuples for the circles at the site, in the order the differential uses:
    for a merge the first source circle runs through the north-west slot, for
    a split the first target circle does.  ``spectators`` pairs the remaining
    circles ``(source index, target index)``.
    """

    kind: BifurcationType
    crossing: int
    domain: ResolvedState
    codomain: ResolvedState
    source: tuple[int, ...]
    target: tuple[int, ...]
    spectators: tuple[tuple[int, int], ...] = field(default=())


def edge_states(alpha: Sequence) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    stars = [i for i, v in enumerate(alpha) if v not in (0, 1)]
    if len(stars) != 1:
        raise ValueError(f"edge {alpha!r} must contain exactly one star")
    c = stars[0]
    s0 = tuple(0 if i == c else int(v) for i, v in enumerate(alpha))
    s1 = tuple(1 if i == c else int(v) for i, v in enumerate(alpha))
    return c, s0, s1


def _site_circles(rs: ResolvedState, d: ProjectiveDiagram, c: int) -> list[int]:
    arcs = {d.arc_at(c, s) for s in range(4)}
    return sorted({rs.circle_of_arc(a) for a in arcs})


def bifurcation(d: ProjectiveDiagram, alpha: Sequence,
                domain: ResolvedState | None = None,
                codomain: ResolvedState | None = None) -> Bifurcation:
    c, s0, s1 = edge_states(alpha)
    r0 = domain if domain is not None else resolve(d, s0)
    r1 = codomain if codomain is not None else resolve(d, s1)
    src = _site_circles(r0, d, c)
    tgt = _site_circles(r1, d, c)
    nw_arc = d.arc_at(c, NW[d.signs[c]])
    if len(src) == 2 and len(tgt) == 1:
        kind = BifurcationType.TWO_TO_ONE
        first = r0.circle_of_arc(nw_arc)
        src = [first] + [i for i in src if i != first]
    elif len(src) == 1 and len(tgt) == 2:
        kind = BifurcationType.ONE_TO_TWO
        first = r1.circle_of_arc(nw_arc)
        tgt = [first] + [i for i in tgt if i != first]
    elif len(src) == 1 and len(tgt) == 1:
        kind = BifurcationType.ONE_TO_ONE
    else:  # pragma: no cover - impossible for a valid diagram
        raise DiagramError("bad bifurcation", f"{len(src)} -> {len(tgt)} circles at crossing {c}")
    tgt_by_key = {circ.key: j for j, circ in enumerate(r1.circles)}
    spect = tuple((i, tgt_by_key[circ.key]) for i, circ in enumerate(r0.circles)
                  if i not in src)
    return Bifurcation(kind, c, r0, r1, tuple(src), tuple(tgt), spect)


def iter_states(n: int) -> Iterator[tuple[int, ...]]:
    """All states in lexicographic order."""
    for m in range(1 << n):
        yield tuple((m >> (n - 1 - i)) & 1 for i in range(n))
