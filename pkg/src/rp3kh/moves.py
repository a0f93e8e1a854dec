"""Reidemeister moves on projective diagrams at explicit sites.

Moves never search for a site on their own; the caller names the arcs or
crossings and the move checks that they match its left-hand pattern.

* ``RI``   adds a curl to an arc.
* ``RII``  pushes one arc across another, creating a bigon; ``RII-`` removes one.
* ``RIII`` slides a strand across the crossing opposite a triangle face.
* ``RIV``  carries a crossing across the disk boundary.  Combinatorially
  this is a vertex flip: the rotation reverses, over and under swap and the
  four incident arc ends change parity.  Signs and smoothings are kept.
* ``RV``   carries a curl, lobe and all, through the boundary.  The strand
  crossed the boundary just before the curl and now does so just after it,
  or the other way round.
"""

from __future__ import annotations

from typing import Sequence

from .diagram import (
    Arc,
    DiagramError,
    ProjectiveDiagram,
    Slot,
    face_walks,
    validate,
)
from .rewrite import PortGraph, orient, remove_crossing, to_ports


class MoveError(DiagramError):
    def __init__(self, message: str):
        super().__init__("site does not match pattern", message)


_THROUGH = {0: 2, 2: 0, 1: 3, 3: 1}


def _is_over(slot: int) -> bool:
    return slot in (1, 3)


def _finish(pg: PortGraph) -> ProjectiveDiagram:
    d = orient(pg)
    validate(d)
    return d


def _arc(d: ProjectiveDiagram, arc_id: int) -> Arc:
    try:
        return d.arc_by_id[arc_id]
    except KeyError:
        raise MoveError(f"no arc with id {arc_id}") from None


def _crossing(d: ProjectiveDiagram, c: int) -> None:
    if not 0 <= c < d.n_crossings:
        raise MoveError(f"no crossing {c}")


# ---------------------------------------------------------------------------
# R-I


def add_curl(d: ProjectiveDiagram, arc_id: int, sign: int = 1, over_first: bool = False) -> ProjectiveDiagram:
    """Insert a small curl of the given sign into an arc.

    The strand meets the new crossing first on the under-strand, or on the
    over-strand when ``over_first`` is set.
    """
    a = _arc(d, arc_id)
    if sign not in (1, -1):
        raise MoveError(f"sign must be +1 or -1, got {sign}")
    c = d.n_crossings
    over_in, over_out = (3, 1) if sign > 0 else (1, 3)
    first_in, first_out, second_in, second_out = (
        (over_in, over_out, 0, 2) if over_first else (0, 2, over_in, over_out))
    pg = to_ports(d)
    pg.n_crossings += 1
    k = [e for e, arc in enumerate(sorted(d.arcs, key=lambda x: x.id)) if arc.id == arc_id][0]
    pg.edges[k] = (a.src, Slot(c, first_in), a.crosscap)
    pg.edges.append((Slot(c, first_out), Slot(c, second_in), 0))
    pg.edges.append((Slot(c, second_out), a.dst, 0))
    return _finish(pg)


# ---------------------------------------------------------------------------
# R-II


def _bigons(d: ProjectiveDiagram) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """``((x, y), (arc, arc))`` for every face with two corners at distinct crossings."""
    out = []
    for corners, arcs in face_walks(d):
        if len(corners) == 2 and corners[0].crossing != corners[1].crossing:
            out.append(((corners[0].crossing, corners[1].crossing), arcs))
    return out


def _strand_over(d: ProjectiveDiagram, arc_id: int) -> tuple[bool, bool]:
    a = d.arc_by_id[arc_id]
    return _is_over(a.src.slot), _is_over(a.dst.slot)


def _passage_ports(under: bool, sign: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """(A in, A out), (B in, B out) at a crossing where A is the under strand or not."""
    over = (3, 1) if sign > 0 else (1, 3)
    return ((0, 2), over) if under else (over, (0, 2))


def _split(src: Slot, dst: Slot, parity: int, stops: Sequence[tuple[int, int]],
           parity_last: bool) -> list[tuple[Slot, Slot, int]]:
    """Route an arc through ``stops`` (pairs of in/out slots)."""
    points = [src]
    for s_in, s_out in stops:
        points += [s_in, s_out]
    points.append(dst)
    segs = []
    for i in range(0, len(points), 2):
        segs.append([points[i], points[i + 1], 0])
    segs[-1 if parity_last else 0][2] = parity
    return [tuple(s) for s in segs]


def r2_candidates(d: ProjectiveDiagram, a: int | None, b: int | None,
                  loop: int | None = None) -> list[ProjectiveDiagram]:
    """All legal ways to push arc ``b`` (or free loop ``loop``) across arc ``a``.

    With ``a`` and ``b`` both None the free loop is pushed across itself.
    A candidate is kept when it is a valid projective diagram containing a
    bigon between the two new crossings.  The list has a fixed order, which
    ``variant`` in :func:`push_across` indexes.
    """
    arc_a = _arc(d, a) if a is not None else None
    arc_b = _arc(d, b) if b is not None else None
    if arc_b is None and (loop is None or not 0 <= loop < len(d.free_loops)):
        raise MoveError("RII needs a second arc or a free loop")
    if arc_a is None and arc_b is not None:
        raise MoveError("RII needs a first arc")
    x, y = d.n_crossings, d.n_crossings + 1
    arcs = sorted(d.arcs, key=lambda t: t.id)
    keep = [(t.src, t.dst, t.crosscap) for t in arcs if t.id not in (a, b)]
    out: list[ProjectiveDiagram] = []
    seen: set[str] = set()
    for a_under in (True, False):
        for b_forward in (True, False):
            for sx in (1, -1):
                for sy in (1, -1):
                    for last_a in (False, True):
                        for last_b in (False, True):
                            (ax, bx) = _passage_ports(a_under, sx)
                            (ay, by) = _passage_ports(a_under, sy)
                            a_stops = [(Slot(x, ax[0]), Slot(x, ax[1])), (Slot(y, ay[0]), Slot(y, ay[1]))]
                            b_pass = [(Slot(x, bx[0]), Slot(x, bx[1])), (Slot(y, by[0]), Slot(y, by[1]))]
                            if not b_forward:
                                b_pass.reverse()
                            if arc_a is None:
                                stops = a_stops + b_pass
                                p = d.free_loops[loop]
                                edges = _split(stops[0][1], stops[0][0], p, stops[1:], last_a)
                            elif arc_b is not None and b == a:
                                edges = _split(arc_a.src, arc_a.dst, arc_a.crosscap,
                                               a_stops + b_pass, last_a)
                            else:
                                edges = _split(arc_a.src, arc_a.dst, arc_a.crosscap, a_stops, last_a)
                                if arc_b is not None:
                                    edges += _split(arc_b.src, arc_b.dst, arc_b.crosscap, b_pass, last_b)
                                else:
                                    (i1, o1), (i2, o2) = b_pass
                                    p = d.free_loops[loop]
                                    edges += [(o1, i2, 0 if last_b else p), (o2, i1, p if last_b else 0)]
                            loops = list(d.free_loops)
                            if arc_b is None:
                                del loops[loop]
                            pg = PortGraph(d.n_crossings + 2, keep + edges, loops)
                            try:
                                cand = _finish(pg)
                            except DiagramError:
                                continue
                            if not any(set(xy) == {x, y} for xy, _ in _bigons(cand)):
                                continue
                            key = repr(cand)
                            if key in seen:
                                continue
                            seen.add(key)
                            out.append(cand)
    return out


def push_across(d: ProjectiveDiagram, a: int | None, b: int | None = None, loop: int | None = None,
                variant: int = 0) -> ProjectiveDiagram:
    cands = r2_candidates(d, a, b, loop)
    if not cands:
        raise MoveError(f"arcs {a} and {b} (loop {loop}) do not share a face")
    if not 0 <= variant < len(cands):
        raise MoveError(f"variant {variant} out of range 0..{len(cands) - 1}")
    return cands[variant]


def remove_bigon(d: ProjectiveDiagram, x: int, y: int) -> ProjectiveDiagram:
    """Inverse R-II: delete crossings ``x`` and ``y`` bounding a bigon."""
    _crossing(d, x)
    _crossing(d, y)
    for xy, arcs in _bigons(d):
        if set(xy) != {x, y}:
            continue
        over = [_strand_over(d, t) for t in arcs]
        if not all(o[0] == o[1] for o in over):
            continue
        pg = to_ports(d)
        hi, lo = max(x, y), min(x, y)
        pg = remove_crossing(pg, hi, _THROUGH)
        pg = remove_crossing(pg, lo, _THROUGH)
        return _finish(pg)
    raise MoveError(f"crossings {x} and {y} do not bound a bigon with one strand on top")


# ---------------------------------------------------------------------------
# R-III


def slide_triangle(d: ProjectiveDiagram, crossings: Sequence[int]) -> ProjectiveDiagram:
    """R-III across a triangle face with the given three corners."""
    tri = set(crossings)
    if len(tri) != 3:
        raise MoveError("RIII needs three distinct crossings")
    for c in tri:
        _crossing(d, c)
    for corners, arcs in face_walks(d):
        if len(corners) != 3 or {c.crossing for c in corners} != tri:
            continue
        if any(d.arc_by_id[t].crosscap for t in arcs):
            continue
        kinds = sorted(_strand_over(d, t) for t in arcs)
        if kinds[0] != (False, False) or kinds[2] != (True, True):
            continue
        remap: dict[Slot, Slot] = {}
        sides = {}
        for t in arcs:
            m = d.arc_by_id[t]
            p_out, q_in = m.src, m.dst
            p_in = Slot(p_out.crossing, _THROUGH[p_out.slot])
            q_out = Slot(q_in.crossing, _THROUGH[q_in.slot])
            remap[p_in] = q_in
            remap[q_out] = p_out
            sides[t] = (q_out, p_in)
        edges = []
        for t in sorted(d.arcs, key=lambda t: t.id):
            if t.id in sides:
                s, e = sides[t.id]
                edges.append((s, e, 0))
            else:
                edges.append((remap.get(t.src, t.src), remap.get(t.dst, t.dst), t.crosscap))
        return _finish(PortGraph(d.n_crossings, edges, list(d.free_loops)))
    raise MoveError(f"crossings {sorted(tri)} do not bound a triangle with a top and a bottom strand")


# ---------------------------------------------------------------------------
# R-IV and R-V

# slot relabelling for a vertex flip, indexed by sign: old slot -> new slot
_FLIP = {1: {3: 0, 2: 1, 1: 2, 0: 3}, -1: {1: 0, 0: 1, 3: 2, 2: 3}}


def _flip(d: ProjectiveDiagram, c: int) -> ProjectiveDiagram:
    flip = _FLIP[d.signs[c]]

    def move(s: Slot) -> Slot:
        return Slot(c, flip[s.slot]) if s.crossing == c else s

    arcs = []
    for a in d.arcs:
        toggles = (a.src.crossing == c) + (a.dst.crossing == c)
        arcs.append(Arc(a.id, move(a.src), move(a.dst), (a.crosscap + toggles) % 2))
    out = ProjectiveDiagram(d.n_crossings, tuple(arcs), d.free_loops)
    validate(out)
    return out


def flip_crossing(d: ProjectiveDiagram, c: int) -> ProjectiveDiagram:
    """R-IV at crossing ``c``; the move is its own inverse.

    Any crossing qualifies: arc parities do not say where along an arc the
    boundary is met, so the boundary can always be moved up to ``c`` first.
    """
    _crossing(d, c)
    return _flip(d, c)


def slide_curl(d: ProjectiveDiagram, c: int) -> ProjectiveDiagram:
    """R-V: carry the curl at crossing ``c`` through the boundary.

    The strand must cross the boundary right before or right after the curl
    (exactly one of the two arcs through it is odd); afterwards it crosses
    on the other side.  The lobe goes along, so its parity is unchanged.
    """
    _crossing(d, c)
    for lb in sorted(d.arcs, key=lambda a: a.id):
        if lb.src.crossing != c or lb.dst.crossing != c:
            continue
        entering = d.arc_by_id[d.arc_at(c, _THROUGH[lb.src.slot])]
        leaving = d.arc_by_id[d.arc_at(c, _THROUGH[lb.dst.slot])]
        if entering.id != leaving.id and entering.crosscap != leaving.crosscap:
            return _flip(d, c)
    raise MoveError(f"crossing {c} carries no curl next to the boundary")


# ---------------------------------------------------------------------------

MOVES = ("RI", "RII", "RII-", "RIII", "RIV", "RV")


def apply_move(d: ProjectiveDiagram, move: str, site: dict) -> ProjectiveDiagram:
    """Dispatch by move name; ``site`` is a dict of the named arguments."""
    try:
        if move == "RI":
            return add_curl(d, site["arc"], site.get("sign", 1), site.get("over_first", False))
        if move == "RII":
            arcs = site.get("arcs", [])
            return push_across(d, arcs[0] if arcs else None, arcs[1] if len(arcs) > 1 else None,
                               site.get("loop"), site.get("variant", 0))
        if move == "RII-":
            return remove_bigon(d, *site["crossings"])
        if move == "RIII":
            return slide_triangle(d, site["crossings"])
        if move == "RIV":
            return flip_crossing(d, site["crossing"])
        if move == "RV":
            return slide_curl(d, site["crossing"])
    except (KeyError, IndexError, TypeError) as exc:
        raise MoveError(f"bad site for {move}: {site!r}") from exc
    raise MoveError(f"unknown move {move!r}")
