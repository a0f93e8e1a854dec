import json
import random

import pytest

from rp3kh.diagram import (
    Arc, BifurcationType, Consistency, DiagramError, ParseError, ProjectiveDiagram, Slot,
    bifurcation, circle_count, components, crossing_signs, dumps, is_valid, iter_states,
    local_consistency, loads, resolve, validate,
)
from rp3kh.generate import random_diagram

from conftest import seeded_diagrams

# two projective lines meeting once; each strand closes through the crosscap
CROSSED_LINES = ProjectiveDiagram(1, (
    Arc(0, Slot(0, 2), Slot(0, 0), 1),
    Arc(1, Slot(0, 1), Slot(0, 3), 1),
))


def test_json_roundtrip(all_corpus):
    for d in all_corpus.values():
        assert loads(dumps(d)) == d.sorted()


def test_unknown_fields_rejected():
    with pytest.raises(ParseError, match="unknown"):
        loads('{"crossings": 0, "colour": 1}')
    with pytest.raises(ParseError, match="unknown"):
        loads('{"crossings": 1, "arcs": [{"id": 0, "from": [0, 2], "to": [0, 0], "x": 1}]}')


@pytest.mark.parametrize("text", [
    "[]", "{}", '{"crossings": -1}', '{"crossings": true}', "{",
    '{"crossings": 0, "free_loops": [2]}',
    '{"crossings": 1, "arcs": [{"id": 0, "from": [0], "to": [0, 0]}]}',
    '{"crossings": 1, "arcs": [{"id": 0, "from": [0, 2], "to": [0, 0], "crosscap": 3}]}',
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        loads(text)


def test_validate_kinds():
    base = CROSSED_LINES
    validate(base)
    dup = ProjectiveDiagram(1, (Arc(0, Slot(0, 2), Slot(0, 0), 1), Arc(0, Slot(0, 1), Slot(0, 3), 1)))
    dangling = ProjectiveDiagram(1, (Arc(0, Slot(0, 2), Slot(0, 0), 1),))
    double = ProjectiveDiagram(1, (Arc(0, Slot(0, 2), Slot(0, 0), 1), Arc(1, Slot(0, 1), Slot(0, 0), 1)))
    wrong_way = ProjectiveDiagram(1, (Arc(0, Slot(0, 0), Slot(0, 2), 1), Arc(1, Slot(0, 1), Slot(0, 3), 1)))
    out_of_range = ProjectiveDiagram(1, (Arc(0, Slot(0, 2), Slot(1, 0), 1), Arc(1, Slot(0, 1), Slot(0, 3), 1)))
    cases = [(dup, "bad arc id"), (dangling, "dangling slot"), (double, "doubly-used slot"),
             (wrong_way, "orientation inconsistency"), (out_of_range, "dangling slot")]
    for d, kind in cases:
        with pytest.raises(DiagramError) as info:
            validate(d)
        assert info.value.kind == kind


def test_torus_graph_is_not_projective():
    # one crossing whose strands close up without twists; the ribbon surface
    # is not the projective plane
    d = ProjectiveDiagram(1, (Arc(0, Slot(0, 2), Slot(0, 0), 0), Arc(1, Slot(0, 1), Slot(0, 3), 0)))
    assert not is_valid(d)


def test_signs():
    assert crossing_signs(ProjectiveDiagram(0)).signs == ()
    assert crossing_signs(ProjectiveDiagram(0)).writhe == 0
    assert CROSSED_LINES.signs == (1,)
    neg = ProjectiveDiagram(1, (Arc(0, Slot(0, 2), Slot(0, 0), 1), Arc(1, Slot(0, 3), Slot(0, 1), 1)))
    assert neg.signs == (-1,)


def test_free_loops():
    for parity in (0, 1):
        rs = resolve(ProjectiveDiagram(0, (), (parity,)), ())
        assert rs.n_trivial == 1 - parity
        assert rs.n_projective == parity


def test_example_state_00(example):
    rs = resolve(example, (0, 0))
    assert (rs.n_trivial, rs.n_projective) == (1, 1)
    assert rs.circles[-1].projective


def test_components(example):
    comps = components(example)
    assert len(comps) == 2
    assert sorted(len(c) for c in comps) == [2, 2]


def test_example_bifurcations(example):
    assert bifurcation(example, (0, "*")).kind is BifurcationType.TWO_TO_ONE
    assert bifurcation(example, ("*", 1)).kind is BifurcationType.ONE_TO_TWO


def test_one_to_one():
    b = bifurcation(CROSSED_LINES, ("*",))
    assert b.kind is BifurcationType.ONE_TO_ONE
    assert circle_count(CROSSED_LINES, (0,)) == circle_count(CROSSED_LINES, (1,)) == (1, 0)


def test_consistency_flips_with_orientation(example):
    rs = resolve(example, (0, 0))
    for circle in rs.circles:
        for c in range(example.n_crossings):
            try:
                fwd = local_consistency(example, circle, c)
            except ValueError:
                continue
            back = local_consistency(example, circle.reversed(), c)
            assert back.value == -fwd.value


def test_indetermined_only_on_one_to_one():
    for d in seeded_diagrams(60):
        for s in iter_states(d.n_crossings):
            rs = resolve(d, s)
            for c in range(d.n_crossings):
                for circle in rs.circles:
                    try:
                        got = local_consistency(d, circle, c)
                    except ValueError:
                        continue
                    if got is Consistency.INDETERMINED:
                        alpha = tuple("*" if i == c else v for i, v in enumerate(s))
                        assert bifurcation(d, alpha).kind is BifurcationType.ONE_TO_ONE


def test_parity_invariants():
    for d in seeded_diagrams(80):
        total = (sum(a.crosscap for a in d.arcs) + sum(d.free_loops)) % 2
        for s in iter_states(d.n_crossings):
            rs = resolve(d, s)
            assert sum(c.crosscap_parity for c in rs.circles) % 2 == total
            assert rs.n_projective <= 1


def test_relabel_invariance():
    rng = random.Random(5)
    for d in seeded_diagrams(40):
        ids = [a.id for a in d.arcs]
        new = rng.sample(range(100), len(ids))
        m = dict(zip(ids, new))
        e = ProjectiveDiagram(d.n_crossings, tuple(Arc(m[a.id], a.src, a.dst, a.crosscap) for a in d.arcs),
                              d.free_loops)
        for s in iter_states(d.n_crossings):
            left = sorted((c.projective, tuple(sorted(m[x] for x in c.arc_set))) for c in resolve(d, s).circles)
            right = sorted((c.projective, tuple(sorted(c.arc_set))) for c in resolve(e, s).circles)
            assert left == right


def test_edge_counts_match_bifurcation():
    delta = {BifurcationType.TWO_TO_ONE: -1, BifurcationType.ONE_TO_TWO: 1, BifurcationType.ONE_TO_ONE: 0}
    for d in seeded_diagrams(40):
        for s in iter_states(d.n_crossings):
            for c in range(d.n_crossings):
                if s[c]:
                    continue
                alpha = tuple("*" if i == c else v for i, v in enumerate(s))
                b = bifurcation(d, alpha)
                assert len(b.codomain) - len(b.domain) == delta[b.kind]
                for i, j in b.spectators:
                    assert b.domain.circles[i].arc_set == b.codomain.circles[j].arc_set


def test_generator_is_reproducible():
    a = [dumps(random_diagram(random.Random(9), 4)) for _ in range(2)]
    assert a[0] == a[1]
    assert json.loads(a[0])["crossings"] == 4
