import importlib.util
from pathlib import Path

from rp3kh import corpus
from rp3kh.census import edge_kinds, essential_links, projective_graphs, two_crossing_links
from rp3kh.diagram import dumps, validate

ROOT = Path(__file__).resolve().parent.parent


def test_graph_and_link_counts():
    assert len(projective_graphs()) == 6
    links = two_crossing_links()
    assert len(links) == 13
    assert sum(e.essential for e in links) == 11


def test_inessential_links_have_one_to_one_on_both_paths():
    for e in two_crossing_links():
        if not e.essential:
            k = edge_kinds(e.diagram)
            assert "1->1" in (k["0*"], k["*1"]) and "1->1" in (k["*0"], k["1*"])


def test_corpus_contents(all_corpus):
    assert len(corpus.essential()) == 11
    assert all_corpus["example"].n_crossings == 2
    assert {"unknot0", "unknot1"} <= set(all_corpus)
    for moves in corpus.MOVE_PAIRS.values():
        for before, after in moves:
            assert before in all_corpus and after in all_corpus
    for d in all_corpus.values():
        validate(d)


def test_corpus_matches_census():
    shipped = [dumps(d) for d in corpus.essential().values()]
    assert shipped == [dumps(d) for d in essential_links()]


def test_corpus_is_reproducible():
    found = importlib.util.spec_from_file_location("build_corpus", ROOT / "tools" / "build_corpus.py")
    mod = importlib.util.module_from_spec(found)
    found.loader.exec_module(mod)
    built = mod.build()
    assert sorted(built) == sorted(corpus.names())
    for name, d in built.items():
        assert dumps(d) == corpus.raw(name)


def test_describe():
    assert corpus.describe("unknot1")
    assert corpus.describe("nope") == ""
