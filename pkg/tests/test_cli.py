import json
import subprocess
import sys

import pytest

from rp3kh.cli import main
from rp3kh.diagram import Arc, ProjectiveDiagram, Slot, dumps
from rp3kh.moves import add_curl


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kbsm(capsys):
    assert run(capsys, "kbsm", "corpus:example") == (0, "(-A^4 - A^-4)*x\n", "")
    code, out, _ = run(capsys, "kbsm", "corpus:unknot1", "--format", "json")
    assert json.loads(out) == {"schema": 1, "empty": [], "x": [[0, 1]]}


def test_jones(capsys):
    a = run(capsys, "jones", "corpus:r1_before")
    b = run(capsys, "jones", "corpus:r1_after")
    assert a == b


def test_homology_formats(capsys):
    code, out, _ = run(capsys, "homology", "corpus:example", "--format", "tsv")
    assert code == 0
    assert out.splitlines()[0] == "i\tj\tk\tfree_rank\ttorsion"
    code, out, _ = run(capsys, "homology", "corpus:example", "--format", "json", "--seed", "4")
    assert json.loads(out)["schema"] == 1


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "corpus:essential_a", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["d2"] == report["euler"] == "ok"


def test_verify_corrupt(capsys):
    code, out, _ = run(capsys, "verify", "corpus:essential_c", "--debug-corrupt-signs")
    assert code == 4
    assert "FAIL" in out
    code, _, err = run(capsys, "homology", "corpus:essential_c", "--debug-corrupt-signs")
    assert code == 4


def test_compare(capsys):
    assert run(capsys, "compare", "corpus:r4_before", "corpus:r4_after")[0] == 0
    code, out, _ = run(capsys, "compare", "corpus:unknot0", "corpus:unknot1")
    assert code == 1
    assert out.startswith("differ")


def test_corpus_commands(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and "essential_k" in out
    code, out, _ = run(capsys, "corpus", "emit", "example")
    assert json.loads(out)["crossings"] == 2
    assert run(capsys, "corpus", "emit", "missing")[0] == 2
    assert run(capsys, "corpus", "emit")[0] == 2


def test_file_and_errors(tmp_path, capsys):
    good = tmp_path / "d.json"
    good.write_text(dumps(ProjectiveDiagram(0, (), (1,))))
    assert run(capsys, "kbsm", str(good))[:2] == (0, "x\n")
    bad = tmp_path / "bad.json"
    bad.write_text('{"crossings": 0, "extra": 1}')
    assert run(capsys, "kbsm", str(bad))[0] == 2
    assert run(capsys, "kbsm", str(tmp_path / "missing.json"))[0] == 2
    invalid = tmp_path / "invalid.json"
    invalid.write_text(dumps(ProjectiveDiagram(1, (Arc(0, Slot(0, 2), Slot(0, 0), 1),))))
    assert run(capsys, "homology", str(invalid))[0] == 3


def test_crossing_limit(tmp_path, capsys):
    d = ProjectiveDiagram(1, (Arc(0, Slot(0, 2), Slot(0, 3), 1), Arc(1, Slot(0, 1), Slot(0, 0), 0)))
    while d.n_crossings <= 20:
        d = add_curl(d, d.arcs[0].id)
    path = tmp_path / "big.json"
    path.write_text(dumps(d))
    code, _, err = run(capsys, "kbsm", str(path))
    assert code == 3 and "--force" in err


def test_stdin_and_module_entry():
    text = dumps(ProjectiveDiagram(0, (), (0,)))
    proc = subprocess.run([sys.executable, "-m", "rp3kh", "kbsm", "-"], input=text,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "-A^2 - A^-2\n"


def test_bad_format_is_argparse_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["kbsm", "corpus:example", "--format", "xml"])
    assert info.value.code == 2


def test_seeds_give_identical_tables(capsys):
    a = run(capsys, "homology", "corpus:example", "--format", "tsv", "--seed", "0")
    b = run(capsys, "homology", "corpus:example", "--format", "tsv", "--seed", "12345")
    assert a == b
    assert len(a[1].splitlines()) == 5


def test_empty_diagram_row(capsys):
    code, out, _ = run(capsys, "homology", "corpus:empty", "--format", "tsv")
    assert out.splitlines()[1:] == ["0\t0\t0\t1\t-"]


@pytest.mark.parametrize("name", ["example", "r2_after", "r3_before", "r5_after", "essential_k"])
def test_verify_corpus(capsys, name):
    assert run(capsys, "verify", f"corpus:{name}", "--debug")[0] == 0
