import json
import subprocess
import sys

import pytest

from simplex_mutator.cli import main

P1113 = {"vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -3]]}


@pytest.fixture
def simplex_file(tmp_path):
    def write(obj, name="in.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weights(capsys, simplex_file):
    code, out, _ = run(capsys, "weights", simplex_file(P1113))
    assert code == 0
    assert json.loads(out) == {"multiplicity": 1, "weights": [1, 1, 1, 3]}


def test_weights_stdin():
    r = subprocess.run([sys.executable, "-m", "simplex_mutator", "weights"], input=json.dumps(P1113),
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["weights"] == [1, 1, 1, 3]


def test_build_roundtrip(capsys, simplex_file):
    code, out, _ = run(capsys, "build", "--weights", "1", "1", "4", "6")
    assert code == 0
    code, out, _ = run(capsys, "weights", simplex_file(out))
    assert json.loads(out) == {"multiplicity": 1, "weights": [1, 1, 4, 6]}


def test_moves_and_mutate(capsys, simplex_file):
    path = simplex_file(P1113)
    code, out, _ = run(capsys, "moves", "--nontrivial", path)
    assert code == 0
    moves = json.loads(out)
    assert moves and not any(m["trivial"] for m in moves)
    assert {"multiplicity": 1, "weights": [1, 1, 4, 6]} in [m["target"] for m in moves]
    move = next(m for m in moves if m["target"]["weights"] == [1, 1, 4, 6])
    code, out, _ = run(capsys, "mutate", path, "--move", simplex_file(move, "move.json"))
    assert code == 0
    code, out, _ = run(capsys, "weights", simplex_file(out, "q.json"))
    assert json.loads(out)["weights"] == [1, 1, 4, 6]


def test_mutate_general(capsys, simplex_file):
    code, out, _ = run(capsys, "mutate", simplex_file(P1113), "--w", "-1", "2", "0", "--factor", "[[0,0,0],[2,1,3]]")
    assert code == 0
    code, out, _ = run(capsys, "weights", simplex_file(out, "q.json"))
    assert json.loads(out) == {"multiplicity": 1, "weights": [1, 1, 4, 6]}
    code, _, _ = run(capsys, "mutate", simplex_file(P1113), "--w", "-1", "2", "0", "--factor", "[[0,0")
    assert code == 2


def test_degree_and_classify(capsys, simplex_file):
    code, out, _ = run(capsys, "degree", simplex_file({"weights": [1, 1, 4, 6]}))
    assert code == 0 and json.loads(out) == {"degree": "72"}
    code, out, _ = run(capsys, "classify", simplex_file(P1113))
    assert json.loads(out) == {"canonical": True, "terminal": False, "gorenstein": True, "witness_kappa": None}
    code, out, _ = run(capsys, "classify", "--method", "weights", simplex_file(P1113))
    assert json.loads(out)["witness_kappa"] == 2


def test_exit_codes(capsys, simplex_file):
    assert run(capsys, "weights", simplex_file("{not json"))[0] == 2
    assert run(capsys, "weights", simplex_file({"foo": 1}))[0] == 2
    code, _, err = run(capsys, "weights", simplex_file({"vertices": [[1, 0], [0, 1], [1, 1]]}))
    assert code == 3 and "origin" in err
    assert run(capsys, "tree", "4", "--variant", "terminal", "--depth", "9")[0] == 4
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_tree(capsys, tmp_path):
    code, out, _ = run(capsys, "tree", "3", "--depth", "1")
    assert code == 0
    assert out.startswith("graph mutations_canonical_3 {")
    assert 'label="1,1,4,6"' in out
    dot, js = tmp_path / "g.dot", tmp_path / "g.json"
    code, out, _ = run(capsys, "tree", "4", "--variant", "terminal", "--depth", "2", "--dot", str(dot), "--json", str(js))
    assert code == 0
    assert json.loads(out)["depth_counts"] == [1, 3, 5]
    data = json.loads(js.read_text())
    assert data["nodes"][0]["weights"] == [1, 1, 6, 14, 21]
    assert data["nodes"][0]["singularity"]["terminal"] is True
    assert dot.read_text().startswith("graph mutations_terminal_4 {")


def test_tower(capsys):
    code, out, _ = run(capsys, "tower", "3", "--a", "1", "--m", "1")
    assert code == 0
    assert [e["lambda"] for e in json.loads(out)] == [[1, 4, 1, 6], [1, 4, 25, 30]]


def test_verify_appendix(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "appendix", "--n", "4", "--m", "2")
    assert code == 0
    assert out.rstrip().endswith("all checks passed")
    assert "FAIL " not in out
