import json
import subprocess
import sys

import pytest

from splitcircle.catalog import make_fsc
from splitcircle.cli import main
from splitcircle.graph import Graph, format_graph, parse_graph
from splitcircle.recognize import Verdict


@pytest.fixture
def write(tmp_path):
    def _write(g, name="g.txt"):
        p = tmp_path / name
        p.write_text(format_graph(g))
        return str(p)

    return _write


def test_recognize_circle(write, tent, capsys):
    assert main(["recognize", write(tent)]) == 0
    out = capsys.readouterr().out.strip()
    assert json.loads(out)["status"] == "Circle"
    assert Verdict.from_json(out).to_json() == out


def test_recognize_not_circle(write, capsys):
    assert main(["recognize", write(make_fsc("F1", 5).graph)]) == 2
    assert json.loads(capsys.readouterr().out)["witness"]["family"] == "F1"


def test_recognize_not_split(write, capsys):
    assert main(["recognize", write(Graph.cycle(4))]) == 3
    assert json.loads(capsys.readouterr().out)["status"] == "NotSplit"


def test_errors_exit_one(tmp_path, capsys):
    assert main(["recognize", str(tmp_path / "missing.txt")]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("2 5\n0 1\n")
    assert main(["recognize", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_witness(write, tent, capsys):
    assert main(["witness", write(tent)]) == 0
    assert capsys.readouterr().out.strip() == "null"
    assert main(["witness", write(make_fsc("TentJoinK1").graph)]) == 2
    assert json.loads(capsys.readouterr().out)["family"] == "TentJoinK1"


def test_model_and_render(write, tent, tmp_path, capsys):
    assert main(["model", write(tent)]) == 0
    word = capsys.readouterr().out
    mfile = tmp_path / "m.txt"
    mfile.write_text(word)
    assert main(["render", str(mfile)]) == 0
    assert capsys.readouterr().out.count('class="chord"') == 6
    out = tmp_path / "t.svg"
    assert main(["render", "--graph", write(tent), "-o", str(out)]) == 0
    assert out.read_text().count('class="arc"') == 12
    assert main(["model", write(make_fsc("F0").graph)]) == 2


def test_catalog_sidecar(tmp_path, capsys):
    out = tmp_path / "f1.txt"
    assert main(["catalog", "F1", "5", "-o", str(out)]) == 0
    g = parse_graph(out.read_text())
    side = json.loads((tmp_path / "f1.txt.json").read_text())
    assert side["family"] == "F1" and side["k"] == 5 and len(side["K"]) + len(side["S"]) == g.n
    assert main(["catalog", "TentJoinK1"]) == 0
    cap = capsys.readouterr()
    assert parse_graph(cap.out).n == 7 and json.loads(cap.err)["family"] == "TentJoinK1"
    assert main(["catalog", "F1"]) == 1
    assert main(["catalog", "F1", "4"]) == 1


def test_stdin_and_console_script(tent):
    proc = subprocess.run([sys.executable, "-m", "splitcircle.cli", "recognize", "-"], input=format_graph(tent),
                          capture_output=True, text=True)
    assert proc.returncode == 0 and '"status":"Circle"' in proc.stdout
