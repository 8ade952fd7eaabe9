import subprocess
import sys

import pytest

from unavoid.cli import EXIT_IO, EXIT_TOO_LARGE, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide_x0(capsys, tmp_set):
    code, out, _ = run(capsys, "decide", tmp_set("a--a\nb--b\na--b\n"), "--exact")
    assert code == 1
    assert out.splitlines()[0] == "Unavoidable (window-graph)"


def test_decide_single_word(capsys, tmp_set):
    # over {a} alone the word is met by a^Z; over {a,b} it is avoided
    code, out, _ = run(capsys, "decide", tmp_set("a--a\n"))
    assert code == 1
    code, out, _ = run(capsys, "decide", tmp_set("k=2\na--a\n"))
    assert code == 0 and out.startswith("Avoidable period 1: b")
    code, out, _ = run(capsys, "decide", tmp_set("a--a\n"), "--k", "2")
    assert code == 0


def test_decide_parse_error(capsys, tmp_set):
    code, _, err = run(capsys, "decide", tmp_set("k=2\nab\nac\n"))
    assert code == EXIT_USAGE and "line 3" in err


def test_decide_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "decide", str(tmp_path / "none.txt"))
    assert code == EXIT_IO


def test_node_cap_precedence(capsys, tmp_set, monkeypatch):
    path = tmp_set("a--a\nb--b\na--b\n")
    monkeypatch.setenv("UNAVOID_MAX_NODES", "4")
    code, _, err = run(capsys, "decide", path, "--exact")
    assert code == EXIT_TOO_LARGE and "cap is 4" in err
    code, _, _ = run(capsys, "decide", path, "--exact", "--max-nodes", "8")
    assert code == 1
    monkeypatch.setenv("UNAVOID_MAX_NODES", "lots")
    code, _, _ = run(capsys, "decide", path)
    assert code == EXIT_USAGE


def test_decide_falls_back_to_search(capsys, tmp_set):
    code, out, _ = run(capsys, "decide", tmp_set("a--a\nb--b\na--b\n"), "--max-nodes", "4", "--period-max", "5")
    assert code == 2 and out.startswith("Unknown")


def test_x2(capsys):
    code, out, _ = run(capsys, "x2", "--m", "12", "--x1", "6", "--y1", "3")
    assert code == 0
    words = [l for l in out.splitlines() if l and not l.startswith(("#", "k="))]
    assert len(words) == 6
    assert "# region=true" in out
    assert "T1.R3" in out


def test_x2_range_error(capsys):
    code, _, err = run(capsys, "x2", "--m", "5", "--x1", "9")
    assert code == EXIT_USAGE and "x1=9" in err


def test_x2_eq2(capsys):
    code, out, _ = run(capsys, "x2", "--m", "5", "--x1", "0", "--y1", "1", "--eq2")
    assert code == 0 and "b-c-c" in out and "aa--a" in out and "y2=1" in out
    code2, out2, _ = run(capsys, "x2eq2", "--m", "5", "--x1", "0", "--y1", "1")
    assert out2 == out


def test_holes(capsys):
    code, out, _ = run(capsys, "holes", "--k", "3", "--m", "7")
    assert code == 0
    assert out.startswith("H = 23 (conditional on") and out.rstrip().endswith("max_fill = 7")
    _, out, _ = run(capsys, "holes", "--k", "2", "--m", "6")
    assert out.startswith("H = 7 ")
    code, _, _ = run(capsys, "holes", "--k", "1", "--m", "6")
    assert code == EXIT_USAGE


def test_reduce(capsys, tmp_set):
    code, out, _ = run(capsys, "reduce", tmp_set("ab--\nc\n"), "--ops", "hole-truncation")
    assert code == 0
    words = {l for l in out.splitlines() if l and not l.startswith(("#", "k="))}
    assert words == {"ab", "c"}
    assert "# hole-truncation: remove ab--" in out
    code, _, _ = run(capsys, "reduce", tmp_set("ab\n"), "--ops", "nonsense")
    assert code == EXIT_USAGE


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "prop3", "--m-max", "8")
    assert code == 0 and "pass" in out
    with pytest.raises(SystemExit) as e:
        main(["verify", "nonsense"])
    assert e.value.code == EXIT_USAGE


def test_sweep_and_summarize(capsys, tmp_path):
    out_path = str(tmp_path / "s.tsv")
    code, out, _ = run(capsys, "sweep", "--m-max", "12", "--out", out_path)
    assert code == 0 and "unknown: 0" in out and "uncovered m=10 x1=4 y1=1" in out
    code, out2, _ = run(capsys, "summarize", out_path, "--sample", "1")
    assert code == 0 and "total: 70" in out2 and "re-verified: 70" in out2


def test_output_is_stable(capsys, tmp_set):
    path = tmp_set("a---a\nb---b\nc---c\na-b-b\nb-b-c\na---c\n")
    first = run(capsys, "decide", path)
    assert run(capsys, "decide", path) == first


def test_module_entry_point(tmp_set):
    path = tmp_set("a--a\nb--b\na--b\n")
    p = subprocess.run([sys.executable, "-m", "unavoid", "decide", path], capture_output=True, text=True)
    assert p.returncode == 1 and p.stdout.startswith("Unavoidable")
