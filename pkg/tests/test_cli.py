import io
import json

import pytest

from tabmatch.cli import run


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_match():
    assert _run("match", "ac|a*b", "ab") == (0, "match\n", "")
    assert _run("match", "ac|a*b", "abc")[:2] == (1, "no match\n")


def test_syntax_error_reports_offset():
    code, out, err = _run("match", "((", "x")
    assert code == 2 and out == "" and "offset 1" in err


def test_editdist():
    assert _run("editdist", "kitten", "sitting")[:2] == (0, "3\n")


def test_amatch():
    assert _run("amatch", "-d", "1", "ac|a*b", "abc")[:2] == (0, "match\n")
    assert _run("amatch", "-d", "0", "ac|a*b", "abc")[0] == 1


@pytest.mark.parametrize("argv", [
    ["match", "a(b|c)*", "abcb"], ["match", "a(b|c)*", "abd"], ["amatch", "-d", "2", "(ab)*", "abba"],
    ["amatch", "-d", "0", "x", "y"], ["editdist", "flaw", "lawn"], ["match", "a|", "a"],
])
def test_engines_identical(argv):
    a = _run(*argv, "--engine", "tabulated")
    b = _run(*argv, "--engine", "naive")
    assert a == b


def test_file_inputs(tmp_path):
    (tmp_path / "p.txt").write_text("ac|a*b\n")
    (tmp_path / "q.txt").write_text("aab\n")
    assert _run("match", f"@{tmp_path / 'p.txt'}", f"@{tmp_path / 'q.txt'}")[0] == 0
    code, _, err = _run("match", "a", f"@{tmp_path / 'missing'}")
    assert code == 2 and "cannot read" in err


def test_bad_flags_exit_2():
    assert _run("match", "-k", "8", "a", "a")[0] == 2
    assert _run("amatch", "-d", "-1", "a", "a")[0] == 2
    assert _run("nosuch")[0] == 2


def test_json_output_schema():
    code, out, _ = _run("match", "--json", "a*", "aa")
    obj = json.loads(out)
    assert code == 0 and obj == {"match": True, "result": "match"}
    obj = json.loads(_run("editdist", "--json", "ab", "ba")[1])
    assert obj == {"distance": 2}


def test_output_file(tmp_path):
    out = tmp_path / "o.txt"
    assert _run("editdist", "-o", str(out), "ab", "b")[:2] == (0, "")
    assert out.read_text() == "1\n"


@pytest.mark.parametrize("engine", ["full", "successor", "hybrid"])
def test_subseq_index_and_query(tmp_path, engine):
    text = tmp_path / "t.txt"
    text.write_text("abracadabra\n")
    idx = tmp_path / "t.idx"
    assert _run("subseq", "index", str(text), "-o", str(idx), "--index-engine", engine)[0] == 0
    assert _run("subseq", "query", str(idx), "aaaaa")[:2] == (0, "match\n")
    assert _run("subseq", "query", str(idx), "aaaaaa")[:2] == (1, "no match\n")
    assert _run("subseq", "query", "--engine", "naive", str(idx), "rcd")[0] == 0
    bad = tmp_path / "bad.idx"
    bad.write_bytes(b"junk")
    assert _run("subseq", "query", str(bad), "a")[0] == 2


def test_subseq_index_needs_output(tmp_path):
    text = tmp_path / "t.txt"
    text.write_text("abc")
    assert _run("subseq", "index", str(text))[0] == 2


def test_table_cache_file(tmp_path):
    path = tmp_path / "tables.bin"
    assert _run("match", "--table-cache", str(path), "(a|b)*c", "abac")[0] == 0
    assert path.exists()
    assert _run("match", "--table-cache", str(path), "(a|b)*c", "abab")[0] == 1


@pytest.mark.parametrize("suite", ["exact", "approx", "editdist", "subseq"])
def test_bench_rows(suite):
    code, out, _ = _run("bench", suite, "--size", "40", "-k", "16")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert {r["engine"] for r in rows} >= {"naive"}
    for r in rows:
        assert {"engine", "m", "n", "k", "ns_per_char", "bytes", "words"} <= r.keys()
        assert r["words"] <= r["budget_words"] == 1 << 16
