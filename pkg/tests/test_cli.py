import json
import subprocess
import sys

import pytest

from frechet_range import Engine, load_database, load_queries, naive_scan
from frechet_range.cli import EXIT_DATA, EXIT_OK, EXIT_SELFTEST, EXIT_USAGE, main


@pytest.fixture(scope="module")
def data_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("gen")
    assert main(["gen", "--out", str(out), "--count", "120", "--seed", "3",
                 "--queries", "8", "--k", "0,1,3"]) == EXIT_OK
    return out


def test_gen_writes_database_and_queries(data_dir):
    db = load_database(data_dir / "manifest.txt")
    queries = load_queries(data_dir / "queries" / "queries.txt")
    assert len(db) == 120 and len(queries) == 8
    counts = [len(naive_scan(db, q.curve, q.delta)) for q in queries]
    assert counts == [0, 1, 3, 0, 1, 3, 0, 1]


def test_query_text_output(data_dir, capsys, tmp_path):
    sidecar = tmp_path / "t.jsonl"
    code = main(["query", "--db", str(data_dir / "manifest.txt"),
                 "--queries", str(data_dir / "queries" / "queries.txt"), "--timings", str(sidecar)])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert [int(l.split()[1]) for l in lines] == [0, 1, 3, 0, 1, 3, 0, 1]
    assert [int(l.split()[0]) for l in lines] == list(range(8))
    recs = [json.loads(l) for l in sidecar.read_text().splitlines()]
    assert len(recs) == 8 and all("time_exact" in r and "matches" not in r for r in recs)


def test_query_jsonl_threads_match_naive(data_dir, capsys):
    code = main(["query", "--db", str(data_dir / "manifest.txt"), "--queries",
                 str(data_dir / "queries" / "queries.txt"), "--format", "jsonl", "--threads", "3",
                 "--exact", "standard"])
    assert code == EXIT_OK
    db = load_database(data_dir / "manifest.txt")
    queries = load_queries(data_dir / "queries" / "queries.txt")
    out = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    for rec, q in zip(out, queries):
        assert rec["matches"] == naive_scan(db, q.curve, q.delta)


def test_bench_text_and_files(data_dir, capsys, tmp_path):
    code = main(["bench", "--db", str(data_dir / "manifest.txt"), "--k", "0,1", "--per-k", "3",
                 "--out", str(tmp_path / "r.json"), "--records", str(tmp_path / "r.jsonl")])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "total with standard decider" in out
    report = json.loads((tmp_path / "r.json").read_text())
    assert [r["k"] for r in report["rows"]] == [0, 1]
    assert len((tmp_path / "r.jsonl").read_text().splitlines()) == 6


def test_bench_synthetic_jsonl(capsys):
    assert main(["bench", "--synthetic", "150", "--k", "2", "--per-k", "2", "--format", "jsonl"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["database_size"] == 150 and report["rows"][0]["queries"] == 2


def test_bench_starvation_is_data_error(tmp_path, capsys):
    (tmp_path / "a.txt").write_text("0 0\n1 0\n")
    (tmp_path / "b.txt").write_text("0 0\n1 0\n")
    (tmp_path / "m.txt").write_text("a.txt\nb.txt\n")
    code = main(["bench", "--db", str(tmp_path / "m.txt"), "--k", "5", "--per-k", "1"])
    assert code == EXIT_DATA
    assert "k=5" in capsys.readouterr().err


def test_selftest_exit_codes(tmp_path, capsys):
    assert main(["selftest", "--iterations", "200"]) == EXIT_OK
    repro = tmp_path / "fail.json"
    code = main(["selftest", "--iterations", "1000", "--mutate-full-block", "1.01",
                 "--repro", str(repro)])
    assert code == EXIT_SELFTEST
    assert json.loads(repro.read_text())


def test_selftest_python_backend(capsys):
    assert main(["--backend", "python", "selftest", "--iterations", "30"]) == EXIT_OK
    assert "counterexamples: 0" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["query", "--db", "x"],
    ["bench", "--k", "a,b", "--synthetic", "10"],
    ["bench", "--k", "-1", "--synthetic", "10"],
    ["selftest", "--iterations", "0"],
    ["bench", "--db", "x", "--synthetic", "10"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_unknown_profile_is_usage_error(tmp_path, capsys):
    assert main(["gen", "--out", str(tmp_path), "--count", "3", "--profile", "spiral"]) == EXIT_USAGE


def test_missing_files_are_data_errors(tmp_path, capsys):
    code = main(["query", "--db", str(tmp_path / "none.txt"), "--queries", str(tmp_path / "q.txt")])
    assert code == EXIT_DATA
    assert "none.txt" in capsys.readouterr().err


def test_malformed_query_file_is_data_error(data_dir, tmp_path, capsys):
    (tmp_path / "q.txt").write_text("whatever.txt -3\n")
    code = main(["query", "--db", str(data_dir / "manifest.txt"), "--queries", str(tmp_path / "q.txt")])
    assert code == EXIT_DATA


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "frechet_range", "selftest", "--iterations", "20"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert "counterexamples: 0" in proc.stdout
