import io
import json
import subprocess
import sys

import pytest

from pebbling import cli
from pebbling.parameters import ParameterReport


def run(*argv: str) -> tuple[int, str]:
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv(cli.CACHE_ENV, raising=False)


class TestSolve:
    def test_solvable(self):
        code, out = run("solve", "--family", "cycle:7", "0,0,0,8,0,0,0@0")
        assert code == 0
        assert "classification: critical" in out and "(3→2)" in out

    def test_insufficient(self):
        code, out = run("solve", "--family", "cycle:7", "0,0,0,5,5,0,0", "--root", "0")
        assert code == 1 and "insufficient" in out

    def test_json(self):
        code, out = run("solve", "--family", "path:3", "0,0,4@0", "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["certificate"] == ["(2→1)", "(2→1)", "(1→0)"]
        assert list(data) == sorted(data)

    def test_dot_and_csv(self):
        assert run("solve", "--family", "path:3", "0,0,4@0", "--format", "dot")[1].startswith("graph G {")
        out = run("solve", "--family", "path:3", "0,0,4@0", "--format", "csv")[1]
        assert out.splitlines()[0] == "distribution,solvable,classification,weight,certificate"

    @pytest.mark.parametrize(
        "argv",
        [
            ["solve", "--family", "cycle:7", "1,2,3"],
            ["solve", "--family", "cycle:7", "0,0,0,0,0,0,1"],
            ["solve", "--family", "cycle:7", "a,b@0"],
            ["solve", "0,1@0"],
            ["solve", "--family", "cycle:2", "0,1@0"],
            ["solve", "--family", "path:2", "--graph", "x", "0,1@0"],
            ["params", "--family", "path:2", "--workers", "0"],
            ["params", "--family", "path:2", "--format", "xml"],
            ["bogus"],
        ],
    )
    def test_usage_errors(self, argv):
        assert run(*argv)[0] == 2


class TestParams:
    def test_graph_file_and_round_trip(self, tmp_path):
        f = tmp_path / "k23.txt"
        f.write_text("5 6\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n")
        code, out = run("params", "--graph", str(f), "--format", "json")
        assert code == 0
        rep = ParameterReport.from_dict(json.loads(out))
        assert rep.row == (5, 5, 4, 4, 5, 4, 3)
        assert rep.dumps() == out

    def test_human_and_csv(self):
        out = run("params", "--family", "complete:5")[1]
        assert "p: 5" in out and "is_thrifty: True" in out
        csv_out = run("params", "--family", "complete:5", "--format", "csv")[1]
        header, row = csv_out.splitlines()
        assert dict(zip(header.split(","), row.split(",")))["c_u"] == "5"

    def test_budget_gives_partial_output(self):
        code, out = run("params", "--family", "fan:8", "--budget", "0.02", "--format", "json")
        assert code == 3
        assert json.loads(out)["partial"] is True

    def test_cache_hit_and_invalidation(self, tmp_path):
        first = run("params", "--family", "cycle:5", "--format", "json", "--cache", str(tmp_path))[1]
        files = list(tmp_path.glob("params-*.json"))
        assert len(files) == 1
        # a cache hit returns the same bytes
        assert run("params", "--family", "cycle:5", "--format", "json", "--cache", str(tmp_path))[1] == first
        # an entry whose stored input differs is ignored
        data = json.loads(files[0].read_text())
        data["graph"] = "5 0\n"
        data["result"]["p"] = 999
        files[0].write_text(json.dumps(data))
        assert run("params", "--family", "cycle:5", "--format", "json", "--cache", str(tmp_path))[1] == first

    def test_cache_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
        run("params", "--family", "path:3")
        assert list(tmp_path.glob("params-*.json"))


class TestSweep:
    @pytest.mark.parametrize("where", ["c_r==3", "is_thrifty==true,c_r!=two_pow_d"])
    def test_empty_filters(self, where):
        code, out = run("sweep", "5", "--where", where, "--format", "json")
        assert code == 0 and json.loads(out)["rows"] == []

    def test_rows(self):
        out = run("sweep", "4", "--format", "csv")[1]
        lines = out.splitlines()
        assert lines[0].split(",")[:3] == ["index", "edges", "p"]
        assert len(lines) == 7

    def test_filter_on_other_key(self):
        data = json.loads(run("sweep", "4", "--where", "c_r==two_pow_d", "--format", "json")[1])
        assert all(r["c_r"] == r["two_pow_d"] for r in data["rows"]) and data["rows"]

    def test_guard_and_bad_filter(self):
        assert run("sweep", "8")[0] == 2
        assert run("sweep", "3", "--where", "p~3")[0] == 2
        assert run("sweep", "3", "--where", "nope==1")[0] == 2

    def test_workers_are_deterministic(self):
        one = run("sweep", "4", "--format", "json", "--workers", "1")[1]
        two = run("sweep", "4", "--format", "json", "--workers", "2")[1]
        assert one == two


class TestReconstruct:
    def test_writes_files(self, tmp_path):
        code, out = run("reconstruct", "G3", "--out", str(tmp_path / "g"), "--cache", str(tmp_path / "c"))
        assert code == 0 and "all constraints hold" in out
        assert (tmp_path / "g" / "G3_1.txt").read_text().startswith("6 8\n")
        report = json.loads((tmp_path / "g" / "G3_1.json").read_text())
        assert report["ok"] and report["constraints_version"] == 1
        # second run is served from the cache
        again = run("reconstruct", "G3", "--out", str(tmp_path / "g2"), "--cache", str(tmp_path / "c"))
        assert again == (code, out.replace(str(tmp_path / "g"), str(tmp_path / "g2")))

    def test_empty_result(self, tmp_path, monkeypatch):
        from pebbling import reconstruct

        monkeypatch.setattr(reconstruct, "reconstruct", lambda name, deadline: [])
        code, out = run("reconstruct", "G3", "--out", str(tmp_path))
        assert code == 4 and "no graph" in out

    def test_unknown_name(self):
        assert run("reconstruct", "G9")[0] == 2


def test_verify_subset():
    code, out = run("verify", "--only", "stars")
    assert code == 0 and out.startswith("PASS [stars]")
    assert run("verify", "--only", "nonsense")[0] == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pebbling.cli", "solve", "--family", "path:2", "2,0@1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "solvable: yes" in proc.stdout
