"""Command-line interface: exit codes, JSON schema, file round trips."""

import json

import pytest

from contractvc import build_graph
from contractvc.cli import main
from contractvc.graph import read_graph_text, write_edges_text, write_graph_text


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.graph"
    path.write_text(write_graph_text(build_graph(3, [(0, 1), (1, 2), (0, 2)])))
    return str(path)


@pytest.fixture
def p3_file(tmp_path):
    path = tmp_path / "p3.graph"
    path.write_text(write_graph_text(build_graph(3, [(0, 1), (1, 2)])))
    return str(path)


class TestSolveCommand:
    def test_yes_exit_zero(self, k3_file, capsys):
        assert main(["solve", k3_file, "-k", "1", "-d", "1"]) == 0
        out = capsys.readouterr().out
        assert "verdict: YES" in out and "witness:" in out

    def test_no_exit_one(self, p3_file):
        assert main(["solve", p3_file, "-k", "1", "-d", "1"]) == 1

    def test_bad_budget_exit_two(self, k3_file, capsys):
        assert main(["solve", k3_file, "-k", "-1", "-d", "1"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exit_two(self):
        assert main(["solve", "/nonexistent.graph", "-k", "1", "-d", "1"]) == 2

    def test_json_schema(self, k3_file, capsys):
        assert main(["solve", k3_file, "-k", "1", "-d", "1", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == "YES"
        assert report["k"] == 1 and report["d"] == 1
        assert report["witness_edges"] and len(report["witness_edges"][0]) == 2
        assert set(report) >= {
            "verdict",
            "k",
            "d",
            "witness_edges",
            "vc_before",
            "vc_after",
            "branch_taken",
            "stats",
            "elapsed_sec",
        }
        assert json.loads(json.dumps(report)) == report

    def test_no_witness_flag(self, k3_file, capsys):
        assert main(["solve", k3_file, "-k", "1", "-d", "1", "--no-witness", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["witness_edges"] is None

    def test_brute_agrees(self, k3_file, p3_file, capsys):
        for path in (k3_file, p3_file):
            for k, d in ((1, 1), (2, 1), (2, 2)):
                args = [path, "-k", str(k), "-d", str(d)]
                assert main(["solve"] + args) == main(["solve", "--brute"] + args)
        capsys.readouterr()

    def test_threads_identical_output(self, k3_file, capsys):
        main(["solve", k3_file, "-k", "1", "-d", "1", "--json"])
        one = json.loads(capsys.readouterr().out)
        main(["solve", k3_file, "-k", "1", "-d", "1", "--json", "--threads", "4"])
        four = json.loads(capsys.readouterr().out)
        one.pop("elapsed_sec"), four.pop("elapsed_sec")
        assert one == four

    def test_condensation_dump(self, tmp_path, capsys):
        g = build_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        path = tmp_path / "g.graph"
        path.write_text(write_graph_text(g))
        dump = tmp_path / "cond.txt"
        main(["solve", str(path), "-k", "2", "-d", "2", "--dump-condensation", str(dump)])
        capsys.readouterr()
        assert dump.exists()


class TestOracleAndVerify:
    def test_oracle_command(self, p3_file):
        assert main(["oracle", p3_file, "-k", "1", "-d", "1"]) == 1
        assert main(["oracle", p3_file, "-k", "2", "-d", "1"]) == 0

    def test_verify_good_witness(self, k3_file, tmp_path, capsys):
        w = tmp_path / "w.edges"
        w.write_text(write_edges_text([(0, 1)]))
        assert main(["verify", k3_file, "-k", "1", "-d", "1", str(w)]) == 0
        assert "OK" in capsys.readouterr().out

    def test_verify_insufficient_witness(self, p3_file, tmp_path, capsys):
        w = tmp_path / "w.edges"
        w.write_text(write_edges_text([(0, 1)]))
        assert main(["verify", p3_file, "-k", "1", "-d", "1", str(w)]) == 1
        assert "INVALID" in capsys.readouterr().out

    def test_verify_unknown_edge(self, p3_file, tmp_path):
        w = tmp_path / "w.edges"
        w.write_text("e 1 3\n")
        assert main(["verify", p3_file, "-k", "1", "-d", "1", str(w)]) == 2


class TestGenCommand:
    def test_np_hard_sidecar(self, tmp_path, capsys):
        out = tmp_path / "inst"
        assert main(["gen", "np-hard", "--q", "1", "--ell", "1", "--seed", "3", "--out", str(out)]) == 0
        capsys.readouterr()
        sidecar = json.loads((tmp_path / "inst.json").read_text())
        assert sidecar["k"] == 4 and sidecar["d"] == 4
        assert sidecar["construction"] == "np-hard"
        assert "V[#]" in sidecar["named_vertices"]
        g = read_graph_text((tmp_path / "inst.graph").read_text())
        assert g.n == 10

    def test_bipartite_kind(self, tmp_path, capsys):
        out = tmp_path / "bip"
        assert main(
            ["gen", "bipartite", "--nx", "2", "--ny", "3", "--p", "0.5", "--seed", "1", "--out", str(out)]
        ) == 0
        capsys.readouterr()
        sidecar = json.loads((tmp_path / "bip.json").read_text())
        assert sidecar["named_vertices"]["cover"] == [0, 1]

    def test_graph_file_round_trips(self, tmp_path, capsys):
        out = tmp_path / "chain"
        main(["gen", "cvc-chain", "--q", "1", "--seed", "0", "--out", str(out)])
        capsys.readouterr()
        text = (tmp_path / "chain.graph").read_text()
        assert write_graph_text(read_graph_text(text)) == text


def test_crosscheck_clean(capsys):
    assert main(["crosscheck", "--max-n", "5", "--budget", "6", "--seed", "2"]) == 0
    assert "0 failures" in capsys.readouterr().out
