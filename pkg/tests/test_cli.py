import json

import pytest

from cutcount.cli import REPORT_SCHEMA, main
from cutcount.graphs import parse_graph, serialize_graph
from util_instances import cycle_graph, path_graph

jsonschema = pytest.importorskip("jsonschema")


@pytest.fixture
def p3_file(tmp_path):
    f = tmp_path / "p3.gr"
    f.write_text("p tw 3 2\n1 2\n2 3\n")
    return str(f)


@pytest.fixture
def tree_file(tmp_path):
    f = tmp_path / "tree.gr"
    f.write_text(serialize_graph(path_graph(5), "pace_gr"))
    return str(f)


class TestSolve:
    def test_steiner_yes_exit0(self, p3_file, capsys):
        rc = main(["solve", "steiner", "--graph", p3_file, "--terminals", "1,3", "--k", "3", "--seed", "5"])
        assert rc == 0
        assert "YES" in capsys.readouterr().out

    def test_hamcycle_tree_unknown_exit1(self, tree_file, capsys):
        rc = main(["solve", "hamcycle", "--graph", tree_file, "--seed", "5", "--reps", "6"])
        assert rc == 1
        assert "UNKNOWN" in capsys.readouterr().out

    def test_missing_file_exit2(self, capsys):
        rc = main(["solve", "steiner", "--graph", "/nonexistent.gr", "--terminals", "1", "--k", "1"])
        assert rc == 2

    def test_missing_flag_exit2(self, p3_file):
        rc = main(["solve", "steiner", "--graph", p3_file, "--k", "2"])
        assert rc == 2

    def test_seeded_reproducible(self, tmp_path, capsys):
        f = tmp_path / "rand.gr"
        f.write_text(serialize_graph(cycle_graph(5), "pace_gr"))
        outs = []
        for _ in range(2):
            rc = main(["solve", "fvs", "--graph", str(f), "--k", "2", "--seed", "7", "--json"])
            assert rc == 0
            rep = json.loads(capsys.readouterr().out)
            rep.pop("wall_time_s")
            outs.append(rep)
        assert outs[0] == outs[1]

    def test_json_report_schema(self, p3_file, capsys):
        rc = main(["solve", "steiner", "--graph", p3_file, "--terminals", "1,3", "--k", "3", "--seed", "3", "--json"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        jsonschema.validate(report, REPORT_SCHEMA)

    def test_fpt_solver_with_witness(self, tmp_path, capsys):
        f = tmp_path / "c3.gr"
        f.write_text(serialize_graph(cycle_graph(3), "pace_gr"))
        rc = main(["solve", "fvs3k", "--graph", f.as_posix(), "--k", "1", "--seed", "2", "--json"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["witness"] and len(report["witness"]) == 1

    def test_td_input(self, p3_file, tmp_path, capsys):
        td = tmp_path / "p3.td"
        td.write_text("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
        rc = main(
            ["solve", "steiner", "--graph", p3_file, "--td", str(td), "--terminals", "1,3", "--k", "3", "--seed", "1", "--json"]
        )
        assert rc == 0
        assert json.loads(capsys.readouterr().out)["width"] == 1


class TestVerify:
    def test_small_sweep(self, capsys):
        rc = main(["verify", "steiner", "--count", "6", "--reps", "10", "--seed", "3"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "0 false positives" in out


class TestGenhardDecomposeBench:
    def test_genhard_triple(self, tmp_path, capsys):
        cnf = tmp_path / "sample.cnf"
        cnf.write_text("p cnf 1 1\n1 0\n")
        out = tmp_path / "inst"
        rc = main(["genhard", "--cnf", str(cnf), "--beta", "1", "--out", str(out)])
        assert rc == 0
        for suffix in (".gr", ".td", ".json"):
            assert out.with_suffix(suffix).exists()
        side = json.loads(out.with_suffix(".json").read_text())
        assert side["K"] > 0 and side["witness_edges"]

    def test_decompose_c6(self, tmp_path, capsys):
        f = tmp_path / "c6.gr"
        f.write_text(serialize_graph(cycle_graph(6), "pace_gr"))
        out = tmp_path / "c6.td"
        rc = main(["decompose", "--graph", str(f), "--out", str(out)])
        assert rc == 0
        assert "width 2" in capsys.readouterr().out

    def test_bench_growth(self, capsys):
        rc = main(["bench", "steiner", "--widths", "3:4", "--seed", "1"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "27" in out and "81" in out
