import json
import subprocess
import sys

import numpy as np
import pytest

from blockiep.cli import DEMO_NAMES, parse_graph, parse_spectrum, run
from blockiep.graphs import blowup, clique_path, lollipop, path


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def payload(capsys, *argv):
    code, out, _ = call(capsys, *argv)
    return code, json.loads(out)


class TestParsing:
    def test_families(self):
        assert parse_graph("lollipop:6,3")[0] == lollipop(6, 3)
        assert parse_graph("clique_path:2,3,2")[0] == clique_path(2, 3, 2)
        assert parse_graph("g150")[0] == blowup(path(4), [2, 1, 2, 1]).graph

    def test_blowup_syntax(self):
        assert parse_graph("blowup:path:4@2,1,2,1")[0] == blowup(path(4), [2, 1, 2, 1]).graph

    def test_edges_syntax(self):
        assert parse_graph("edges:3;0-1,1-2")[0] == path(3)

    def test_spectrum_powers(self):
        assert parse_spectrum("5^2,1,2") == [5.0, 5.0, 1.0, 2.0]

    @pytest.mark.parametrize("text", ["nosuch:3", "path:x", "path:0", "edges:2;0-5"])
    def test_bad_graph(self, text):
        with pytest.raises(ValueError, match="--graph"):
            parse_graph(text)

    @pytest.mark.parametrize("text", ["", "1,,2", "a", "1^0", "nan"])
    def test_bad_spectrum(self, text):
        with pytest.raises(ValueError, match="--spectrum"):
            parse_spectrum(text)


class TestRealize:
    def test_lollipop(self, capsys):
        code, data = payload(capsys, "realize", "--graph", "lollipop:6,3",
                             "--spectrum", "1,2,3,4,5,5,5,5,5", "--seed", "7")
        assert code == 0
        assert data["status"] == "realized"
        assert data["spectral_deviation"] < 1e-6
        assert data["pattern_ok"]

    def test_lollipop_infeasible(self, capsys):
        code, data = payload(capsys, "realize", "--graph", "lollipop:6,3",
                             "--spectrum", "1,2,3,4^6")
        assert code == 2
        assert data["status"] == "infeasible"
        assert "5" in data["message"]

    def test_not_certified(self, capsys):
        code, data = payload(capsys, "realize", "--graph", "clique_path:2,3,3,2",
                             "--spectrum", "9^3,1,2,3,4")
        assert code == 3
        assert data["status"] == "not certified"

    def test_length_mismatch(self, capsys):
        code, _, err = call(capsys, "realize", "--graph", "path:3", "--spectrum", "1,2")
        assert code == 1
        assert "--spectrum" in err

    def test_missing_argument(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["realize", "--graph", "path:3"])
        assert exc.value.code == 1

    def test_trace_and_out(self, capsys, tmp_path):
        out = tmp_path / "cert.json"
        trace = tmp_path / "trace.jsonl"
        code, _, _ = call(capsys, "realize", "--graph", "g94", "--spectrum", "5^2,1,2,3,4",
                          "--out", str(out), "--trace", str(trace))
        assert code == 0
        rows = [json.loads(line) for line in trace.read_text().splitlines()]
        assert rows and {"iteration", "spectral_residual"} == set(rows[0])
        code, data = payload(capsys, "verify", "--certificate", str(out))
        assert code == 0 and data["valid"]

    def test_tampered_certificate(self, capsys, tmp_path):
        out = tmp_path / "cert.json"
        call(capsys, "realize", "--graph", "g94", "--spectrum", "5^2,1,2,3,4", "--out", str(out))
        data = json.loads(out.read_text())
        data["target_spectrum"][0] += 0.1
        out.write_text(json.dumps(data))
        code, report = payload(capsys, "verify", "--certificate", str(out))
        assert code == 3 and not report["checks"]["spectrum"]

    def test_route_override(self, capsys):
        code, data = payload(capsys, "realize", "--graph", "g117",
                             "--spectrum=-1^3,0,1,2", "--route", "blowup")
        assert code == 0 and data["route"] == "blowup"


class TestOtherCommands:
    def test_ssp_star(self, capsys):
        code, data = payload(capsys, "ssp", "--graph", "star:5", "--matrix", "adjacency")
        assert code == 0
        assert data["has_ssp"] is False
        assert data["witness"] is not None and data["witness_verified"]

    def test_ssp_wrt(self, capsys):
        code, data = payload(capsys, "ssp", "--graph", "path:3", "--matrix", "adjacency",
                             "--wrt", "complete:3")
        assert code == 0 and data["has_ssp"]

    def test_feasible_open_case(self, capsys):
        code, data = payload(capsys, "feasible", "--graph", "clique_path:2,3,3,2",
                             "--mults", "3,1,1,1,1")
        assert code == 3
        assert data["verdict"] == "not certified"

    def test_feasible_certified(self, capsys):
        code, data = payload(capsys, "feasible", "--graph", "corona:3", "--mults", "2,1,1,1,1")
        assert code == 0
        assert data["verdict"] == "certified"
        assert set(data["witness"]) >= {"block", "k", "refinement"}

    def test_feasible_threshold_infeasible(self, capsys):
        code, data = payload(capsys, "feasible", "--graph", "clique_path:2,2,2",
                             "--spectrum", "1,1,2,3")
        assert code == 2 and data["verdict"] == "infeasible"

    def test_feasible_bad_mults(self, capsys):
        code, _, err = call(capsys, "feasible", "--graph", "path:3", "--mults", "2,2")
        assert code == 1 and "--mults" in err

    def test_verify_triple(self, capsys):
        code, data = payload(capsys, "verify", "--graph", "complete:2", "--matrix",
                             "[[1,1],[1,1]]", "--spectrum", "0,2")
        assert code == 0 and data["valid"]

    def test_verify_bad_triple(self, capsys):
        code, data = payload(capsys, "verify", "--graph", "complete:2", "--matrix",
                             "[[1,1],[1,1]]", "--spectrum", "0,3")
        assert code == 3 and not data["valid"]

    def test_demo_names(self):
        assert set(DEMO_NAMES) >= {"g94", "g117", "g130", "g150", "lollipop63", "barbell623", "star-ssp"}

    @pytest.mark.parametrize("name", ["g94", "star-ssp", "lollipop63"])
    def test_demo(self, capsys, name):
        code, _ = payload(capsys, "demo", name)
        assert code == 0

    def test_unknown_demo(self, capsys):
        code, _, err = call(capsys, "demo", "nope")
        assert code == 1 and "demo" in err


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "blockiep", "realize", "--graph", "barbell:6,2,3",
            "--spectrum", "1,2,3,4,5,6,7,7,7,7,7", "--seed", "11"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    data = json.loads(first)
    assert data["status"] == "realized"
    assert np.isfinite(data["spectral_deviation"])
