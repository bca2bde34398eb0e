"""CLI tests: commands, exit codes, determinism, output formats."""

import json
import os
import shutil
from pathlib import Path

import pytest

from gxjoin.cli import main

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture()
def scenario_files(tmp_path):
    for name in ("two_block_join.json", "dihedral_rook.json", "cube_quaternion.json"):
        shutil.copy(SCENARIOS / name, tmp_path / name)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBuild:
    def test_two_block_dot(self, capsys, scenario_files):
        code, out, _ = run(capsys, "build", scenario_files / "two_block_join.json",
                           "--out", "dot")
        assert code == 0
        assert out.count(" -- ") == 17
        assert out.count(";") == 7 + 17

    def test_dihedral_rook_json(self, capsys, scenario_files):
        code, out, _ = run(capsys, "build", scenario_files / "dihedral_rook.json",
                           "--out", "json")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["vertices"]) == 18
        assert len(doc["edges"]) == 63

    def test_output_file_and_fibers(self, capsys, scenario_files, tmp_path):
        target = tmp_path / "w.json"
        fibers = tmp_path / "fibers"
        code, _, _ = run(capsys, "build", scenario_files / "two_block_join.json",
                         "--output", target, "--fibers-dir", fibers)
        assert code == 0
        assert json.loads(target.read_text())["vertices"]
        assert sorted(p.name for p in fibers.iterdir()) == ["X.json", "Xp.json"]

    def test_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, out, err = run(capsys, "build", bad)
        assert code == 3
        assert "error" in err and not out

    def test_unknown_key_rejected(self, capsys, tmp_path):
        doc = json.loads((SCENARIOS / "dihedral_rook.json").read_text())
        doc["surprise"] = 1
        p = tmp_path / "s.json"
        p.write_text(json.dumps(doc))
        code, _, err = run(capsys, "build", p)
        assert code == 3 and "unknown keys" in err


class TestSynth:
    def test_cube_quaternion_theorem(self, capsys, scenario_files):
        code, out, _ = run(capsys, "synth", scenario_files / "cube_quaternion.json",
                           "--mode", "theorem")
        assert code == 0
        rep = json.loads(out)
        assert rep["connection_size"] == 6
        assert rep["regular_order"] == 16

    def test_dihedral_rook_theorem_exits_2(self, capsys, scenario_files):
        code, out, err = run(capsys, "synth", scenario_files / "dihedral_rook.json",
                             "--mode", "theorem")
        assert code == 2
        assert not out  # no partial certificate
        assert "hypotheses" in err

    def test_dihedral_rook_search(self, capsys, scenario_files):
        code, out, _ = run(capsys, "synth", scenario_files / "dihedral_rook.json",
                           "--mode", "search")
        assert code == 0
        rep = json.loads(out)
        assert rep["connection_size"] == 7
        assert rep["regular_order"] == 18

    def test_budget_zero_exits_4(self, capsys, tmp_path):
        doc = json.loads((SCENARIOS / "dihedral_rook.json").read_text())
        doc["budget"] = 0
        p = tmp_path / "s.json"
        p.write_text(json.dumps(doc))
        code, out, err = run(capsys, "synth", p)
        assert code == 4 and not out and "synthesis failed" in err

    def test_report_file(self, capsys, scenario_files, tmp_path):
        report = tmp_path / "cert.json"
        code, _, _ = run(capsys, "synth", scenario_files / "cube_quaternion.json",
                         "--report", report)
        assert code == 0
        assert json.loads(report.read_text())["regular_order"] == 16

    def test_determinism_modulo_timing(self, capsys, scenario_files, tmp_path):
        r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "synth", scenario_files / "dihedral_rook.json", "--report", r1)
        run(capsys, "synth", scenario_files / "dihedral_rook.json", "--report", r2)
        d1, d2 = json.loads(r1.read_text()), json.loads(r2.read_text())
        d1["timing_ms"] = d2["timing_ms"] = 0
        assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


class TestVerify:
    def test_dihedral_rook_passes(self, capsys, scenario_files):
        code, out, _ = run(capsys, "verify", scenario_files / "dihedral_rook.json")
        assert code == 0
        assert "aut_containment      PASS" in out
        assert "vertex_transitive    PASS" in out

    def test_two_block_reports_not_transitive(self, capsys, scenario_files):
        code, out, _ = run(capsys, "verify", scenario_files / "two_block_join.json")
        assert code == 0
        assert "vertex_transitive    false" in out

    def test_oversized_exits_5(self, capsys, tmp_path):
        doc = {
            "kind": "cayley_scenario",
            "base_group": {"kind": "cyclic", "order": 600},
            "base_connection": ["g", "g599"],
            "subgroup_generators": [],
            "fiber_group": {"kind": "cyclic", "order": 1},
            "fiber_connection": [],
            "theta": {},
        }
        p = tmp_path / "big.json"
        p.write_text(json.dumps(doc))
        code, out, err = run(capsys, "verify", p)
        assert code == 5 and "cap" in err


class TestAutAndExport:
    def test_aut_square(self, capsys, tmp_path):
        g = tmp_path / "c4.json"
        g.write_text(json.dumps({"vertices": ["a", "b", "c", "d"],
                                 "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]}))
        code, out, _ = run(capsys, "aut", g)
        assert code == 0
        rep = json.loads(out)
        assert rep["order"] == 8
        assert rep["vertex_transitive"] is True
        assert len(rep["elements"]) == 8

    def test_export_roundtrip(self, capsys, tmp_path):
        g = tmp_path / "p3.json"
        doc = {"vertices": ["u", "v", "w"], "edges": [[0, 1], [1, 2]]}
        g.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "export", g, "--format", "edgelist")
        assert code == 0
        assert out == "u v\nv w\n"
        code, out, _ = run(capsys, "export", g, "--format", "json")
        assert json.loads(out) == {"vertices": ["u", "v", "w"],
                                   "edges": [[0, 1], [1, 2]]}

    def test_env_caps_override(self, capsys, tmp_path, monkeypatch):
        g = tmp_path / "c4.json"
        g.write_text(json.dumps({"vertices": ["a", "b", "c", "d"],
                                 "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]}))
        monkeypatch.setenv("XJOIN_CAPS", "aut_vertices=2")
        code, _, err = run(capsys, "aut", g)
        assert code == 5 and "cap" in err

    def test_env_caps_malformed(self, capsys, tmp_path, monkeypatch):
        g = tmp_path / "g.json"
        g.write_text(json.dumps({"vertices": ["a"], "edges": []}))
        monkeypatch.setenv("XJOIN_CAPS", "nonsense")
        code, _, err = run(capsys, "aut", g)
        assert code == 3
