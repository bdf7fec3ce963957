from __future__ import annotations

import io
import json
import shutil
import subprocess
import sys

import pytest

from helpers import FIGURE_EIGHT_PD, LEFT_TREFOIL_PD, MINIMAL_PLAT
from twistvol.cli import main
from twistvol.report import sample_corpus_path


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "fig8.pd": FIGURE_EIGHT_PD,
        "trefoil.pd": LEFT_TREFOIL_PD,
        "bad.pd": "X(1,2,3,4)",
        "plat.txt": MINIMAL_PLAT.to_text(),
        "mixed.txt": "3 1; -3 -3; -2 -2 -2; -3 3",
        "badplat.txt": "3 1\n-3 -3\n",
        "kink.pd": "X(1,2,2,1)",
    }.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


class TestAnalyze:
    def test_pd(self, files, capsys):
        code, out, _ = run(["analyze", "--pd", files["fig8.pd"]], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["census"]["t"] == 2 and data["diagram"]["name"] == "fig8"

    def test_plat_with_json_file(self, files, tmp_path, capsys):
        target = tmp_path / "out.json"
        code, out, _ = run(["analyze", "--plat", files["plat.txt"], "--json", str(target)], capsys)
        assert code == 0
        assert "t=7 st=0 -chi=5 ok" in out
        data = json.loads(target.read_text())
        assert data["chi_neg"] == 5

    def test_oracle_flag(self, files, capsys):
        code, out, _ = run(["analyze", "--pd", files["fig8.pd"], "--oracle"], capsys)
        assert code == 0 and json.loads(out)["oracle"]["match"] is True

    def test_falsified_volume(self, files, capsys):
        code, _, err = run(["analyze", "--plat", files["plat.txt"], "--volume", "1.0"], capsys)
        assert code == 1
        assert "falsified" in err

    def test_malformed_pd(self, files, capsys):
        code, out, _ = run(["analyze", "--pd", files["bad.pd"]], capsys)
        assert code == 2
        assert "exactly twice" in json.loads(out)["error"]

    def test_missing_file(self, tmp_path, capsys):
        code, out, _ = run(["analyze", "--pd", str(tmp_path / "nope.pd")], capsys)
        assert code == 2 and "cannot read" in json.loads(out)["error"]

    def test_source_needs_volume(self, files, capsys):
        code, out, _ = run(["analyze", "--pd", files["fig8.pd"], "--source", "x"], capsys)
        assert code == 2

    def test_stdin(self, monkeypatch, capsys):
        monkeypatch.setattr(sys, "stdin", io.StringIO(FIGURE_EIGHT_PD))
        code, out, _ = run(["analyze", "--pd", "-"], capsys)
        assert code == 0 and json.loads(out)["diagram"]["crossings"] == 4

    def test_deterministic(self, files, capsys):
        _, first, _ = run(["analyze", "--plat", files["plat.txt"]], capsys)
        _, second, _ = run(["analyze", "--plat", files["plat.txt"]], capsys)
        assert first == second


class TestGenPlat:
    def test_strongly_negative(self, files, capsys):
        code, out, _ = run(["gen-plat", "--spec", files["plat.txt"], "--expect", "strongly-negative"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["verdicts"]["t"] == 7 and all(data["claims"].values())

    def test_mixed(self, files, capsys):
        code, out, _ = run(["gen-plat", "--spec", files["mixed.txt"], "--expect", "mixed-sign"], capsys)
        assert code == 0 and json.loads(out)["verdicts"]["st"] == 1

    def test_family_mismatch(self, files, capsys):
        code, _, _ = run(["gen-plat", "--spec", files["mixed.txt"], "--expect", "strongly-negative"], capsys)
        assert code == 2

    def test_bad_spec(self, files, capsys):
        code, _, _ = run(["gen-plat", "--spec", files["badplat.txt"]], capsys)
        assert code == 2


class TestOracle:
    def test_match(self, files, capsys):
        code, out, _ = run(["oracle", "--pd", files["trefoil.pd"]], capsys)
        data = json.loads(out)
        assert code == 0
        assert (data["expected"], data["observed"], data["match"]) == (1, 1, True)
        assert data["crossings"] == 3

    def test_kink(self, files, capsys):
        code, out, _ = run(["oracle", "--pd", files["kink.pd"]], capsys)
        assert code == 2 and "adequate" in json.loads(out)["error"]

    def test_limit(self, files, capsys):
        code, _, _ = run(["oracle", "--pd", files["fig8.pd"], "--max-crossings", "3"], capsys)
        assert code == 2


class TestBatch:
    def test_sample(self, tmp_path, capsys):
        code, out, _ = run(["batch", "--corpus", str(sample_corpus_path()), "--out", str(tmp_path)], capsys)
        assert code == 0
        assert "sandwich 100.0%" in out
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["records"] == 10

    def test_empty(self, tmp_path, capsys):
        corpus = tmp_path / "empty.csv"
        corpus.write_text("id,kind,payload,known_volume,source\n")
        code, _, _ = run(["batch", "--corpus", str(corpus), "--out", str(tmp_path / "o")], capsys)
        assert code == 0

    def test_malformed_row(self, tmp_path, capsys):
        corpus = tmp_path / "c.csv"
        corpus.write_text(
            "id,kind,payload,known_volume,source\n"
            f'ok,pd,"{FIGURE_EIGHT_PD}",,\n'
            'broken,pd,"X(1,2",,\n'
        )
        code, out, _ = run(["batch", "--corpus", str(corpus), "--out", str(tmp_path / "o"), "--no-oracle"], capsys)
        assert code == 2
        assert "broken" in out
        assert (tmp_path / "o" / "ok.json").exists()

    def test_falsified(self, tmp_path, capsys):
        corpus = tmp_path / "c.csv"
        corpus.write_text(
            "id,kind,payload,known_volume,source\n"
            f'p,plat,"{MINIMAL_PLAT.to_text().strip().replace(chr(10), "; ")}",1.0,wrong\n'
        )
        code, out, _ = run(["batch", "--corpus", str(corpus), "--out", str(tmp_path / "o")], capsys)
        assert code == 1 and "FALSIFIED" in out


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["analyze"]) == 2
    assert main(["--help"]) == 0


@pytest.mark.skipif(shutil.which("twistvol") is None, reason="console script not installed")
def test_console_script(files):
    proc = subprocess.run(["twistvol", "analyze", "--pd", files["fig8.pd"]], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["census"]["t"] == 2


def test_module_entry(files):
    proc = subprocess.run([sys.executable, "-m", "twistvol", "oracle", "--pd", files["fig8.pd"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["match"] is True
