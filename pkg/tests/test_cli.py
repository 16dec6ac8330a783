import json
import subprocess
import sys

import pytest

from frobenius.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_timing(text):
    report = json.loads(text)
    report.pop("elapsed", None)
    return report


class TestTest:
    def test_prime(self, capsys):
        code, out, _ = run(capsys, "test", "19")
        assert code == 0 and out.startswith("frobenius-prime c=-1")

    def test_composite(self, capsys):
        code, out, _ = run(capsys, "test", "33")
        assert code == 1 and out.startswith("composite")
        code, out, _ = run(capsys, "test", "4")
        assert code == 1 and out.strip() == "composite (even)"

    @pytest.mark.parametrize("arg", ["abc", "-5", "18446744073709551616", "1e5"])
    def test_invalid(self, capsys, arg):
        code, _, err = run(capsys, "test", arg)
        assert code == 2 and "error" in err

    def test_json(self, capsys):
        code, out, _ = run(capsys, "test", "5719", "--output", "json")
        report = json.loads(out)
        assert code == 1 and report["verdict"] == "composite" and report["c"] == -1


def test_index(capsys):
    assert run(capsys, "index", "17")[:2] == (0, "3\n")
    assert run(capsys, "index", "16")[0] == 2


class TestScan:
    def test_small(self, capsys):
        code, out, _ = run(capsys, "scan", "3", "10", "--threads", "1")
        report = json.loads(out)
        assert code == 0 and report["tested"] == 0 and report["squares"] == 1
        assert report["version"] and report["config_hash"]

    def test_invalid_range(self, capsys):
        assert run(capsys, "scan", "10", "3")[0] == 2

    def test_width_gate(self, capsys):
        code, _, err = run(capsys, "scan", "3", "2000000000")
        assert code == 2 and "--long-run" in err

    def test_deterministic_json(self, capsys):
        a = run(capsys, "scan", "3", "100000", "--threads", "1")[1]
        b = run(capsys, "scan", "3", "100000", "--threads", "1")[1]
        assert strip_timing(a) == strip_timing(b)
        assert json.loads(a)["fpp_hits"] == []

    def test_text_table(self, capsys):
        out = run(capsys, "scan", "3", "1000", "--output", "text")[1]
        first = out.splitlines()[0]
        assert first.startswith("# scan version=") and "config_hash=" in first


def test_check_list(capsys, tmp_path):
    path = tmp_path / "psp.txt"
    path.write_text("341\n561\n645\n")
    code, out, _ = run(capsys, "check-list", str(path))
    assert code == 0 and json.loads(out)["rejected_by_frobenius"] == 3
    assert run(capsys, "check-list", str(tmp_path / "missing"))[0] == 2


def test_phi_csv(capsys):
    code, out, _ = run(capsys, "phi", "--c", "7", "--p-max", "4000", "--sign", "+", "--output", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "c,p,sign,M,D,admissible"
    assert {line.split(",")[1] for line in lines[1:]} >= {"31", "3923"}


def test_pairs(capsys):
    out = run(capsys, "pairs", "--c", "5", "--p-max", "500")[1]
    pairs = {tuple(p) for p in json.loads(out)["pairs"]}
    assert {(13, 37), (13, 97), (37, 97), (13, 433), (37, 433)} <= pairs


def test_except_one_csv(capsys, tmp_path):
    target = tmp_path / "rows.csv"
    code, out, _ = run(capsys, "except-one", "--c", "5", "--q-max", "40", "--output", "csv",
                       "--out", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "q,d_bits,primes,verdicts"
    assert any(line.startswith("31,17,5 11 31 61,") for line in lines)


def test_props(capsys):
    code, out, _ = run(capsys, "props", "--which", "phi-positive,pairs")
    assert code == 0 and json.loads(out)["passed"]
    assert run(capsys, "props", "--which", "bogus")[0] == 2


def test_count_psp(capsys):
    out = run(capsys, "count-psp", "100000", "--bases", "2")[1]
    assert json.loads(out)["count"] == 78
    assert run(capsys, "count-psp", "4294967296")[0] == 2


def test_seed_is_accepted(capsys):
    assert run(capsys, "index", "19", "--seed", "42")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "frobenius", "test", "19"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("frobenius-prime")
