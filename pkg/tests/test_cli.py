from __future__ import annotations

import json
import subprocess
import sys

import pytest

from bqform.cli import CSV_HEADER, EXIT_DOMAIN, EXIT_IO, EXIT_OK, equation_text, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", "3", "2", "5", "-3")
    assert code == EXIT_OK
    assert "solvable: yes" in out and "(1, 0)" in out and "(-1, 0)" in out
    assert "3x^2 + 2xy + 5y^2 - 3 = 0" in out
    code, out, _ = run(capsys, "solve", "5", "14", "-6", "-5")
    assert code == EXIT_OK and "(1, 0)" in out


def test_solve_domain_error(capsys):
    code, _, err = run(capsys, "solve", "1", "2", "1", "-1")
    assert code == EXIT_DOMAIN and "discriminant is zero" in err


def test_local(capsys):
    code, out, _ = run(capsys, "local", "3", "2", "5", "-11")
    assert code == EXIT_OK and "fails at: 7" in out
    _, out, _ = run(capsys, "local", "3", "2", "5", "11")
    assert "fails at: inf" in out
    _, out, _ = run(capsys, "local", "3", "2", "5", "-3")
    assert "all places pass" in out


def test_criterion(capsys):
    code, out, _ = run(capsys, "criterion", "1", "-3")
    assert code == EXIT_OK and "verdict: solvable" in out
    _, out, _ = run(capsys, "criterion", "2", "5")
    assert "condition (1): FAILS" in out and "not solvable" in out
    code, _, _ = run(capsys, "criterion", "1", "3")
    assert code == EXIT_DOMAIN
    _, out, _ = run(capsys, "criterion", "2", "5", "--json")
    assert json.loads(out)["verdict"] is False


def test_hypotheses(capsys):
    _, out, _ = run(capsys, "hypotheses", "5", "14", "-6", "1")
    assert out.strip() == "DNegCase1"


def test_pell(capsys):
    _, out, _ = run(capsys, "pell", "79")
    assert "fundamental: (80, 9)" in out and "negative: none" in out
    _, out, _ = run(capsys, "pell", "65")
    assert "negative: (8, 1)" in out
    _, out, _ = run(capsys, "pell", "79", "25")
    assert "(5, 0)" in out
    code, _, _ = run(capsys, "pell", "49")
    assert code == EXIT_DOMAIN


def test_verify_text(capsys):
    code, out, err = run(capsys, "verify", "1", "-200", "-1")
    lines = out.splitlines()
    assert code == EXIT_OK and len(lines) == 200 and all("agree=T" in ln for ln in lines)
    assert "200 agree, 0 disagree" in err


def test_verify_skips_zero(capsys):
    code, out, err = run(capsys, "verify", "2", "-100", "100", "--format", "jsonl")
    rows = [json.loads(ln) for ln in out.splitlines()]
    assert code == EXIT_OK and len(rows) == 200 and all(r["agree"] for r in rows)
    assert 0 not in {r["g"] for r in rows} and "g=0 skipped" in err


def test_verify_domain(capsys):
    assert run(capsys, "verify", "1", "1", "10")[0] == EXIT_DOMAIN
    assert run(capsys, "verify", "2", "5", "1")[0] == EXIT_DOMAIN


def test_verify_csv_and_parallel_determinism(tmp_path, capsys, monkeypatch):
    one, two = tmp_path / "one.csv", tmp_path / "two.csv"
    assert run(capsys, "verify", "2", "-150", "150", "--format", "csv", "--out", str(one), "--jobs", "1")[0] == 0
    monkeypatch.setenv("BQFORM_JOBS", "2")
    assert run(capsys, "verify", "2", "-150", "150", "--format", "csv", "--out", str(two))[0] == 0
    assert one.read_bytes() == two.read_bytes()
    lines = one.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER) and len(lines) == 301
    assert lines[1].startswith("-150,")


def test_verify_io_error(tmp_path, capsys):
    code, _, err = run(capsys, "verify", "1", "-5", "-1", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == EXIT_IO and "cannot write" in err


def test_config_io_error(tmp_path, capsys):
    code, _, _ = run(capsys, "criterion", "1", "-3", "--config", str(tmp_path / "nope.cfg"))
    assert code == EXIT_IO


def test_config_file(tmp_path, capsys):
    from importlib import resources

    cfg = tmp_path / "ex2.cfg"
    cfg.write_text(resources.files("bqform.configs").joinpath("example2.cfg").read_text())
    code, out, _ = run(capsys, "verify", "2", "1", "20", "--config", str(cfg))
    assert code == EXIT_OK and len(out.splitlines()) == 20


@pytest.mark.parametrize("coefs,text", [
    ((3, 2, 5, -3), "3x^2 + 2xy + 5y^2 - 3 = 0"),
    ((-1, 0, 1, 7), "-x^2 + y^2 + 7 = 0"),
    ((5, -14, -6, 1), "5x^2 - 14xy - 6y^2 + 1 = 0"),
])
def test_equation_text(coefs, text):
    assert equation_text(*coefs) == text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bqform", "criterion", "1", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_DOMAIN and "negative" in proc.stderr
