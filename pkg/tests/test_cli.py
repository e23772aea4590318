import json
import re
import subprocess
import sys

import pytest

from qsln.report import LawResult, SuiteReport
from qsln.suites import SuiteConfig, run_suite


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "qsln.cli", *args],
        capture_output=True, text=True)
    return proc


def test_rtt_suite_passes_and_exits_zero():
    proc = run_cli("verify", "rtt", "--n", "2")
    assert proc.returncode == 0
    assert "verdict: pass" in proc.stdout


def test_usage_error_exits_two():
    assert run_cli("verify", "rtt", "--n", "7").returncode == 2
    assert run_cli("verify", "nosuchsuite").returncode == 2
    assert run_cli("verify", "rtt", "--rep", "tensor2",
                   "--n", "3").returncode == 2


def test_corrupted_matrix_fails_with_detail():
    proc = run_cli("verify", "rtt", "--n", "2", "--corrupt-t",
                   "--format", "json")
    assert proc.returncode == 1
    body = json.loads(proc.stdout)
    assert body["verdict"] == "fail"
    failing = [l for l in body["laws"] if l["status"] == "fail"]
    assert failing and failing[0]["id"] == "rtt.pairwise"
    assert failing[0]["detail"]  # names the first bad entry


def test_json_schema_and_roundtrip():
    proc = run_cli("verify", "gseries", "--format", "json")
    assert proc.returncode == 0
    body = json.loads(proc.stdout)
    assert body["schema"] == 1
    rep = SuiteReport.from_json(proc.stdout)
    assert rep.to_json() == proc.stdout.strip()
    assert rep.verdict == "pass"


def _strip_ms(text):
    return re.sub(r'"ms": [0-9.]+', '"ms": 0', text)


def test_deterministic_given_config_and_seed():
    a = run_cli("verify", "minors", "--n", "2", "--seed", "5",
                "--format", "json").stdout
    b = run_cli("verify", "minors", "--n", "2", "--seed", "5",
                "--format", "json").stdout
    assert _strip_ms(a) == _strip_ms(b)


def test_env_override_for_depth():
    import os
    env = dict(os.environ, QSLN_DEPTH="4")
    proc = subprocess.run(
        [sys.executable, "-m", "qsln.cli", "verify", "gseries",
         "--format", "json"],
        capture_output=True, text=True, env=env)
    body = json.loads(proc.stdout)
    assert body["config"]["laurent_depth"] == 4


def test_run_suite_api_matches_cli():
    cfg = SuiteConfig(suite="rtt", n=2)
    rep = run_suite(cfg)
    assert rep.verdict == "pass"
    assert all(r.status == "pass" for r in rep.laws)


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(suite="bogus").validate()
    with pytest.raises(ValueError):
        SuiteConfig(laurent_depth=1).validate()
    with pytest.raises(ValueError):
        SuiteConfig(rep="tensor2", n=3).validate()


def test_yangian_suite_reports_implied_serre():
    rep = run_suite(SuiteConfig(suite="yangian", n=3, laurent_depth=4))
    implied = [r for r in rep.laws if r.status == "implied"]
    assert implied and all(r.law == "yangian.Y6full" for r in implied)
    assert rep.verdict == "pass"


def test_report_text_format():
    rep = run_suite(SuiteConfig(suite="gseries"))
    text = rep.to_text()
    assert "verdict: pass" in text
    assert "gseries.factorization" in text
