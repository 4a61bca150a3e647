import io
import json
import subprocess
import sys

import jsonschema
import pytest

from qsatake.cli import main
from qsatake.report import REPORT_SCHEMA
from qsatake.webs import WebCombo, nested_circles, theta


def run(*argv):
    out = io.StringIO()
    rc = main(list(argv), out)
    return rc, out.getvalue()


@pytest.fixture
def theta_file(tmp_path):
    p = tmp_path / "theta.json"
    p.write_text(theta().to_json(), encoding="utf-8")
    return str(p)


def test_demazure():
    assert run("demazure", "--ops", "y", "--poly", "a_b") == (0, "-q\n")
    rc, out = run("demazure", "--ops", "r", "--poly", "a_r", "--json")
    assert rc == 0 and json.loads(out) == {"result": "2"}


def test_demazure_rejects_unknown_colour():
    rc, _ = run("demazure", "--ops", "y", "--poly", "a_b", "--n", "2")
    assert rc == 2


def test_eval_web(theta_file):
    assert run("eval-web", theta_file) == (0, "-q^3 - 2*q - 2*q^-1 - q^-3\n")


def test_eval_web_rejects_bad_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("eval-web", str(bad))[0] == 2
    assert run("eval-web", str(tmp_path / "missing.json"))[0] == 2


def test_reduce_web_round_trip(tmp_path):
    p = tmp_path / "circles.json"
    p.write_text(nested_circles(3, 2).to_json(), encoding="utf-8")
    rc, out = run("reduce-web", str(p))
    assert rc == 0
    combo = WebCombo.from_dict(json.loads(out))
    ((c, w),) = combo.items()
    assert str(c) == "q^4 + 2*q^2 + 3 + 2*q^-2 + q^-4" and not w.verts


def test_functor_image(theta_file):
    rc, out = run("functor-image", theta_file, "--json")
    data = json.loads(out)
    assert rc == 0 and data["degree"] == 0
    assert data["scalar"] == "-q^3 - 2*q - 2*q^-1 - q^-3"


def test_dual_bases():
    rc, out = run("dual-bases", "--ext", "rp")
    assert rc == 0 and "equals mu" in out
    rc, out = run("dual-bases", "--ext", "∅g", "--json")
    assert rc == 0 and json.loads(out)["sum_equals_mu"] is True
    assert run("dual-bases", "--ext", "pr")[0] == 2


def test_kernel_check_json_matches_schema():
    rc, out = run("kernel-check", "--n", "2", "--m", "3", "--json")
    assert rc == 0
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert report["summary"]["fail"] == 0


@pytest.mark.parametrize("suite,n", [("webs", 2), ("weylrep", 2), ("frobenius", 2),
                                     ("relations", 2), ("functor", 2)])
def test_verify_suites(suite, n):
    rc, out = run("verify", "--suite", suite, "--n", str(n), "--samples", "5", "--json")
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert rc == 0, [c for c in report["checks"] if c["status"] == "fail"]


def test_verify_table_output():
    rc, out = run("verify", "--suite", "weylrep", "--n", "1")
    assert rc == 0 and "0 failed" in out.splitlines()[-1]


def test_usage_errors():
    assert run("verify", "--suite", "nope")[0] == 2
    assert run("verify", "--suite", "webs", "--n", "4")[0] == 2
    assert run("kernel-check", "--n", "2", "--m", "1")[0] == 2
    assert run()[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qsatake.cli", "demazure", "--ops", "rb",
                           "--poly", "a_r*a_b"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr


def test_reports_are_deterministic_for_a_fixed_seed():
    first = run("verify", "--suite", "webs", "--n", "3", "--seed", "5", "--samples", "5", "--json")
    second = run("verify", "--suite", "webs", "--n", "3", "--seed", "5", "--samples", "5", "--json")
    assert first == second
    assert json.loads(first[1])["seed"] == 5
