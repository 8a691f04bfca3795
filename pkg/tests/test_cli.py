import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from maxcore.cli import EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK, main
from maxcore.reports import load_schema

CORPUS = Path(__file__).resolve().parents[1] / "corpus"
SCHEMA = load_schema()


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    rep = json.loads(text)
    jsonschema.validate(rep, SCHEMA)
    return code, rep


@pytest.fixture
def mat(tmp_path):
    def write(text, name="m.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_spectra_report():
    code, rep = run_json("spectra", str(CORPUS / "reducible.txt"))
    assert code == EXIT_OK
    assert rep["spectrum"] == ["0", "1"] and rep["sigma_lambda"] == 1


def test_spectra_trivial(mat):
    code, rep = run_json("spectra", mat("maxplus 1\n-inf\n"))
    assert rep["spectrum"] == [] and rep["frobenius"]["classes"][0]["trivial"]


def test_parse_error_exit(mat, capsys):
    code, _ = run("spectra", mat("maxplus 1\n1/0\n"))
    assert code == EXIT_INPUT
    assert "line 2, col 1" in capsys.readouterr().err


def test_core_reports():
    _, rep = run_json("core", str(CORPUS / "swap.txt"))
    assert len(rep["extremals"]) == 2 and rep["action"]["cycles"][0]["extremals"] == [1, 2]
    assert rep["stabilization"]["t"] == 1
    _, rep = run_json("core", str(CORPUS / "reducible.txt"))
    assert len(rep["extremals"]) == 2 and all(len(c["extremals"]) == 1 for c in rep["action"]["cycles"])
    assert rep["stabilization"]["stabilizes"] and rep["stabilization"]["t"] == 1
    _, rep = run_json("core", str(CORPUS / "nonspectral.txt"))
    assert rep["extremals"] == [["-inf", "0"]]
    assert rep["stabilization"]["stabilizes"] is False
    assert rep["stabilization"]["span_chain"] == "non-stabilizing"


def test_core_maxmin():
    _, rep = run_json("core", str(CORPUS / "other" / "fuzzy.txt"))
    assert rep["display_semiring"] == "maxmin" and rep["period"] == 3


def test_maxtimes_display():
    _, rep = run_json("core", str(CORPUS / "other" / "maxtimes.txt"), "--semiring", "maxtimes")
    assert rep["display_semiring"] == "maxtimes"
    assert rep["matrix"]["semiring"] == "maxtimes"
    assert sorted(rep["action"]["growth"]) == ["1", "2"]
    _, rep = run_json("spectra", str(CORPUS / "two_cycle.json"), "--semiring", "maxtimes")
    assert rep["spectrum"] == ["8"]


def test_maxtimes_display_falls_back(mat):
    _, rep = run_json("spectra", mat("maxplus 1\n1/2\n"), "--semiring", "maxtimes")
    assert rep["display_semiring"] == "maxplus" and rep["spectrum"] == ["1/2"]


def test_classify_reports():
    code, rep = run_json("classify", str(CORPUS / "reducible.txt"))
    v = rep["verdicts"]
    assert code == EXIT_OK
    assert v["robust"]["value"] is True and v["bijective_on_core"]["value"] is False
    assert v["bijective_on_core"]["collision"] == {"y": ["1", "1"], "y_prime": ["1", "0"], "t": 1}
    _, rep = run_json("classify", str(CORPUS / "swap.txt"))
    v = rep["verdicts"]
    assert [v[k]["value"] for k in ("robust", "orbit_periodic", "weakly_stable", "bijective_on_core")] == [
        False, True, True, True,
    ]
    _, rep = run_json("classify", str(CORPUS / "diag.txt"))
    assert rep["verdicts"]["robust"]["value"] is False
    assert rep["verdicts"]["bijective_on_core"]["value"] is True
    assert rep["implication_failures"] == []


def test_orbit_reports():
    _, rep = run_json("orbit", str(CORPUS / "swap.txt"), "0 -inf")
    assert rep["periodicity"]["period"] == 2 and rep["first_eigenvector_hit"] is None
    _, rep = run_json("orbit", str(CORPUS / "reducible.txt"), "-inf 0")
    assert rep["first_eigenvector_hit"] == 0
    _, rep = run_json("orbit", str(CORPUS / "diag.txt"), "0 0", "--horizon", "7")
    assert rep["horizon_exceeded"] and rep["horizon"] == 7 and len(rep["states"]) == 8


def test_orbit_dimension_mismatch():
    code, _ = run("orbit", str(CORPUS / "swap.txt"), "0 0 0")
    assert code == EXIT_INPUT


def test_horizon_env(monkeypatch):
    monkeypatch.setenv("MAXCORE_HORIZON", "5")
    _, rep = run_json("orbit", str(CORPUS / "diag.txt"), "0 0")
    assert rep["horizon"] == 5


def test_verify_corpus_directory():
    code, rep = run_json("verify", str(CORPUS))
    assert code == EXIT_OK and rep["passed"] and len(rep["results"]) == 6


def test_verify_random_is_deterministic():
    args = ("verify", "--random", "--seed", "7", "--count", "15", "--n", "4", "--json")
    c1, t1 = run(*args)
    c2, t2 = run(*args)
    assert c1 == c2 == EXIT_OK and t1 == t2
    jsonschema.validate(json.loads(t1), SCHEMA)


def test_verify_mutant_fails():
    code, rep = run_json("verify", str(CORPUS / "reducible.txt"), "--mutate")
    assert code == EXIT_CHECK_FAILED and not rep["passed"]


def test_verify_needs_input():
    assert run("verify")[0] == EXIT_INPUT


def test_text_output():
    code, text = run("core", str(CORPUS / "swap.txt"))
    assert "action cycle z1 -> z2 growth 0" in text
    code, text = run("classify", str(CORPUS / "reducible.txt"))
    assert "collision y=(1, 1) y'=(1, 0) t=1" in text


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "maxcore", "spectra", str(CORPUS / "two_cycle.json"), "--json"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(res.stdout)["sigma_lambda"] == 2
