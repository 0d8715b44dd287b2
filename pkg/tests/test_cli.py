import json
import subprocess
import sys

import pytest

from reglab.cli import run

LOG_Z = {"components": [[], [[0, 1]]]}
HALF_LOG_SQ = {"components": [[], [], [[0, "1/2"]]]}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_lmod2_at_zero():
    status, out = run(["lmod2", "0", "--prime", "7", "--precision", "12"])
    assert status == 0
    assert out["value"] == {"val": 12, "digits": [], "prec": 12}
    assert out["config"]["prime"] == 7 and out["config"]["precision"] == 12


def test_triple_log(tmp_path):
    doc = {"F": LOG_Z, "G": LOG_Z, "H": LOG_Z, "I_GdH": HALF_LOG_SQ, "I_FdH": HALF_LOG_SQ, "I_FdG": HALF_LOG_SQ}
    status, out = run(["triple-index", write(tmp_path, "d.json", doc)])
    assert status == 0 and out["value"]["digits"] == []


def test_global_index(tmp_path):
    path = write(tmp_path, "g.json", {"F": "2*z", "G": "1-z", "H": "3*z**2*(1-z)**3"})
    status, out = run(["global-index", path])
    assert status == 0
    assert [e["end"] for e in out["local"]] == ["0", "1", "inf"]


def test_error_codes(tmp_path):
    assert run(["li2", "3"])[0] == 3
    assert run(["li2", "abc"])[1]["error"]["code"] == "parse"
    assert run(["li2", "1/2", "--prime", "9"])[0] == 2
    bad = write(tmp_path, "bad.json", {"F": LOG_Z})
    assert run(["triple-index", bad])[0] == 2
    collide = write(tmp_path, "c.json", {"F": "z-1", "G": "z-8", "H": "z"})
    assert run(["global-index", collide])[0] == 2
    window = write(tmp_path, "w.json", {"F": {"components": [[[0, 1], [1, 1]]], "window": [0, 2]},
                                        "G": LOG_Z, "H": {"components": [[[-5, 1]]]}})
    status, out = run(["triple-index", window])
    assert status == 4 and out["error"]["code"] == "window"


def test_element_checks(tmp_path):
    closed = write(tmp_path, "e.json", [{"c": 1, "g": "z", "f": "z"}])
    status, out = run(["check-element", closed])
    assert status == 0 and out["ocond"] and out["special_units"]
    open_ = write(tmp_path, "o.json", [{"c": 1, "g": "z", "f": "z-3"}])
    status, out = run(["check-element", open_])
    assert status == 5 and not out["closed"]


def test_regulator(tmp_path):
    el = write(tmp_path, "e.json", {"terms": [{"c": 1, "g": "1/(1-z)", "f": "1/(1-z)"},
                                              {"c": 2, "g": "1/(1-z)", "f": "-(1-z)**2"}],
                                    "points": ["0", "1"]})
    om = write(tmp_path, "w.json", {"exact": "1/z"})
    for formula in ("thm1", "thm2", "thm3"):
        status, out = run(["regulator", "--formula", formula, el, om])
        assert status == 0, out
        assert out["value"]["digits"] == []
    status, out = run(["regulator", "--formula", "thm4a", el, om])
    assert status == 0  # g^k is also tilde-closed: (1-g) ^ g ^ g = 0
    bad = write(tmp_path, "b.json", {"terms": [{"c": 1, "g": "z", "f": "z-3"}], "points": ["0", "1"]})
    assert run(["regulator", "--formula", "thm3", bad, om])[0] == 5
    assert run(["regulator", "--formula", "thm3", el, write(tmp_path, "r.json", {"form": "1/z"})])[0] == 2


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("REGLAB_PRECISION", "9")
    status, out = run(["lmod2", "7"])
    assert status == 0 and out["config"]["precision"] == 9
    monkeypatch.setenv("REGLAB_PRECISION", "nine")
    assert run(["lmod2", "7"])[0] == 2


def test_selftest_suite():
    status, out = run(["selftest", "--suite", "index", "--seed", "42"])
    assert status == 0 and out["passed"]
    assert [c["name"] for c in out["checks"]] == ["triple-index axioms", "recipe vs constant-term formula"]


@pytest.mark.parametrize("argv", [["ltwo", "1/7", "--log-branch", "3"], ["selftest", "--suite", "global"]])
def test_console_script_is_deterministic(argv):
    cmd = [sys.executable, "-m", "reglab.cli", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["command"] == argv[0]
