"""Every acceptance criterion at its stated size, tolerance and time budget.

Each test prints one PASS/FAIL line, visible even under pytest's output capture.
Sizes are the defaults of :mod:`reglab.checks` (p = 7, precision 20).
"""
import pytest

from reglab import checks

# (label, runs, budget in seconds)
CRITERIA = [
    ("triple-index axioms", lambda: [checks.check_triple_axioms(n=200)], 10),
    ("recipe vs constant-term formula", lambda: [checks.check_recipe_vs_simple_pole(n=200)], 10),
    ("polylog identities", lambda: [checks.check_polylog_identities(n=50, branch=0),
                                    checks.check_polylog_identities(n=50, branch=3)], 30),
    ("global reciprocity", lambda: [checks.check_reciprocity(n=50)], 60),
    ("Stokes-type cyclic sum", lambda: [checks.check_stokes(n=25)], 60),
    ("constant-term identities", lambda: [checks.check_constant_terms(n=20)], 30),
    ("regulator cross-engine oracle", lambda: [checks.check_regulator(n=10)], 120),
    ("condition checkers", lambda: [checks.check_conditions()], 10),
]


@pytest.mark.parametrize("label,runs,budget", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, runs, budget, capsys):
    results = runs()
    seconds = sum(r.seconds for r in results)
    ok = all(r.passed for r in results) and seconds < budget
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {label} (budget {budget}s, took {seconds:.2f}s)")
        for r in results:
            print("    " + r.line())
    for r in results:
        assert r.passed, r.line()
    assert seconds < budget, f"{label} took {seconds:.2f}s, budget {budget}s"
