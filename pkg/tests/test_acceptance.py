"""Acceptance gate: the full identity-based verification suite.

Each criterion prints a single PASS/FAIL line (run pytest with -s or -v to
see them) and asserts both the deviation bound and, where specified, the
runtime budget.
"""

import pytest

from idqm import verification as vf

RUNTIME_LIMITS = {
    "dilog identity suite": 30.0,
    "casoratian suite": 60.0,
    "eigen-residuals": 120.0,
}

CRITERIA = [
    ("01 dilog identities", vf.check_dilog_identities),
    ("02 casoratian suite", vf.check_casoratian_suite),
    ("03 eigen residuals", vf.check_eigen_residuals),
    ("04 reflectionless reduction", vf.check_reflectionless_reduction),
    ("05 unitarity", vf.check_unitarity),
    ("06 parameter inversion", vf.check_parameter_inversion),
    ("07 pole census", vf.check_pole_census),
    ("08 classical limit", vf.check_classical_limit),
    ("09 conjecture evidence", vf.check_conjecture_evidence),
    ("10 gauss 2F1 connection", vf.check_2f1_connection),
]


@pytest.mark.parametrize("label,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance(label, check):
    res = check()
    print(res.line())
    assert res.passed, res.line()
    limit = RUNTIME_LIMITS.get(res.name)
    if limit is not None:
        assert res.runtime < limit, f"{res.name} took {res.runtime:.1f}s (limit {limit}s)"
