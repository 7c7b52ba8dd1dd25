import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idqm import qseries
from idqm.errors import DivergenceError, ValidationError

G = 0.6
BASE = qseries.Base(G)


def test_root_of_unity_guard():
    with pytest.raises(ValidationError):
        qseries.Base(math.pi / 3.0)
    with pytest.raises(ValidationError):
        qseries.Base(2.0 * math.pi / 7.0)
    qseries.Base(0.61)  # fine


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.floats(-0.8, 0.8), st.floats(-0.8, 0.8))
def test_pochhammer_splitting(m, n, re, im):
    # (a;q)_{m+n} = (a;q)_m (a q^m; q)_n
    a = complex(re, im)
    lhs = qseries.qpochhammer_finite(BASE, a, m + n)
    rhs = qseries.qpochhammer_finite(BASE, a, m) * qseries.qpochhammer_finite(
        BASE, a * BASE.q**m, n
    )
    assert abs(lhs - rhs) <= 1e-11 * max(abs(lhs), 1.0)


def _phi21_bruteforce(gamma, a, b, c, z, eps=1e-8, nmax=400000):
    """Direct regularized sum at small epsilon: the slow oracle."""
    q = cmath.exp(-1j * (gamma - 1j * eps))
    acc = term = 1.0 + 0.0j
    qn = 1.0 + 0.0j
    for n in range(nmax):
        term *= (1 - a * qn) * (1 - b * qn) * z / ((1 - c * qn) * (1 - q * qn))
        acc += term
        qn *= q
        if abs(term) < 1e-14 * max(abs(acc), 1.0):
            break
    return acc


def test_phi21_against_bruteforce():
    p = qseries.Phi21Params.from_values(0.4 + 0.1j, 0.3 - 0.2j, 1.2 + 0.0j)
    z = 0.5 + 0.15j
    res = qseries.phi21(BASE, p, z)
    assert res.converged
    ref = _phi21_bruteforce(G, p.a, p.b, p.c, z)
    assert abs(res.value - ref) < 1e-6 * abs(ref)


def test_phi21_terminating_matches_finite_sum():
    n = 4
    a = BASE.q ** (-n)
    p = qseries.Phi21Params.from_values(a, 0.3 + 0.1j, 1.5 + 0.0j)
    z = 2.0 - 0.7j  # termination makes any z legal
    res = qseries.phi21(BASE, p, z)
    # rounding keeps (1 - a q^n) from vanishing exactly, so the monitor may
    # need a few ~1e-16 terms past the termination index
    assert res.converged and res.terms_used <= n + 4
    ref = qseries.terminating_phi(BASE, (a, p.b), (p.c,), n, z)
    assert abs(res.value - ref) < 1e-12 * abs(ref)


def test_phi21_divergence_detected():
    p = qseries.Phi21Params.from_values(1.3, 1.2, 0.7)
    with pytest.raises(DivergenceError):
        qseries.phi21(BASE, p, 3.5 + 0.0j)


def test_phi21_positive_epsilon():
    p = qseries.Phi21Params.from_values(0.4, 0.3, 1.2)
    res = qseries.phi21(BASE.with_epsilon(1e-6), p, 0.5)
    assert res.converged


def test_q_difference_equation_selfsolution():
    p = qseries.Phi21Params.from_values(0.35 + 0.1j, 0.25 - 0.1j, 1.4)

    def f(w):
        return qseries.phi21(BASE, p, w).value

    z = 0.4 + 0.1j
    res = qseries.q_difference_residual(BASE, p, f, z)
    assert abs(res) < 1e-9


def test_q_ultraspherical_forms_agree():
    for n in (0, 1, 2, 3, 5):
        vals = qseries.q_ultraspherical_forms(BASE, n, 0.3 + 0.2j, 0.8 + 0.1j)
        ref = vals[-1]
        for v in vals[:-1]:
            assert abs(v - ref) <= 1e-10 * max(abs(ref), 1.0)


def test_q_ultraspherical_parity():
    # C_n(-eta) = (-1)^n C_n(eta) via x -> pi - x
    beta = 0.4
    for n in range(5):
        x = 0.7
        v1 = qseries.q_ultraspherical(BASE, n, beta, x)
        v2 = qseries.q_ultraspherical(BASE, n, beta, math.pi - x)
        assert abs(v2 - (-1) ** n * v1) < 1e-11 * max(abs(v1), 1.0)


def test_askey_wilson_parameter_symmetry():
    # p_n is symmetric under permutations of (a1..a4)
    a = (0.3 + 0.1j, 0.5 - 0.2j, -0.4 + 0.05j, 0.2 + 0.3j)
    x = 0.9 + 0.2j
    ref = qseries.askey_wilson(BASE, 3, *a, x)
    for perm in ((1, 0, 2, 3), (2, 3, 0, 1), (3, 1, 2, 0)):
        v = qseries.askey_wilson(BASE, 3, *(a[i] for i in perm), x)
        assert abs(v - ref) < 1e-9 * max(abs(ref), 1.0)


def test_askey_wilson_three_term_recurrence_degree():
    # p_n(eta) is a polynomial of degree n in eta = cos x: finite differences
    # of order n+1 on an eta-grid must vanish
    n = 3
    a = (0.3, 0.5, -0.4, 0.2)
    etas = np.linspace(-0.9, 0.9, n + 2)
    vals = [qseries.askey_wilson(BASE, n, *a, math.acos(e)) for e in etas]
    # divided differences of order n+1 vanish for a degree-n polynomial
    table = list(vals)
    pts = list(etas)
    for order in range(1, n + 2):
        table = [
            (table[i + 1] - table[i]) / (pts[i + order] - pts[i])
            for i in range(len(table) - 1)
        ]
    assert abs(table[0]) < 1e-8
