"""Cross-check the numba loop kernels against the pure-numpy fallbacks."""

import cmath
import math

import numpy as np
import pytest

from idqm import _kernels as K


def _quad_args(seed):
    rng = np.random.default_rng(seed)
    s = np.linspace(-12.0, 12.0, 801)
    w = (np.exp(-np.abs(s)) * rng.uniform(0.5, 1.5, s.size)).astype(complex)
    return s, w, rng.uniform(-2, 2), rng.uniform(-2, 2), 0.7, 0.25


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_quad_sum_variants_agree(seed):
    args = _quad_args(seed)
    a = K._quad_sum_loop(*args)
    b = K._quad_sum_numpy(*args)
    assert abs(a - b) < 1e-13 * max(abs(a), 1.0)


PHI_CASES = [
    # (a, b, c, z): converging, terminating, diverging
    (0.4 + 0.1j, 0.3 - 0.2j, 1.2 + 0.0j, 0.5 + 0.15j),
    (cmath.exp(2.4j), 0.3 + 0.1j, 1.5 + 0.0j, 2.0 - 0.7j),
    (1.3 + 0.0j, 1.2 + 0.0j, 0.7 + 0.0j, 3.5 + 0.0j),
]


@pytest.mark.parametrize("a,b,c,z", PHI_CASES)
def test_phi21_sum_variants_agree(a, b, c, z):
    q = cmath.exp(-0.6j)
    va, na, sa, ta = K._phi21_sum_loop(a, b, c, q, z, 1e-12, 20000)
    vb, nb, sb, tb = K._phi21_sum_numpy(a, b, c, q, z, 1e-12, 20000)
    assert sa == sb
    assert na == nb
    assert abs(va - vb) < 1e-12 * max(abs(va), 1.0)


def test_phi21_status_param():
    q = cmath.exp(-0.6j)
    # c = q^{-3} makes (c;q)_n vanish at n = 3
    c = q ** (-3)
    v, n, status, _ = K._phi21_sum_loop(0.4, 0.3, c, q, 0.2, 1e-12, 100)
    assert status == K.PHI21_PARAM


def test_phi21_overflow_flagged_as_divergence():
    q = cmath.exp(-0.6j)
    for fn in (K._phi21_sum_loop, K._phi21_sum_numpy):
        v, n, status, tail = fn(5.0 + 0j, 4.0 + 0j, 1.5 + 0j, q, 50.0 + 0j, 1e-12, 20000)
        assert status == K.PHI21_DIVERGED
        assert math.isfinite(abs(v))


def test_public_aliases_callable():
    q = cmath.exp(-0.6j)
    v, n, status, _ = K.phi21_sum(0.4 + 0j, 0.3 + 0j, 1.2 + 0j, q, 0.5 + 0j, 1e-12, 20000)
    assert status == K.PHI21_CONVERGED
    s = np.linspace(-10.0, 10.0, 401)
    w = np.exp(-np.abs(s)).astype(complex) * 0.05
    out = K.quad_sum(s, w, 0.5, 0.2, 0.7, 0.25)
    ref = K._quad_sum_numpy(s, w, 0.5, 0.2, 0.7, 0.25)
    assert abs(out - ref) < 1e-13 * max(abs(ref), 1.0)
