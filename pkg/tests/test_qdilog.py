import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idqm import qdilog
from idqm.errors import DomainError, PoleError


GAMMA = 0.7
P = qdilog.QdilogParam(GAMMA)


def rand_points(seed, n, gamma=GAMMA, scale=0.6):
    rng = np.random.default_rng(seed)
    hw = scale * (gamma + math.pi)
    return [
        complex(rng.uniform(-3, 3), rng.uniform(-hw, hw)) for _ in range(n)
    ]


def test_value_at_origin():
    # Phi(0)^2 = Phi(0) Phi(-0) = inversion RHS at z = 0
    v = qdilog.phival(GAMMA, 0.0)
    expected = cmath.sqrt(qdilog.inversion_rhs(GAMMA, 0.0))
    assert abs(v - expected) < 1e-12


def test_shift_relation_gamma():
    for z in rand_points(1, 25):
        lhs = qdilog.phival(GAMMA, z + 1j * GAMMA) / qdilog.phival(GAMMA, z - 1j * GAMMA)
        assert abs(lhs * (1 + cmath.exp(z)) - 1) < 1e-11


def test_shift_relation_pi():
    for z in rand_points(2, 25):
        lhs = qdilog.phival(GAMMA, z + 1j * math.pi) / qdilog.phival(GAMMA, z - 1j * math.pi)
        assert abs(lhs * (1 + cmath.exp(math.pi * z / GAMMA)) - 1) < 1e-11


def test_shift_ladder_path_independence():
    # continuing out of the strip along gamma-shifts or pi-shifts must agree
    for z in (4.0 + 9.3j, -2.5 - 11.0j, 1.0 + 17.2j):
        lg, *_ = qdilog.eval_log(P, z, shift="gamma")
        lp, *_ = qdilog.eval_log(P, z, shift="pi")
        diff = (lg - lp) / (2j * math.pi)
        assert abs(diff - round(diff.real)) < 1e-10


@settings(max_examples=40, deadline=None)
@given(
    st.floats(-2.5, 2.5),
    st.floats(-2.0, 2.0),
)
def test_inversion_property(re, im):
    z = complex(re, im)
    prod = qdilog.phival(GAMMA, z) * qdilog.phival(GAMMA, -z)
    rhs = qdilog.inversion_rhs(GAMMA, z)
    assert abs(prod - rhs) < 1e-10 * abs(rhs)


def test_duplication_identities():
    for z in rand_points(3, 10, scale=0.3):
        (p_pi, p_2g), (p_g, p_half) = qdilog.duplication_pair(P, z)
        assert abs(p_pi - p_2g) < 1e-10 * abs(p_2g)
        assert abs(p_g - p_half) < 1e-10 * abs(p_half)


def test_pair_identity_plus():
    for z in rand_points(4, 15, scale=0.2):
        lhs = qdilog.eval_plus(P, z) * qdilog.eval_plus(P, -z - 1j * GAMMA)
        rhs = qdilog.plus_pair_rhs(GAMMA, z)
        assert abs(lhs - rhs) < 1e-10 * abs(rhs)


def test_asymptotics():
    # Re z -> -inf: Phi -> 1; Re z -> +inf: Phi -> inversion exponential
    g = 2.0
    z = -30.0 + 0.4j
    assert abs(qdilog.phival(g, z) - 1.0) < 1e-11
    z = 30.0 + 0.4j
    v = qdilog.phival(g, z)
    assert abs(v - qdilog.asymptotic(qdilog.QdilogParam(g), z)) < 1e-9 * abs(v)


def test_small_and_large_gamma():
    for g in (0.05, 2.6):
        z = 0.4 - 0.3j
        lhs = qdilog.phival(g, z + 1j * g) / qdilog.phival(g, z - 1j * g)
        assert abs(lhs * (1 + cmath.exp(z)) - 1) < 1e-10


def test_pole_zero_lattice():
    lat = qdilog.pole_zero_enumerate(P, 12.0)
    assert lat, "lattice should be non-empty within radius 12"
    first = lat[0]
    assert abs(abs(first.location.imag) - (GAMMA + math.pi)) < 1e-12
    for pz in lat:
        y = abs(pz.location.imag)
        n1, n2 = pz.n1, pz.n2
        assert abs(y - ((2 * n1 - 1) * GAMMA + (2 * n2 - 1) * math.pi)) < 1e-12
        hit = qdilog.lattice_hit(GAMMA, pz.location)
        assert hit is not None and hit[0] == pz.kind


def test_pole_raises():
    z = 1j * (GAMMA + math.pi)
    with pytest.raises(PoleError):
        qdilog.eval(P, z)


def test_integral_requires_strip():
    with pytest.raises(DomainError):
        qdilog.eval_integral(P, 1j * (GAMMA + math.pi + 0.5))


def test_eval_matches_integral_inside_strip():
    for z in rand_points(5, 10):
        vi = qdilog.eval_integral(P, z).value
        ve = qdilog.eval(P, z).value
        assert abs(vi - ve) < 1e-12 * abs(vi)


def test_plus_pole_lattice():
    assert qdilog.plus_is_pole(P, 0.0)
    assert qdilog.plus_is_pole(P, 1j * (2 * GAMMA + 2 * math.pi))
    assert not qdilog.plus_is_pole(P, 1j * GAMMA * 0.5)
    assert not qdilog.plus_is_pole(P, -1j * GAMMA)


def test_trapezoid_oracle():
    # independent check of the quadrature: plain trapezoid on the same contour
    z = 0.5 + 0.2j
    delta = 0.25
    s = np.linspace(-60.0, 60.0, 240001)
    t = s + 1j * delta
    g = np.exp(-1j * z * t) / (4 * np.sinh(GAMMA * t) * np.sinh(math.pi * t) * t)
    ref = cmath.exp(np.trapezoid(g, s))
    assert abs(qdilog.phival(GAMMA, z) - ref) < 1e-9 * abs(ref)
