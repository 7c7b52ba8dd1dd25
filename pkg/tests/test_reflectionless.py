import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idqm import reflectionless as rf
from idqm import solvable
from idqm.errors import ValidationError

G = 0.45


def _random_seed_system(seed, N, gamma=G):
    rng = np.random.default_rng(seed)
    ks = np.sort(rng.uniform(0.3, 0.9 * math.pi / gamma, size=N))
    cts = [(-1) ** j * rng.uniform(0.5, 2.0) for j in range(N)]
    return rf.seeds_build(gamma, N, ks, cts)


def test_seed_validation():
    with pytest.raises(ValidationError):
        rf.seeds_build(G, 2, [2.0, 1.0], [1.0, -1.0])  # not increasing
    with pytest.raises(ValidationError):
        rf.seeds_build(G, 2, [1.0, 2.0], [1.0, 1.0])  # sign pattern
    with pytest.raises(ValidationError):
        rf.seeds_build(G, 1, [math.pi / G], [1.0])  # k_N at the boundary
    with pytest.raises(ValidationError):
        rf.seeds_build(G, 1, [-1.0], [1.0])


def test_casoratian_exponential_closed_form():
    rng = np.random.default_rng(7)
    for n in range(1, 6):
        ks = sorted(rng.uniform(0.2, 3.0, size=n))
        fns = [(lambda k: (lambda x: cmath.exp(k * x)))(k) for k in ks]
        x = complex(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3))
        w = rf.casoratian(G, fns, x)
        ref = rf.casoratian_exp_closed_form(G, ks, x)
        assert abs(w - ref) < 1e-10 * max(abs(ref), 1e-30)


def test_casoratian_two_by_two():
    f = lambda x: cmath.exp(0.8 * x)
    g = lambda x: cmath.cosh(1.3 * x)
    x = 0.37 + 0.11j
    direct = 1j * (
        f(x + 0.5j * G) * g(x - 0.5j * G) - f(x - 0.5j * G) * g(x + 0.5j * G)
    )
    assert abs(rf.casoratian(G, [f, g], x) - direct) < 1e-13


def _tau_expansion(seed, x):
    """Independent 2^N-term expansion of the tau determinant."""
    g, N = seed.gamma, seed.N
    total = 0.0
    for mask in range(1 << N):
        mu = [(mask >> j) & 1 for j in range(N)]
        s = 0.0
        for j in range(N):
            if mu[j]:
                s += math.log(seed.c[j] / math.sin(g * seed.k[j])) - 2 * seed.k[j] * x
        for i in range(N):
            for j in range(i + 1, N):
                if mu[i] and mu[j]:
                    s += 2 * math.log(
                        abs(
                            math.sin(0.5 * g * (seed.k[i] - seed.k[j]))
                            / math.sin(0.5 * g * (seed.k[i] + seed.k[j]))
                        )
                    )
        total += math.exp(s)
    return total


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_tau_routes_and_expansion(N):
    seed = _random_seed_system(N, N)
    for x in np.linspace(-1.5, 1.5, 7):
        u_det = rf.tau_u(seed, x)
        u_cas = rf.tau_u(seed, x, route="casoratian")
        u_exp = _tau_expansion(seed, x)
        assert abs(u_det - u_cas) < 1e-10 * abs(u_det)
        assert abs(u_det - u_exp) < 1e-10 * abs(u_det)
        assert u_det.real > 0 and abs(u_det.imag) < 1e-10 * abs(u_det)


def test_tau_excl_routes():
    seed = _random_seed_system(11, 3)
    for j in (1, 2, 3):
        for x in (-0.8, 0.3, 1.1):
            a = rf.tau_u_excl(seed, j, x)
            b = rf.tau_u_excl(seed, j, x, route="casoratian")
            assert abs(a - b) < 1e-10 * max(abs(a), 1.0)


def test_potential_routes_agree():
    seed = _random_seed_system(13, 3)
    for x in np.linspace(-1.2, 1.2, 7):
        v1 = rf.potential_V(seed, x)
        v2 = rf.potential_V(seed, x, route="tau")
        assert abs(v1 - v2) < 1e-9 * max(abs(v1), 1.0)


def test_potential_asymptotics():
    # V -> 1 for x -> +inf, V -> e^{i gamma k_N} * (phase) ... modulus 1 both ways
    seed = _random_seed_system(17, 2)
    for x in (9.0, -9.0):
        v = rf.potential_V(seed, x)
        assert abs(abs(v) - 1.0) < 1e-8


def test_calU_real_positive_on_axis():
    seed = _random_seed_system(19, 2)
    for x in np.linspace(-2, 2, 9):
        u = rf.potential_calU(seed, x)
        assert abs(u.imag) < 1e-12
        assert u.real > 0


def test_bound_state_residuals():
    seed = _random_seed_system(23, 2)
    V = solvable.PotentialFn.from_seeds(seed)
    shift = solvable.energy_exp(seed.gamma, seed.k[-1])
    for j in (1, 2):
        f = lambda y, jj=j: rf.bound_state(seed, jj, y)
        e = rf.bound_state_energy(seed, j)
        for x in (-1.0, 0.2, 0.9):
            val = f(x)
            hv = solvable.apply_hamiltonian(V, seed.gamma, f, x) + shift * val
            assert abs(hv - e * val) < 1e-10 * max(abs(val), 1.0)


def test_bound_state_decay():
    seed = _random_seed_system(29, 2)
    for j in (1, 2):
        near = abs(rf.bound_state(seed, j, 4.0))
        far = abs(rf.bound_state(seed, j, 8.0))
        # decay rate ~ e^{-k_j |x|}
        expected = math.exp(-seed.k[j - 1] * 4.0)
        assert far / near == pytest.approx(expected, rel=0.05)


def test_wave_residual():
    seed = _random_seed_system(31, 2)
    V = solvable.PotentialFn.from_seeds(seed)
    shift = solvable.energy_exp(seed.gamma, seed.k[-1])
    kk = 1.3
    e = rf.scattering_energy(seed.gamma, kk)
    f = lambda y: rf.wave_solution(seed, kk, y)
    for x in (-0.7, 0.5):
        val = f(x)
        hv = solvable.apply_hamiltonian(V, seed.gamma, f, x) + shift * val
        assert abs(hv - e * val) < 1e-9 * max(abs(val), 1.0)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 12.0))
def test_transmission_unimodular(kk):
    seed = rf.soliton_seeds(0.5, 3)
    a = rf.amplitude_product(seed, kk)
    assert abs(abs(a.t) - 1.0) < 1e-12
    assert a.r == 0
    assert a.unitarity_defect < 1e-12


def test_soliton_relabeled_normalization():
    # phi_n from the soliton system matches the generic family at h = N
    N, gamma = 2, 0.5
    seed = rf.soliton_seeds(gamma, N)
    c = solvable.Coupling(gamma, float(N))
    for n in range(N):
        _, fn = solvable.eigenpair(c, n)
        for x in (-0.9, 0.4, 1.2):
            a = rf.bound_state_relabeled(seed, n, x, soliton_norm=True)
            b = fn(x)
            assert abs(a - b) < 1e-9 * max(abs(b), 1.0)
