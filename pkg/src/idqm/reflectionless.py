"""General N-seed reflectionless potentials from Casoratian determinants.

Seeds are psi_j(x) = e^{k_j x} + c~_j e^{-k_j x} with
0 < k_1 < ... < k_N < pi/gamma and (-1)^{j-1} c~_j > 0.  The tau function
u_N(x) and its excluded-seed companions u_{N,j}(x) carry the whole
construction: potential function, bound states, scattering wave and the
product-form transmission amplitude.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .common import AmplitudeResult, sqrt_tracked
from .errors import ConditioningWarning, SingularPointError, ValidationError

_COND_LIMIT = 1e12
_SING_TOL = 1e-12


@dataclass(frozen=True)
class SeedSystem:
    """Validated seed data; c[] derived from c~[] (both positive-definite forms)."""

    gamma: float
    N: int
    k: tuple
    c_tilde: tuple
    c: tuple

    def psi(self, j):
        """Seed function psi_j (1-based j) as a callable."""
        kj = self.k[j - 1]
        ct = self.c_tilde[j - 1]
        return lambda x: cmath.exp(kj * x) + ct * cmath.exp(-kj * x)

    def seeds(self):
        return [self.psi(j) for j in range(1, self.N + 1)]

    def subsystem(self, m: int) -> "SeedSystem":
        """The system built from the first m seeds."""
        return seeds_build(self.gamma, m, self.k[:m], self.c_tilde[:m])


def seeds_build(gamma: float, N: int, k, c_tilde) -> SeedSystem:
    """Validate ordering/sign constraints and derive the c coefficients."""
    if gamma <= 0:
        raise ValidationError("gamma must be positive")
    k = tuple(float(v) for v in k)
    c_tilde = tuple(float(v) for v in c_tilde)
    if len(k) != N or len(c_tilde) != N:
        raise ValidationError(f"expected {N} wave numbers and {N} coefficients")
    for j in range(N):
        if k[j] <= 0:
            raise ValidationError(f"k_{j + 1} = {k[j]} must be positive")
        if j > 0 and k[j] <= k[j - 1]:
            raise ValidationError(
                f"wave numbers must be strictly increasing (k_{j} >= k_{j + 1})"
            )
        if (-1) ** j * c_tilde[j] <= 0:
            raise ValidationError(
                f"sign constraint (-1)^(j-1) c~_j > 0 violated at j={j + 1}"
            )
    if N > 0 and k[-1] >= math.pi / gamma:
        # k_N = pi/gamma makes sin(gamma k_N) = 0 and the c~ <-> c map singular
        raise ValidationError(
            f"k_N = {k[-1]} must be strictly below pi/gamma = {math.pi / gamma}"
        )
    c = []
    for j in range(N):
        cj = c_tilde[j] * math.sin(gamma * k[j])
        for i in range(N):
            if i == j:
                continue
            cj *= math.sin(0.5 * gamma * (k[i] + k[j])) / math.sin(
                0.5 * gamma * (k[i] - k[j])
            )
        c.append(cj)
        if cj <= 0:
            raise ValidationError(f"derived c_{j + 1} = {cj} is not positive")
    return SeedSystem(gamma=gamma, N=N, k=k, c_tilde=c_tilde, c=tuple(c))


def soliton_seeds(gamma: float, N: int) -> SeedSystem:
    """The special choice k_j = j, c~_j = (-1)^(j-1) (needs N < pi/gamma)."""
    return seeds_build(
        gamma, N, [j for j in range(1, N + 1)], [(-1) ** (j - 1) for j in range(1, N + 1)]
    )


# ---------------------------------------------------------------------------
# Casoratians and tau functions
# ---------------------------------------------------------------------------


def casoratian(gamma: float, fns, x: complex) -> complex:
    """W_gamma[f_1, ..., f_n](x) = i^{n(n-1)/2} det f_k(x + i((n+1)/2 - j) gamma)."""
    n = len(fns)
    if n == 0:
        return 1.0 + 0.0j
    M = np.empty((n, n), dtype=complex)
    for j in range(1, n + 1):
        xj = x + 1j * ((n + 1) / 2.0 - j) * gamma
        for kk, f in enumerate(fns):
            M[j - 1, kk] = f(xj)
    return (1j) ** (n * (n - 1) // 2) * np.linalg.det(M)


def casoratian_exp_closed_form(gamma: float, ks, x: complex) -> complex:
    """Closed form of W_gamma[e^{k_1 x}, ..., e^{k_n x}]."""
    out = cmath.exp(sum(ks) * x)
    n = len(ks)
    for i in range(n):
        for j in range(i + 1, n):
            out *= 2.0 * math.sin(0.5 * gamma * (ks[j] - ks[i]))
    return out


def _det_with_cond(A):
    det = np.linalg.det(A)
    if A.shape[0] >= 2:
        cond = np.linalg.cond(A)
        if cond > _COND_LIMIT:
            warnings.warn(
                f"determinant condition estimate {cond:.2e} exceeds {_COND_LIMIT:.0e}",
                ConditioningWarning,
                stacklevel=3,
            )
    return det


def tau_u(seed: SeedSystem, x: complex, route: str = "det") -> complex:
    """u_N(x): positive tau function, det(I + c_m e^{-(k_m+k_n)x}/sin(...))."""
    if seed.N == 0:
        return 1.0 + 0.0j
    if route == "det":
        A = _tau_matrix(seed, x, dress_j=None)
        return _det_with_cond(A)
    if route == "casoratian":
        w = casoratian(seed.gamma, seed.seeds(), x)
        norm = casoratian_exp_closed_form(seed.gamma, seed.k, x)
        return w / norm
    raise ValueError("route must be 'det' or 'casoratian'")


def tau_u_excl(seed: SeedSystem, j: int, x: complex, route: str = "det") -> complex:
    """u_{N,j}(x): tau with the dressed c_m of the excluded-seed Casoratian."""
    if not (1 <= j <= seed.N):
        raise ValueError(f"j={j} outside 1..{seed.N}")
    if route == "det":
        A = _tau_matrix(seed, x, dress_j=j)
        return _det_with_cond(A)
    if route == "casoratian":
        fns = [seed.psi(i) for i in range(1, seed.N + 1) if i != j]
        w = casoratian(seed.gamma, fns, x)
        ks = [seed.k[i] for i in range(seed.N) if i != j - 1]
        pref = 1.0
        for a in range(len(ks)):
            for b in range(a + 1, len(ks)):
                pref *= 2.0 * math.sin(0.5 * seed.gamma * (ks[b] - ks[a]))
        expo = cmath.exp((sum(seed.k) - seed.k[j - 1]) * x)
        return w / (pref * expo)
    raise ValueError("route must be 'det' or 'casoratian'")


def _tau_matrix(seed, x, dress_j):
    N = seed.N
    g = seed.gamma
    A = np.eye(N, dtype=complex)
    for m in range(N):
        cm = seed.c[m]
        if dress_j is not None:
            kj = seed.k[dress_j - 1]
            cm *= math.sin(0.5 * g * (kj - seed.k[m])) / math.sin(
                0.5 * g * (kj + seed.k[m])
            )
        for n in range(N):
            A[m, n] += (
                cm
                * cmath.exp(-(seed.k[m] + seed.k[n]) * x)
                / math.sin(0.5 * g * (seed.k[m] + seed.k[n]))
            )
    return A


# ---------------------------------------------------------------------------
# potential functions
# ---------------------------------------------------------------------------


def potential_V(seed: SeedSystem, x: complex, route: str = "casoratian") -> complex:
    """Potential function V^[N](x) of the deformed Hamiltonian."""
    if seed.N == 0:
        return 1.0 + 0.0j
    g = seed.gamma
    if route == "casoratian":
        lower = seed.seeds()[: seed.N - 1]
        w_lo_den = casoratian(g, lower, x)
        w_hi_den = casoratian(g, seed.seeds(), x - 0.5j * g)
        _check_nonzero(w_lo_den, x)
        _check_nonzero(w_hi_den, x)
        return (
            casoratian(g, lower, x - 1j * g)
            / w_lo_den
            * casoratian(g, seed.seeds(), x + 0.5j * g)
            / w_hi_den
        )
    if route == "tau":
        sub = seed.subsystem(seed.N - 1)
        u_lo_den = tau_u(sub, x)
        u_hi_den = tau_u(seed, x - 0.5j * g)
        _check_nonzero(u_lo_den, x)
        _check_nonzero(u_hi_den, x)
        return (
            cmath.exp(1j * g * seed.k[-1])
            * tau_u(sub, x - 1j * g)
            / u_lo_den
            * tau_u(seed, x + 0.5j * g)
            / u_hi_den
        )
    raise ValueError("route must be 'casoratian' or 'tau'")


def potential_calU(seed: SeedSystem, x: complex) -> complex:
    """U_N(x) = sqrt(u_N(x+i gamma) u_N(x-i gamma)) / u_N(x); real on the real axis."""
    g = seed.gamma
    den = tau_u(seed, x)
    _check_nonzero(den, x)
    rad = lambda y: tau_u(seed, y + 1j * g) * tau_u(seed, y - 1j * g)
    if abs(complex(x).imag) < 1e-14:
        val = cmath.sqrt(rad(complex(x).real))
    else:
        val = sqrt_tracked(rad, x)
    return val / den


def _check_nonzero(w, x):
    if abs(w) < _SING_TOL:
        raise SingularPointError(f"Casoratian/tau denominator ~ 0 near x={x}")


# ---------------------------------------------------------------------------
# eigenstates and waves
# ---------------------------------------------------------------------------


def _denominator_sqrt(seed: SeedSystem, x: complex) -> complex:
    """sqrt(W[psi](x - i g/2) W[psi](x + i g/2)), continued from the real axis."""
    g = seed.gamma
    fns = seed.seeds()
    rad = lambda y: casoratian(g, fns, y - 0.5j * g) * casoratian(g, fns, y + 0.5j * g)
    if abs(complex(x).imag) < 1e-14:
        return cmath.sqrt(rad(complex(x).real))
    return sqrt_tracked(rad, x)


def bound_state(seed: SeedSystem, j: int, x: complex) -> complex:
    """Eigenstate Phi^[N]_j(x) with eigenvalue -4 sin^2(gamma k_j / 2)."""
    if not (1 <= j <= seed.N):
        raise ValueError(f"j={j} outside 1..{seed.N}")
    fns = [seed.psi(i) for i in range(1, seed.N + 1) if i != j]
    num = casoratian(seed.gamma, fns, x)
    den = _denominator_sqrt(seed, x)
    _check_nonzero(den, x)
    return num / den


def bound_state_relabeled(seed: SeedSystem, n: int, x: complex, soliton_norm: bool = False) -> complex:
    """phi^[N]_n = const * Phi^[N]_{N-n}; soliton_norm applies the canonical
    constant used when identifying the soliton system with the |q|=1 family."""
    N = seed.N
    if not (0 <= n <= N - 1):
        raise ValueError(f"n={n} outside 0..{N - 1}")
    val = bound_state(seed, N - n, x)
    if soliton_norm:
        g = seed.gamma
        const = 1.0
        for l in range(1, N):
            const *= 2.0 * math.sin(0.5 * g * l)
        for l in range(1, n + 1):
            const *= (
                2.0
                * math.sin(0.5 * g * l)
                * math.sin(0.5 * g * (2 * N - 2 * n + l))
                / math.sin(0.5 * g * (N - l))
            )
        val *= const
    return val


def bound_state_energy(seed: SeedSystem, j: int) -> float:
    return -4.0 * math.sin(0.5 * seed.gamma * seed.k[j - 1]) ** 2


def wave_solution(seed: SeedSystem, kk: float, x: complex) -> complex:
    """Right-moving wave Psi^[N]_k(x) with eigenvalue 4 sinh^2(gamma k / 2)."""
    if kk <= 0:
        raise ValueError("k must be positive")
    fns = seed.seeds() + [lambda y: cmath.exp(1j * kk * y)]
    num = casoratian(seed.gamma, fns, x)
    den = _denominator_sqrt(seed, x)
    _check_nonzero(den, x)
    return num / den


def amplitude_product(seed: SeedSystem, kk: float) -> AmplitudeResult:
    """t^[N](k) = prod_j sinh(g(k+i k_j)/2)/sinh(g(k-i k_j)/2); r = 0."""
    if complex(kk).imag == 0 and kk <= 0:
        raise ValueError("k must be positive")
    g = seed.gamma
    t = 1.0 + 0.0j
    for kj in seed.k:
        t *= cmath.sinh(0.5 * g * (kk + 1j * kj)) / cmath.sinh(0.5 * g * (kk - 1j * kj))
    return AmplitudeResult(k=kk, t=t, r=0.0 + 0.0j)


def scattering_energy(gamma: float, kk: float) -> float:
    return 4.0 * math.sinh(0.5 * gamma * kk) ** 2
