"""q-shifted factorials, 2phi1 at |q|=1, and Askey-Wilson / q-ultraspherical
polynomials.

The base is q = e^{-i(gamma - i*epsilon)}; epsilon = 0 puts q on the unit
circle, approached from below.  Convergence of the infinite 2phi1 series at
|q| = 1 is empirical: the summation monitor never reports false convergence,
and a Richardson extrapolation in epsilon is used as fallback when the
direct sum stalls.
"""

import cmath
import math
from dataclasses import dataclass, field

from ._kernels import (
    PHI21_CONVERGED,
    PHI21_DIVERGED,
    PHI21_PARAM,
    PHI21_TERMINATED,
    phi21_sum,
)
from .errors import DivergenceError, ParamError, ValidationError

MAX_TERMS = 20000
ROOT_OF_UNITY_NMAX = 64
ROOT_OF_UNITY_TOL = 1e-9


@dataclass(frozen=True)
class Base:
    """Series base q = e^{-i(gamma - i epsilon)} with |q| = e^{-epsilon}."""

    gamma: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not (self.gamma > 0):
            raise ValidationError("gamma must be positive")
        if self.epsilon < 0:
            raise ValidationError("epsilon must be >= 0")
        if self.epsilon == 0.0:
            _guard_root_of_unity(self.gamma)

    @property
    def q(self) -> complex:
        return cmath.exp(-1j * (self.gamma - 1j * self.epsilon))

    def with_epsilon(self, eps: float) -> "Base":
        return Base(self.gamma, eps)


def _guard_root_of_unity(gamma: float):
    # q^n = 1 iff n*gamma is a multiple of 2*pi, i.e. gamma/pi rational with
    # small denominator; those bases are excluded at epsilon = 0.
    x = gamma / math.pi
    for n in range(1, ROOT_OF_UNITY_NMAX + 1):
        p = round(x * n)
        if abs(x - p / n) < ROOT_OF_UNITY_TOL:
            raise ValidationError(
                f"gamma/pi within {ROOT_OF_UNITY_TOL} of {p}/{n}: "
                "q is (numerically) a root of unity"
            )


@dataclass(frozen=True)
class Phi21Params:
    """Upper/lower parameters a, b, c together with their exponents.

    The exponent form is authoritative: the connection formula acts on
    lambda, mu, nu themselves, and e^{log_a} must reproduce a to machine
    accuracy.
    """

    log_a: complex
    log_b: complex
    log_c: complex
    a: complex = field(init=False, default=0j)
    b: complex = field(init=False, default=0j)
    c: complex = field(init=False, default=0j)

    def __post_init__(self):
        object.__setattr__(self, "a", cmath.exp(self.log_a))
        object.__setattr__(self, "b", cmath.exp(self.log_b))
        object.__setattr__(self, "c", cmath.exp(self.log_c))

    @staticmethod
    def from_values(a: complex, b: complex, c: complex) -> "Phi21Params":
        return Phi21Params(cmath.log(a), cmath.log(b), cmath.log(c))


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    converged: bool
    tail_bound: float


# ---------------------------------------------------------------------------
# q-Pochhammer
# ---------------------------------------------------------------------------


def qpochhammer_finite(base: Base, a: complex, n: int) -> complex:
    """(a; q)_n = prod_{j=0}^{n-1} (1 - a q^j)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q = base.q
    out = 1.0 + 0.0j
    aqj = complex(a)
    for _ in range(n):
        out *= 1.0 - aqj
        aqj *= q
    return out


# ---------------------------------------------------------------------------
# 2phi1
# ---------------------------------------------------------------------------


def _phi21_raw(q, a, b, c, z, tol, nmax=MAX_TERMS):
    value, terms, status, tail = phi21_sum(
        complex(a), complex(b), complex(c), complex(q), complex(z), tol, nmax
    )
    return value, terms, status, tail


def phi21(base: Base, p: Phi21Params, z: complex, tol: float = 1e-12) -> SeriesResult:
    """Sum 2phi1(a, b; c | q; z), never reporting false convergence.

    At epsilon = 0 the series is summed directly; if the monitor cannot
    certify convergence, the value is recomputed at epsilon in
    {1e-5, 1e-6, 1e-7} and Richardson-extrapolated to epsilon -> 0.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    value, terms, status, tail = _phi21_raw(base.q, p.a, p.b, p.c, z, tol)
    if status == PHI21_PARAM:
        raise ParamError(f"(c;q)_n vanished at n={terms}")
    if status in (PHI21_CONVERGED, PHI21_TERMINATED):
        return SeriesResult(value, terms, True, tail)
    if status == PHI21_DIVERGED and base.epsilon > 0:
        raise DivergenceError(f"series terms grew for 50 indices (|z|={abs(z):.3g})")
    if base.epsilon > 0:
        return SeriesResult(value, terms, False, tail)

    # |q| up 1 fallback: regularize and extrapolate linearly in epsilon
    vals = []
    for eps in (1e-5, 1e-6, 1e-7):
        breg = base.with_epsilon(eps)
        v, t, s, tb = _phi21_raw(breg.q, p.a, p.b, p.c, z, tol)
        if s not in (PHI21_CONVERGED, PHI21_TERMINATED):
            if status == PHI21_DIVERGED:
                raise DivergenceError(
                    f"series diverges at epsilon=0 and epsilon={eps}"
                )
            return SeriesResult(value, terms, False, tail)
        vals.append(v)
    # eps steps down by 10x: v(eps) ~ v0 + c*eps  =>  v0 ~ (10 v3 - v2)/9
    extrap = (10.0 * vals[2] - vals[1]) / 9.0
    extrap_prev = (10.0 * vals[1] - vals[0]) / 9.0
    err = abs(extrap - extrap_prev)
    converged = err < max(tol, 1e-10) * max(abs(extrap), 1.0) * 10
    return SeriesResult(extrap, terms, converged, err)


def q_difference_residual(base: Base, p: Phi21Params, f, z: complex) -> complex:
    """Residual of the 2phi1 difference equation applied to f at z.

    (c - a b z) f(qz) + ((a+b) z - c - q) f(z) + (q - z) f(z/q); zero (to
    tolerance) certifies that f solves the same equation as 2phi1(a,b;c|q;.).
    """
    q = base.q
    a, b, c = p.a, p.b, p.c
    return (
        (c - a * b * z) * f(q * z)
        + ((a + b) * z - c - q) * f(z)
        + (q - z) * f(z / q)
    )


# ---------------------------------------------------------------------------
# terminating r+1 phi r sums (2phi1 / 3phi2 / 4phi3 all have s = r-1)
# ---------------------------------------------------------------------------


def terminating_phi(base: Base, uppers, lowers, n: int, z: complex) -> complex:
    """Terminating basic hypergeometric sum of n+1 terms.

    uppers must contain q^{-n} (or an equivalent zero-producing entry);
    lowers excludes the implicit (q; q)_m factor.  A vanishing lower
    Pochhammer factor before termination raises ParamError.
    """
    q = base.q
    term = 1.0 + 0.0j
    acc = 1.0 + 0.0j
    qm = 1.0 + 0.0j
    for m in range(n):
        num = 1.0 + 0.0j
        for u in uppers:
            num *= 1.0 - u * qm
        den = 1.0 - q * qm  # the (q;q) factor
        for l in lowers:
            den *= 1.0 - l * qm
        if abs(den) < 1e-13:
            raise ParamError(f"lower Pochhammer vanished at m={m}")
        term = term * num * z / den
        acc += term
        qm *= q
    return acc


# ---------------------------------------------------------------------------
# Askey-Wilson and q-ultraspherical polynomials
# ---------------------------------------------------------------------------


def askey_wilson(
    base: Base,
    n: int,
    a1: complex,
    a2: complex,
    a3: complex,
    a4: complex,
    x_or_eta: complex,
    coordinate: str = "cos_x",
) -> complex:
    """p_n(eta; a1, a2, a3, a4 | q) with eta = cos x (or i sinh x).

    coordinate="i_sinh_x" applies x -> pi/2 - i x first, which turns
    cos x into i sinh x.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    x = complex(x_or_eta)
    if coordinate == "i_sinh_x":
        x = math.pi / 2.0 - 1j * x
    elif coordinate != "cos_x":
        raise ValueError("coordinate must be 'cos_x' or 'i_sinh_x'")
    q = base.q
    eix = cmath.exp(1j * x)
    emix = cmath.exp(-1j * x)
    b4 = a1 * a2 * a3 * a4
    pref = a1 ** (-n)
    for prod in (a1 * a2, a1 * a3, a1 * a4):
        pref *= qpochhammer_finite(base, prod, n)
    uppers = (q ** (-n), b4 * q ** (n - 1), a1 * eix, a1 * emix)
    lowers = (a1 * a2, a1 * a3, a1 * a4)
    return pref * terminating_phi(base, uppers, lowers, n, q)


def q_ultraspherical(base: Base, n: int, beta: complex, x: complex) -> complex:
    """C_n(cos x; beta | q) by its 2phi1 representation."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q = base.q
    pref = qpochhammer_finite(base, beta, n) / qpochhammer_finite(base, q, n)
    pref *= cmath.exp(1j * n * x)
    uppers = (q ** (-n), beta)
    lowers = (q ** (1 - n) / beta,)
    z = q * cmath.exp(-2j * x) / beta
    return pref * terminating_phi(base, uppers, lowers, n, z)


def q_ultraspherical_forms(base: Base, n: int, beta: complex, x: complex):
    """All four representations of C_n(cos x; beta|q): AW, 4phi3, 3phi2, 2phi1."""
    q = base.q
    sb = cmath.sqrt(beta)
    sq = cmath.sqrt(q)
    b2n = qpochhammer_finite(base, beta * beta, n)
    qn = qpochhammer_finite(base, q, n)

    norm = b2n / (
        qpochhammer_finite(base, beta * sq, n)
        * qpochhammer_finite(base, -beta, n)
        * qpochhammer_finite(base, -beta * sq, n)
        * qn
    )
    via_aw = norm * askey_wilson(base, n, sb, sb * sq, -sb, -sb * sq, x)

    eix = cmath.exp(1j * x)
    emix = cmath.exp(-1j * x)
    uppers = (q ** (-n), beta * beta * q**n, sb * eix, sb * emix)
    lowers = (beta * sq, -beta, -beta * sq)
    via_4phi3 = b2n / qn * sb ** (-n) * terminating_phi(base, uppers, lowers, n, q)

    uppers = (q ** (-n), beta, beta * eix * eix)
    lowers = (beta * beta, 0.0 + 0.0j)
    via_3phi2 = (
        b2n / qn * beta ** (-n) * emix**n * terminating_phi(base, uppers, lowers, n, q)
    )

    return via_aw, via_4phi3, via_3phi2, q_ultraspherical(base, n, beta, x)
