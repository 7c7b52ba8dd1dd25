"""Scattering amplitudes of the sinh-coordinate family at |q| = 1.

Two independent routes are implemented.  The closed-form route evaluates
t(k), r(k) directly as ratios of quantum dilogarithms.  The evidence route
runs the conjectured |q|=1 connection formula for 2phi1 on the analytically
continued wave Psi_k(x) and reads the plane-wave coefficients A(k), B(k)
off the x -> -infinity asymptotics; the two must agree.  A classical
Gamma-function oracle (the 1/cosh^2 x potential) pins the gamma -> 0 limit.

All dilogarithm prefactors are assembled in log space: the individual
Phi^(+) factors reach e^{+-100} scales where a value-space product would
overflow long before the final ratio does.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import gammafn, qdilog, qseries
from .common import AmplitudeResult
from .errors import (
    DegenerateError,
    DivergenceError,
    InconclusiveError,
    ValidationError,
)
from .solvable import Coupling

_INT_TOL = 1e-9


@dataclass(frozen=True)
class ConnectionInput:
    """Exponent-form parameters (lambda, mu, nu; z) of the connection formula.

    The 2phi1 on the left is 2phi1(e^lam, e^mu; e^nu | q; e^z), q = e^{-i gamma}.
    """

    gamma: float
    lam: complex
    mu: complex
    nu: complex
    z: complex

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValidationError("gamma must be positive")
        # lam - mu on the i*gamma lattice makes both branch prefactors singular
        d = (self.lam - self.mu) / (1j * self.gamma)
        if abs(d.imag) < 1e-10 and abs(d.real - round(d.real)) < 1e-10:
            raise DegenerateError(
                f"lambda - mu = {self.lam - self.mu} lies on the i*gamma lattice"
            )

    def swapped(self) -> "ConnectionInput":
        return ConnectionInput(self.gamma, self.mu, self.lam, self.nu, self.z)

    def branch_input(self) -> "ConnectionInput":
        """The (lam', mu', nu'; z') of the first-branch 2phi1 on the RHS."""
        g = 1j * self.gamma
        return ConnectionInput(
            self.gamma,
            self.lam,
            self.lam - self.nu - g,
            self.lam - self.mu - g,
            self.nu - self.lam - self.mu - self.z - g,
        )


def _plus_log(gamma: float, w: complex) -> complex:
    return qdilog.eval_plus_log(qdilog.QdilogParam(gamma), w)


def connection_coef(ci: ConnectionInput, branch: int = 1) -> complex:
    """Prefactor of the first (branch=1) or second (branch=2) RHS term.

    A pole of a denominator Phi^(+) kills the branch: the coefficient is 0.
    """
    p = ci if branch == 1 else ci.swapped()
    g, ig = p.gamma, 1j * p.gamma
    param = qdilog.QdilogParam(g)
    num = [p.nu, p.mu - p.lam, p.z, -ig - p.z]
    den = [p.mu, p.nu - p.lam, p.lam + p.z, -ig - p.lam - p.z]
    for w in den:
        if qdilog.plus_is_pole(param, w):
            return 0.0 + 0.0j
    acc = 0.0 + 0.0j
    for w in num:
        acc += _plus_log(g, w)
    for w in den:
        acc -= _plus_log(g, w)
    return cmath.exp(acc)


def _branch_series(ci: ConnectionInput, branch: int, tol: float):
    p = ci if branch == 1 else ci.swapped()
    ig = 1j * p.gamma
    params = qseries.Phi21Params(p.lam, p.lam - p.nu - ig, p.lam - p.mu - ig)
    zarg = cmath.exp(p.nu - p.lam - p.mu - p.z - ig)
    return qseries.phi21(qseries.Base(p.gamma), params, zarg, tol)


def connection_rhs(ci: ConnectionInput, tol: float = 1e-10) -> complex:
    """Full right-hand side of the |q|=1 connection formula."""
    total = 0.0 + 0.0j
    for branch in (1, 2):
        coef = connection_coef(ci, branch)
        if coef == 0:
            continue
        total += coef * _branch_series(ci, branch, tol).value
    return total


def connection_lhs(ci: ConnectionInput, tol: float = 1e-10) -> qseries.SeriesResult:
    params = qseries.Phi21Params(ci.lam, ci.mu, ci.nu)
    return qseries.phi21(qseries.Base(ci.gamma), params, cmath.exp(ci.z), tol)


def connection_verify(ci: ConnectionInput, tol: float = 1e-6) -> dict:
    """Compare LHS and RHS of the connection formula; PASS on agreement."""
    lhs = connection_lhs(ci, min(tol, 1e-10))
    rhs_parts = []
    rhs = 0.0 + 0.0j
    converged_rhs = True
    for branch in (1, 2):
        coef = connection_coef(ci, branch)
        if coef == 0:
            rhs_parts.append({"branch": branch, "coef": coef, "vanishes": True})
            continue
        try:
            sr = _branch_series(ci, branch, min(tol, 1e-10))
        except DivergenceError as exc:
            # outside the overlap of the empirical convergence domains
            raise InconclusiveError(
                f"branch {branch} series diverges ({exc}); "
                "no simultaneous convergence domain at these parameters"
            ) from exc
        converged_rhs = converged_rhs and sr.converged
        rhs += coef * sr.value
        rhs_parts.append(
            {
                "branch": branch,
                "coef": coef,
                "series": sr.value,
                "terms": sr.terms_used,
                "converged": sr.converged,
            }
        )
    if not lhs.converged and not converged_rhs:
        raise InconclusiveError("neither side's series stabilized")
    err = abs(lhs.value - rhs)
    scale = max(abs(lhs.value), 1.0)
    return {
        "lhs": lhs.value,
        "rhs": rhs,
        "abs_error": err,
        "passed": bool(err < tol * scale and lhs.converged and converged_rhs),
        "lhs_terms": lhs.terms_used,
        "lhs_converged": lhs.converged,
        "rhs_parts": rhs_parts,
    }


def double_application_check(ci: ConnectionInput):
    """Coefficient identities behind the self-consistency of two applications.

    Applying the formula to its own RHS reproduces the LHS iff

        C1(P) C1(P1) + C2(P) C1(P2) = 1,
        C1(P) C2(P1) + C2(P) C2(P2) = 0,

    where P1, P2 are the parameter sets of the two RHS 2phi1's.  Returns the
    two sums.
    """
    p1 = ci.branch_input()
    p2 = ci.swapped().branch_input()
    c1, c2 = connection_coef(ci, 1), connection_coef(ci, 2)
    s_identity = c1 * connection_coef(p1, 1) + c2 * connection_coef(p2, 1)
    s_cross = c1 * connection_coef(p1, 2) + c2 * connection_coef(p2, 2)
    return s_identity, s_cross


def qeuler_transform(ci: ConnectionInput, tol: float = 1e-10):
    """Both sides of the |q|=1 Euler transformation (same replacement rule)."""
    g = ci.gamma
    lhs = connection_lhs(ci, tol).value
    shift = ci.lam + ci.mu - ci.nu
    pref = cmath.exp(_plus_log(g, ci.z) - _plus_log(g, ci.z + shift))
    params = qseries.Phi21Params(ci.nu - ci.lam, ci.nu - ci.mu, ci.nu)
    rhs = pref * qseries.phi21(
        qseries.Base(g), params, cmath.exp(ci.z + shift), tol
    ).value
    return lhs, rhs


# ---------------------------------------------------------------------------
# the analytically continued wave and its amplitudes
# ---------------------------------------------------------------------------


def _psi_connection_input(c: Coupling, k: complex, x: complex) -> ConnectionInput:
    g, h = c.gamma, c.h
    return ConnectionInput(
        g,
        lam=-g * k + 1j * g * h,
        mu=1j * g * h,
        nu=-1j * g - g * k,
        z=-1j * g * (1.0 + h) - 2.0 * x - 1j * math.pi,
    )


def _psi_prefactor_log(c: Coupling, x: complex) -> complex:
    """log of e^{2hx} sqrt(1+e^{2x}) (dilog ratio)^{1/2} (no plane-wave factor)."""
    g, h = c.gamma, c.h
    p = qdilog.QdilogParam(0.5 * g)
    lp, _, _, _ = qdilog.eval_log(p, 2.0 * x + 1j * g * (h + 0.5))
    lm, _, _, _ = qdilog.eval_log(p, 2.0 * x - 1j * g * (h + 0.5))
    return 2.0 * h * x + 0.5 * cmath.log(1.0 + cmath.exp(2.0 * x)) + 0.5 * (lp - lm)


def wave_psi(c: Coupling, k: float, x: float, tol: float = 1e-10) -> complex:
    """Psi_k(x): the solution that tends to the unit right-mover e^{ikx}.

    For Re x > 0 the defining series converges (its argument is ~ e^{-2x});
    for Re x < 0 the wave is continued with the connection formula, whose
    branch series converge there instead.
    """
    ci = _psi_connection_input(c, k, x)
    if complex(x).real >= 0:
        val = connection_lhs(ci, tol).value
    else:
        val = connection_rhs(ci, tol)
    pref = cmath.exp(1j * k * complex(x) + _psi_prefactor_log(c, x))
    return pref * val


def amplitudes(c: Coupling, k: float) -> AmplitudeResult:
    """t(k), r(k) from the closed quantum-dilogarithm forms."""
    g, h = c.gamma, c.h
    if not (complex(k).imag == 0 and k > 0):
        raise ValidationError("k must be real positive")
    log_t = 0.5j * g * h * (h + 1.0)
    for w in (-k * g + 1j * g * h, -k * g - 1j * g * (h + 1.0)):
        log_t += _plus_log(g, w)
    for w in (-k * g + 0.0j, -k * g - 1j * g):
        log_t -= _plus_log(g, w)
    t = cmath.exp(log_t)

    if abs(h - round(h)) < _INT_TOL:
        # Phi^(+)(i gamma h) in r's denominator is at a pole: r vanishes
        r = 0.0 + 0.0j
    else:
        log_r = 0.5 * k * g * (1.0 - 1j * k)
        for w in (k * g + 0.0j, -k * g + 1j * g * h, -k * g - 1j * g * (h + 1.0)):
            log_r += _plus_log(g, w)
        for w in (-k * g + 0.0j, 1j * g * h, -1j * g * (h + 1.0)):
            log_r -= _plus_log(g, w)
        r = cmath.exp(log_r)

    flags = tuple((n, h - n) for n in range(c.nmax + 1))
    return AmplitudeResult(k=k, t=t, r=r, pole_flags=flags)


def amplitudes_from_connection(
    c: Coupling, k: float, x0: float = -12.0, tol: float = 1e-10
) -> AmplitudeResult:
    """t(k), r(k) derived by running the connection formula on Psi_k.

    At x0 deep in the left asymptotic region the two RHS branches are the
    plane-wave components up to O(e^{2 x0}): the mu-branch carries e^{ikx}
    (coefficient A) and the lambda-branch carries e^{-ikx} (coefficient B).
    Stripping the plane waves gives A and B, and t = 1/A, r = B/A.
    """
    ci = _psi_connection_input(c, k, x0)
    logP = _psi_prefactor_log(c, x0)
    totals = []
    for branch in (1, 2):
        coef = connection_coef(ci, branch)
        if coef == 0:
            totals.append(0.0 + 0.0j)
            continue
        sr = _branch_series(ci, branch, tol)
        totals.append(cmath.exp(logP) * coef * sr.value)
    A = totals[1]
    B = totals[0] * cmath.exp(2j * k * x0)
    return AmplitudeResult(k=k, t=1.0 / A, r=B / A, pole_flags=("pipeline",))


def transmission_pole_census(c: Coupling, grid: int = 400) -> list:
    """Locate zeros of |1/t(i kappa)| on 0 < kappa <= pi/gamma.

    Scans a grid for local minima of |1/t| and refines each by golden-section
    search; returns the kappa positions where |1/t| drops below 1e-6.
    """
    g, h = c.gamma, c.h

    def inv_t_abs(kappa: float) -> float:
        log_t = 0.0 + 0.0j
        try:
            for w in (-1j * kappa * g + 1j * g * h, -1j * kappa * g - 1j * g * (h + 1.0)):
                log_t += _plus_log(g, w)
            for w in (-1j * kappa * g + 0.0j, -1j * kappa * g - 1j * g):
                log_t -= _plus_log(g, w)
        except Exception:
            return 0.0  # numerator pole: |1/t| = 0 exactly
        return math.exp(-log_t.real)

    kmax = math.pi / g
    ks = np.linspace(kmax / grid, kmax, grid)
    vals = np.array([inv_t_abs(k) for k in ks])
    zeros = []
    for i in range(1, grid - 1):
        if vals[i] < vals[i - 1] and vals[i] < vals[i + 1]:
            a, b = ks[i - 1], ks[i + 1]
            invphi = (math.sqrt(5.0) - 1.0) / 2.0
            x1 = b - invphi * (b - a)
            x2 = a + invphi * (b - a)
            f1, f2 = inv_t_abs(x1), inv_t_abs(x2)
            for _ in range(60):
                if f1 < f2:
                    b, x2, f2 = x2, x1, f1
                    x1 = b - invphi * (b - a)
                    f1 = inv_t_abs(x1)
                else:
                    a, x1, f1 = x1, x2, f2
                    x2 = a + invphi * (b - a)
                    f2 = inv_t_abs(x2)
            km = 0.5 * (a + b)
            if inv_t_abs(km) < 1e-6:
                zeros.append(km)
    return zeros


# ---------------------------------------------------------------------------
# the ordinary-QM oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalOracle:
    """Coupling and wavenumber for the 1/cosh^2 x reference amplitudes."""

    h: float
    k: float

    def __post_init__(self):
        if self.h <= 0:
            raise ValidationError("h must be positive")


def classical_amplitudes(o: ClassicalOracle):
    """Gamma-function amplitudes of p^2 - h(h+1)/cosh^2 x."""
    h, k = o.h, o.k
    t = (
        gammafn.gamma(-h - 1j * k)
        * gammafn.gamma(1.0 + h - 1j * k)
        / (gammafn.gamma(-1j * k) * gammafn.gamma(1.0 - 1j * k))
    )
    if abs(h - round(h)) < _INT_TOL:
        r = 0.0 + 0.0j  # Gamma(-h) pole in the denominator
    else:
        r = (
            gammafn.gamma(1j * k)
            * gammafn.gamma(-h - 1j * k)
            * gammafn.gamma(1.0 + h - 1j * k)
            / (gammafn.gamma(-1j * k) * gammafn.gamma(-h) * gammafn.gamma(1.0 + h))
        )
    return t, r


def classical_connection_2F1(alpha: complex, beta: complex, gam: complex, z: complex):
    """Both sides of the Gauss connection formula at 1-z; returns (lhs, rhs)."""
    lhs = gammafn.hyp2f1(alpha, beta, gam, z)
    w = 1.0 - z
    first = (
        gammafn.gamma(gam)
        * gammafn.gamma(alpha + beta - gam)
        / (gammafn.gamma(alpha) * gammafn.gamma(beta))
        * w ** (gam - alpha - beta)
        * gammafn.hyp2f1(gam - alpha, gam - beta, gam - alpha - beta + 1.0, w)
    )
    second = (
        gammafn.gamma(gam)
        * gammafn.gamma(gam - alpha - beta)
        / (gammafn.gamma(gam - alpha) * gammafn.gamma(gam - beta))
        * gammafn.hyp2f1(alpha, beta, alpha + beta - gam + 1.0, w)
    )
    return lhs, first + second
