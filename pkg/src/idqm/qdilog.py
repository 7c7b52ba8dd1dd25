"""Quantum dilogarithm Phi_gamma(z): contour integral, continuation, identities.

The function is defined inside the strip |Im z| < gamma + pi by

    Phi_gamma(z) = exp( Int_{R+i0} e^{-izt} / (4 sinh(gamma t) sinh(pi t)) dt/t )

and extended to the whole plane by the shift relations

    Phi(z + i*gamma) / Phi(z - i*gamma) = 1 / (1 + e^z),
    Phi(z + i*pi)    / Phi(z - i*pi)    = 1 / (1 + e^{pi z / gamma}).

The "R + i0" prescription is realized by integrating along the fixed
contour Im t = delta with delta = min(1, pi/gamma)/4, a quarter of the
distance to the first integrand pole above the axis; the only singularity
of the integrand near the real axis is the triple point at t = 0, which
lies safely below the contour.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import quad_sum
from .errors import (
    ContinuationOverflowError,
    DomainError,
    PoleError,
    QuadratureError,
)

DEFAULT_TOL = 1e-12
POLE_GUARD = 1e-8


@dataclass(frozen=True)
class QdilogParam:
    """Shift scale gamma and the derived primary-strip geometry."""

    gamma: float
    margin_frac: float = 1e-3

    def __post_init__(self):
        if not (self.gamma > 0):
            raise ValueError("gamma must be positive")

    @property
    def strip_halfwidth(self) -> float:
        return self.gamma + math.pi

    @property
    def margin(self) -> float:
        return self.margin_frac * self.strip_halfwidth


@dataclass(frozen=True)
class QdilogValue:
    z: complex
    value: complex
    method: str  # "integral" | "continued"
    est_error: float  # bound on the relative error


@dataclass(frozen=True)
class PoleZeroLattice:
    kind: str  # "pole" | "zero"
    n1: int
    n2: int
    location: complex = field(init=False, default=0j)

    def __post_init__(self):
        raise TypeError("use PoleZeroLattice.make")

    @staticmethod
    def make(kind, n1, n2, gamma):
        obj = object.__new__(PoleZeroLattice)
        y = (2 * n1 - 1) * gamma + (2 * n2 - 1) * math.pi
        object.__setattr__(obj, "kind", kind)
        object.__setattr__(obj, "n1", n1)
        object.__setattr__(obj, "n2", n2)
        object.__setattr__(obj, "location", 1j * y if kind == "pole" else -1j * y)
        return obj


# ---------------------------------------------------------------------------
# lattice bookkeeping
# ---------------------------------------------------------------------------


def lattice_hit(gamma: float, z: complex, tol: float = POLE_GUARD):
    """Return (kind, n1, n2) if z is within tol of a pole/zero, else None."""
    if abs(z.real) > tol:
        return None
    y = z.imag
    kind = "pole" if y > 0 else "zero"
    y = abs(y)
    n2_max = int((y - gamma + tol) / (2 * math.pi)) + 2
    for n2 in range(1, max(2, n2_max) + 1):
        rem = y - (2 * n2 - 1) * math.pi
        n1 = round((rem / gamma + 1) / 2)
        if n1 < 1:
            continue
        loc = (2 * n1 - 1) * gamma + (2 * n2 - 1) * math.pi
        if abs(loc - y) <= tol and abs(complex(z.real, abs(z.imag) - loc)) <= tol:
            return kind, n1, n2
    return None


def pole_zero_enumerate(p: QdilogParam, radius: float):
    """All lattice poles and zeros with |location| <= radius, sorted by modulus."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    out = []
    n1 = 1
    while (2 * n1 - 1) * p.gamma + math.pi <= radius:
        n2 = 1
        while (2 * n1 - 1) * p.gamma + (2 * n2 - 1) * math.pi <= radius:
            out.append(PoleZeroLattice.make("pole", n1, n2, p.gamma))
            out.append(PoleZeroLattice.make("zero", n1, n2, p.gamma))
            n2 += 1
        n1 += 1
    out.sort(key=lambda pz: (abs(pz.location), pz.kind))
    return out


# ---------------------------------------------------------------------------
# quadrature core: log Phi inside the strip
# ---------------------------------------------------------------------------

_UMAX = 3.4
_LEVELS = (0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625)


def _ts_nodes(T: float, h: float):
    """tanh-sinh nodes/weights for (0, T); mirrored for (-T, 0) by the caller."""
    u = np.arange(-_UMAX, _UMAX + 0.5 * h, h)
    su = np.sinh(u)
    x = 0.5 * T * (1.0 + np.tanh(0.5 * math.pi * su))
    w = 0.5 * T * (0.5 * math.pi) * np.cosh(u) / np.cosh(0.5 * math.pi * su) ** 2 * h
    keep = (x > 0.0) & (x < T) & (w > 1e-300)
    return x[keep], w[keep]


def _integral_log(gamma: float, z: complex, tol: float):
    """log Phi_gamma(z) by adaptive tanh-sinh quadrature on Im t = delta.

    Returns (value, est_error). Caller guarantees z is inside the strip
    with positive decay margin.
    """
    # first singularities above the axis: t = i (sinh pi*t) and t = i*pi/gamma
    # (sinh gamma*t); staying at a quarter of that distance keeps the contour
    # well clear of the triple point at t = 0 even for small gamma
    delta = min(1.0, math.pi / gamma) / 4.0
    rho = gamma + math.pi - abs(z.imag)
    T = 44.0 / rho
    prev = None
    best = None
    est = math.inf
    for h in _LEVELS:
        x, w = _ts_nodes(T, h)
        s = np.concatenate([-x[::-1], x])
        ww = np.concatenate([w[::-1], w])
        val = quad_sum(s, ww, z.real, z.imag, gamma, delta)
        if prev is not None:
            est = abs(val - prev)
            best = val
            if est <= tol:
                return val, est
        prev = val
    if best is None or not math.isfinite(est):
        raise QuadratureError(f"quadrature failed for z={z}")
    if est > max(tol * 1e3, 1e-9):
        raise QuadratureError(
            f"quadrature stalled at est_error={est:.2e} for z={z} (tol={tol:.1e})"
        )
    return best, est


# ---------------------------------------------------------------------------
# public evaluation
# ---------------------------------------------------------------------------


def _log1pexp(w: complex) -> complex:
    """Principal branch of log(1 + e^w), stable for large |Re w|."""
    if w.real > 37.0:
        return w + cmath.exp(-w)  # log(1+e^w) = w + log(1+e^-w)
    if w.real < -37.0:
        return cmath.exp(w)
    return cmath.log(1.0 + cmath.exp(w))


def eval_log(p: QdilogParam, z: complex, tol: float = DEFAULT_TOL, shift: str = "gamma"):
    """log Phi_gamma(z) with the analytic-in-strip branch.

    Inside the primary strip this is the contour integral itself, which is
    single valued and analytic.  Outside, principal-branch logs of the
    continuation factors are added; the result is then a branch of
    log Phi, continuous along the chosen shift ladder.

    Returns (logvalue, method, est_error, steps).
    """
    z = complex(z)
    hit = lattice_hit(p.gamma, z)
    if hit is not None and hit[0] == "pole":
        raise PoleError(f"z={z} within {POLE_GUARD} of pole", hit[1], hit[2])
    if hit is not None:
        raise PoleError(f"z={z} within {POLE_GUARD} of zero", hit[1], hit[2])

    if shift == "gamma":
        step = 2.0 * p.gamma
        half = p.gamma

        def factor_log(w):  # Phi(w) = Phi(w -+ 2i*gamma) * (1+e^{w +- i*gamma})^{-+1}
            return _log1pexp(w)

        def expo(w):
            return w
    elif shift == "pi":
        step = 2.0 * math.pi
        half = math.pi

        def factor_log(w):
            return _log1pexp(w)

        def expo(w):
            return math.pi * w / p.gamma
    else:
        raise ValueError("shift must be 'gamma' or 'pi'")

    # Continue until |Im w| <= half step: the remaining distance to the strip
    # edge is then at least pi (gamma ladder) resp. gamma (pi ladder), which
    # keeps the quadrature window T = 44/rho small and well conditioned.
    bound = half
    w = z
    extra = 0.0 + 0.0j
    steps = 0
    while w.imag > bound:
        extra -= factor_log(expo(w - 1j * half))
        w -= 1j * step
        steps += 1
        if steps > 100000:
            raise ContinuationOverflowError("continuation did not terminate")
    while w.imag < -bound:
        extra += factor_log(expo(w + 1j * half))
        w += 1j * step
        steps += 1
        if steps > 100000:
            raise ContinuationOverflowError("continuation did not terminate")
    base, est = _integral_log(p.gamma, w, tol)
    method = "integral" if steps == 0 else "continued"
    return base + extra, method, est + 2e-16 * steps, steps


def eval_integral(p: QdilogParam, z: complex, tol: float = DEFAULT_TOL) -> QdilogValue:
    """Phi_gamma(z) by the contour integral; z must be inside the strip."""
    z = complex(z)
    if abs(z.imag) >= p.strip_halfwidth - p.margin:
        raise DomainError(
            f"|Im z|={abs(z.imag):.6g} outside strip halfwidth "
            f"{p.strip_halfwidth:.6g} (margin {p.margin:.2g})"
        )
    logv, est = _integral_log(p.gamma, z, tol)
    return QdilogValue(z=z, value=cmath.exp(logv), method="integral", est_error=est)


def eval(p: QdilogParam, z: complex, tol: float = DEFAULT_TOL, shift: str = "gamma") -> QdilogValue:
    """Phi_gamma(z) anywhere off the pole/zero lattice."""
    logv, method, est, _steps = eval_log(p, z, tol, shift)
    if logv.real > 700.0:
        raise ContinuationOverflowError(f"|Phi| ~ exp({logv.real:.1f}) overflows")
    return QdilogValue(z=complex(z), value=cmath.exp(logv), method=method, est_error=est)


def phival(gamma: float, z: complex, tol: float = DEFAULT_TOL) -> complex:
    """Convenience scalar: Phi_gamma(z)."""
    return eval(QdilogParam(gamma), z, tol).value


def eval_plus(p: QdilogParam, z: complex, tol: float = DEFAULT_TOL) -> complex:
    """Phi^(+)_{gamma/2}(z) = Phi_{gamma/2}(z + i*gamma/2 + i*pi).

    This is the replacement for the infinite q-shifted factorial
    (e^z; q)_infty (up to an undetermined constant that cancels in every
    ratio we form).  Poles sit at z = i(m*gamma + 2*l*pi), m, l >= 0.
    """
    half = QdilogParam(p.gamma / 2.0)
    return eval(half, z + 1j * (p.gamma / 2.0 + math.pi), tol).value


def eval_plus_log(p: QdilogParam, z: complex, tol: float = DEFAULT_TOL) -> complex:
    half = QdilogParam(p.gamma / 2.0)
    logv, _m, _e, _s = eval_log(half, z + 1j * (p.gamma / 2.0 + math.pi), tol)
    return logv


def plus_is_pole(p: QdilogParam, z: complex, tol: float = POLE_GUARD) -> bool:
    """True when z sits on the pole lattice i(m*gamma + 2*l*pi) of Phi^(+)."""
    half_arg = z + 1j * (p.gamma / 2.0 + math.pi)
    hit = lattice_hit(p.gamma / 2.0, complex(half_arg), tol)
    return hit is not None and hit[0] == "pole"


def duplication_pair(p: QdilogParam, z: complex, tol: float = DEFAULT_TOL):
    """Both duplication identities, each as (product-of-two, single) pairs.

    Returns ((Phi_g(z+i pi/2) Phi_g(z-i pi/2), Phi_{2g}(2z)),
             (Phi_g(z+i g/2)  Phi_g(z-i g/2),  Phi_{g/2}(z))).
    """
    g = p.gamma
    pair_pi = (
        phival(g, z + 0.5j * math.pi, tol) * phival(g, z - 0.5j * math.pi, tol),
        phival(2 * g, 2 * z, tol),
    )
    pair_g = (
        phival(g, z + 0.5j * g, tol) * phival(g, z - 0.5j * g, tol),
        phival(g / 2, z, tol),
    )
    return pair_pi, pair_g


def inversion_rhs(gamma: float, z: complex) -> complex:
    """exp(i/(4 gamma) (z^2 + (gamma^2 + pi^2)/3)) = Phi(z) Phi(-z)."""
    return cmath.exp(1j / (4.0 * gamma) * (z * z + (gamma**2 + math.pi**2) / 3.0))


def plus_pair_rhs(gamma: float, z: complex) -> complex:
    """Closed form of Phi^(+)(z) Phi^(+)(-z - i*gamma) for base exp(-i*gamma)."""
    s = z + 1j * (gamma / 2.0 + math.pi)
    expo = 1j / (2.0 * gamma) * s * s + 1j * (gamma**2 + 4.0 * math.pi**2) / (
        24.0 * gamma
    )
    return cmath.exp(expo) / (1.0 - cmath.exp(-2.0 * math.pi * z / gamma))


def asymptotic(p: QdilogParam, z: complex) -> complex:
    """Asymptotic value inside the strip: inversion exponential (Re z -> +inf) or 1."""
    if z.real >= 0:
        return inversion_rhs(p.gamma, z)
    return 1.0 + 0.0j
