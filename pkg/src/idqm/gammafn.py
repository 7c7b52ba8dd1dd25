"""Complex Gamma function (Lanczos, g=7) and a Gauss 2F1 power series.

These back the ordinary-QM oracle: the exactly known 1/cosh^2 x
transmission/reflection amplitudes and the classical hypergeometric
connection formula that the |q|=1 conjecture mirrors.
"""

import cmath
import math

from .errors import CutError

# Lanczos g=7, 9-term coefficient set (Godfrey/Pugh), relative error < 1e-13
_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(z: complex) -> complex:
    """Gamma(z) for complex z, poles at non-positive integers excluded."""
    z = complex(z)
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        s = cmath.sin(math.pi * z)
        if s == 0:
            raise ZeroDivisionError(f"Gamma pole at z={z}")
        return math.pi / (s * gamma(1.0 - z))
    z -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * acc


def log_gamma(z: complex) -> complex:
    """log Gamma(z), principal-ish branch from the Lanczos form (Re z > 0.5)."""
    z = complex(z)
    if z.real < 0.5:
        return cmath.log(math.pi / cmath.sin(math.pi * z)) - log_gamma(1.0 - z)
    z -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _G + 0.5
    return (
        0.5 * math.log(2.0 * math.pi)
        + (z + 0.5) * cmath.log(t)
        - t
        + cmath.log(acc)
    )


def hyp2f1(a: complex, b: complex, c: complex, z: complex, tol: float = 1e-14) -> complex:
    """Gauss 2F1 by its power series; requires |z| < 1 unless terminating."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    terminating = _nonpositive_integer(a) or _nonpositive_integer(b)
    if abs(z) >= 1.0 and not terminating:
        raise CutError(f"|z|={abs(z):.3f} >= 1: series does not converge")
    acc = 1.0 + 0.0j
    term = 1.0 + 0.0j
    nmax = 100000
    if terminating:
        n_a = -round(a.real) if _nonpositive_integer(a) else nmax
        n_b = -round(b.real) if _nonpositive_integer(b) else nmax
        nmax = min(n_a, n_b) + 1
    small = 0
    for n in range(nmax):
        den = (c + n) * (n + 1.0)
        if den == 0:
            raise ZeroDivisionError(f"2F1 lower parameter pole at n={n}")
        term *= (a + n) * (b + n) * z / den
        acc += term
        if abs(term) < tol * max(abs(acc), 1.0):
            small += 1
            if small >= 3:
                return acc
        else:
            small = 0
    if terminating:
        return acc
    raise CutError("2F1 series did not converge within the term budget")


def _nonpositive_integer(w: complex) -> bool:
    return abs(w.imag) < 1e-14 and abs(w.real - round(w.real)) < 1e-12 and w.real <= 1e-12
