"""Shared result types and analytic-continuation helpers."""

import cmath
from dataclasses import dataclass, field

from .errors import BranchError


@dataclass(frozen=True)
class AmplitudeResult:
    """Transmission/reflection pair with its unitarity defect."""

    k: complex
    t: complex
    r: complex
    unitarity_defect: float = field(init=False, default=0.0)
    pole_flags: tuple = ()

    def __post_init__(self):
        defect = abs(abs(self.t) ** 2 + abs(self.r) ** 2 - 1.0)
        object.__setattr__(self, "unitarity_defect", defect)


def star(f):
    """The *-operation on analytic functions: f*(x) = conj(f(conj(x)))."""

    def fstar(x):
        return complex(f(complex(x).conjugate())).conjugate()

    return fstar


def sqrt_tracked(radicand, x, x0=None, steps=24):
    """sqrt of radicand(x), branch-continued from the real axis.

    The continuation starts at x0 (default Re x), where the radicand is
    expected to be (numerically) positive, and walks a straight segment to
    x, flipping the principal square root whenever continuity demands it.
    """
    x = complex(x)
    if x0 is None:
        x0 = complex(x.real)
    s = cmath.sqrt(radicand(x0))
    if s == 0:
        raise BranchError(f"radicand vanishes at the anchor x0={x0}")
    for i in range(1, steps + 1):
        xi = x0 + (x - x0) * (i / steps)
        r = cmath.sqrt(radicand(xi))
        if abs(r - s) > abs(r + s):
            r = -r
        if abs(r - s) > 0.9 * abs(s) and abs(s) > 0:
            raise BranchError(
                f"radicand moved too fast between continuation steps near {xi}"
            )
        s = r
    return s


def kahan_sum(terms):
    """Compensated complex summation of an iterable."""
    acc = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for t in terms:
        y = t - comp
        tot = acc + y
        comp = (tot - acc) - y
        acc = tot
    return acc
