"""Hot numeric inner loops: contour-quadrature sums and q-series summation.

Each kernel exists twice: a scalar-loop version that numba compiles with
``@njit`` and a vectorized pure-numpy version.  ``_backend.USE_NUMBA``
decides which one the public aliases point at; both are importable for
the cross-check test and the benchmark.
"""

import cmath

import numpy as np

from ._backend import USE_NUMBA

# ---------------------------------------------------------------------------
# quantum-dilogarithm contour integrand, summed over quadrature nodes
# ---------------------------------------------------------------------------


def _quad_sum_loop(s, w, zre, zim, gamma, delta):
    """Sum w[i] * g(s[i] + i*delta) for the dilogarithm integrand g."""
    z = complex(zre, zim)
    acc = 0.0 + 0.0j
    comp = 0.0 + 0.0j  # Kahan compensation
    for i in range(s.shape[0]):
        t = complex(s[i], delta)
        g = cmath.exp(-1j * z * t) / (
            4.0 * cmath.sinh(gamma * t) * cmath.sinh(np.pi * t) * t
        )
        term = w[i] * g - comp
        tot = acc + term
        comp = (tot - acc) - term
        acc = tot
    return acc


def _quad_sum_numpy(s, w, zre, zim, gamma, delta):
    z = complex(zre, zim)
    t = s + 1j * delta
    g = np.exp(-1j * z * t) / (4.0 * np.sinh(gamma * t) * np.sinh(np.pi * t) * t)
    # pairwise summation inside np.dot is accurate enough here
    return np.dot(w, g)


# ---------------------------------------------------------------------------
# basic hypergeometric series 2phi1 via term recurrence
# ---------------------------------------------------------------------------

# status codes shared by both implementations
PHI21_CONVERGED = 0
PHI21_MAXTERMS = 1
PHI21_DIVERGED = 2
PHI21_PARAM = 3
PHI21_TERMINATED = 4


def _phi21_sum_loop(a, b, c, q, z, tol, nmax):
    """Kahan-compensated sum of the 2phi1 series.

    Term recurrence: T_{n+1} = T_n (1-a q^n)(1-b q^n) z
    / ((1-c q^n)(1-q^{n+1})).  Returns (value, terms_used, status,
    tail_bound).  Convergence requires three successive terms below the
    tolerance; fifty consecutive growing terms flag divergence.
    """
    acc = 1.0 + 0.0j
    comp = 0.0 + 0.0j
    term = 1.0 + 0.0j
    qn = 1.0 + 0.0j
    small_streak = 0
    grow_streak = 0
    prev_mag = 1.0
    for n in range(nmax):
        den1 = 1.0 - c * qn
        den2 = 1.0 - q * qn
        if abs(den1) < 1e-14 or abs(den2) < 1e-14:
            return acc, n, PHI21_PARAM, abs(term)
        num = (1.0 - a * qn) * (1.0 - b * qn)
        if num == 0.0:
            return acc, n + 1, PHI21_TERMINATED, 0.0
        term = term * num * z / (den1 * den2)
        y = term - comp
        tot = acc + y
        comp = (tot - acc) - y
        acc = tot
        qn = qn * q
        mag = abs(term)
        if not np.isfinite(mag) or mag > 1e150:
            return acc, n + 1, PHI21_DIVERGED, mag
        scale = abs(acc)
        if scale < 1.0:
            scale = 1.0
        if mag < tol * scale:
            small_streak += 1
            if small_streak >= 3:
                # tail bound from the worst recent term ratio
                ratio = mag / prev_mag if prev_mag > 0.0 else 0.0
                if ratio >= 1.0:
                    ratio = 0.5
                tail = mag * ratio / (1.0 - ratio) + mag
                return acc, n + 1, PHI21_CONVERGED, tail
        else:
            small_streak = 0
        if mag > prev_mag:
            grow_streak += 1
            if grow_streak >= 50:
                return acc, n + 1, PHI21_DIVERGED, mag
        else:
            grow_streak = 0
        prev_mag = mag if mag > 0.0 else prev_mag
    return acc, nmax, PHI21_MAXTERMS, abs(term)


# numpy "vectorized" variant: the recurrence is inherently sequential, so
# the fallback batches the Pochhammer factors and cumulative products.
def _phi21_sum_numpy(a, b, c, q, z, tol, nmax, block=256):
    acc = 1.0 + 0.0j
    term = 1.0 + 0.0j
    n0 = 0
    small_streak = 0
    grow_streak = 0
    prev_mag = 1.0
    while n0 < nmax:
        m = min(block, nmax - n0)
        qn = q ** (n0 + np.arange(m))
        den2 = 1.0 - q ** (n0 + np.arange(1, m + 1))
        bad = (np.abs(1.0 - c * qn) < 1e-14) | (np.abs(den2) < 1e-14)
        num = (1.0 - a * qn) * (1.0 - b * qn)
        for i in range(m):
            n = n0 + i
            if bad[i]:
                return acc, n, PHI21_PARAM, abs(term)
            if num[i] == 0.0:
                return acc, n + 1, PHI21_TERMINATED, 0.0
            term = term * num[i] * z / ((1.0 - c * qn[i]) * den2[i])
            acc = acc + term
            mag = abs(term)
            if not np.isfinite(mag) or mag > 1e150:
                return acc, n + 1, PHI21_DIVERGED, mag
            scale = max(abs(acc), 1.0)
            if mag < tol * scale:
                small_streak += 1
                if small_streak >= 3:
                    ratio = mag / prev_mag if prev_mag > 0.0 else 0.0
                    if ratio >= 1.0:
                        ratio = 0.5
                    tail = mag * ratio / (1.0 - ratio) + mag
                    return acc, n + 1, PHI21_CONVERGED, tail
            else:
                small_streak = 0
            if mag > prev_mag:
                grow_streak += 1
                if grow_streak >= 50:
                    return acc, n + 1, PHI21_DIVERGED, mag
            else:
                grow_streak = 0
            prev_mag = mag if mag > 0.0 else prev_mag
        n0 += m
    return acc, nmax, PHI21_MAXTERMS, abs(term)


if USE_NUMBA:
    from numba import njit

    quad_sum = njit(cache=True)(_quad_sum_loop)
    phi21_sum = njit(cache=True)(_phi21_sum_loop)
else:
    quad_sum = _quad_sum_numpy

    def phi21_sum(a, b, c, q, z, tol, nmax):
        return _phi21_sum_numpy(a, b, c, q, z, tol, nmax)
