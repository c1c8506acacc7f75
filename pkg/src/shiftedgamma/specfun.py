"""Scalar/vector special-function kernels with complex-parameter support.

scipy's incomplete gamma and Tricomi U routines are real-only; the contour
machinery needs them for complex first parameters (values of an affine map of
the integration variable), so the required pieces are implemented here.
"""

from __future__ import annotations

import numpy as np
from scipy.special import loggamma

_TINY = 1e-280
_MAX_SERIES = 600
_MAX_CF = 400


def pochhammer(z, k):
    """Rising factorial (z)_k = z (z+1) ... (z+k-1) by direct product."""
    out = complex(1.0)
    for i in range(int(k)):
        out *= z + i
    return out


def _lower_gamma_series_sum(a, x):
    """S = sum_n x^n / (a (a+1) ... (a+n)), so that gamma(a, x) = x^a e^-x S."""
    a = np.asarray(a, dtype=complex)
    term = 1.0 / a
    total = term.copy()
    for n in range(1, _MAX_SERIES):
        term = term * (x / (a + n))
        total += term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total)):
            break
    return total

def _upper_gamma_cf(a, x):
    """Continued fraction for Gamma(a, x) * exp(x) * x^(-a), Lentz iteration."""
    a = np.asarray(a, dtype=complex)
    b = x + 1.0 - a
    c = np.full(a.shape, 1.0 / _TINY, dtype=complex)
    d = 1.0 / np.where(np.abs(b) < _TINY, _TINY, b)
    h = d.copy()
    for i in range(1, _MAX_CF):
        an = -i * (i - a)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = b + an / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) < 1e-16):
            break
    return h


def upper_gamma(a, x):
    """Upper incomplete gamma Gamma(a, x) for complex ``a`` and real ``x > 0``.

    Series route when the lower-sum is cancellation-free (x not much larger
    than |a|), continued fraction otherwise.  Accuracy degrades only in the
    untested corner x < 0.25 with ``a`` at a nonpositive integer, where the
    continued fraction is the sole usable route.
    """
    scalar = np.isscalar(a) or getattr(a, "ndim", 0) == 0
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    if x < 0:
        raise ValueError("upper_gamma requires x >= 0")
    out = np.empty(a.shape, dtype=complex)
    if x == 0:
        out[:] = np.exp(loggamma(a))
        return out[0] if scalar else out

    near_pole = (np.abs(a - np.round(a.real)) < 1e-8) & (a.real < 0.5)
    use_series = (x <= np.abs(a) + 2.0) | (x <= 1.5)
    use_series &= ~near_pole

    if np.any(use_series):
        asub = a[use_series]
        lg = loggamma(asub)
        whole = np.exp(lg)
        lower = np.exp(asub * np.log(x) - x) * _lower_gamma_series_sum(asub, x)
        # underflowing Gamma(a) leaves the (accurate) lower-series negative part
        out[use_series] = np.where(np.isfinite(whole), whole - lower, -lower)
    if np.any(~use_series):
        asub = a[~use_series]
        out[~use_series] = np.exp(-x + asub * np.log(x)) * _upper_gamma_cf(asub, x)
    return out[0] if scalar else out


def kummer_m(a, b, z, max_terms=400):
    """Confluent hypergeometric M(a, b, z) by its power series (vectorized in b)."""
    b = np.asarray(b, dtype=complex)
    term = np.ones(b.shape, dtype=complex)
    total = term.copy()
    for n in range(max_terms):
        term = term * ((a + n) * z / ((b + n) * (n + 1.0)))
        total += term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total)):
            break
    return total


def tricomi_u_tall(a, b, z):
    """U(a, b, z) via the two-term Kummer connection formula.

    Intended for |Im b| >= 10 where both M series converge in a few terms and
    b cannot collide with an integer.  z must be positive real or have
    |arg z| < pi.
    """
    scalar = np.isscalar(b) or getattr(b, "ndim", 0) == 0
    a = complex(a)
    b = np.atleast_1d(np.asarray(b, dtype=complex))
    z = complex(z)
    lz = np.log(z)
    t1 = np.exp(loggamma(1.0 - b) - loggamma(a - b + 1.0)) * kummer_m(a, b, z)
    log2 = loggamma(b - 1.0) - loggamma(a) + (1.0 - b) * lz
    m2 = kummer_m(a - b + 1.0, 2.0 - b, z)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        t2 = np.where(log2.real < 700.0, np.exp(log2) * m2, np.inf)
    t2 = np.where(log2.real < -745.0, 0.0, t2)
    out = t1 + t2
    return out[0] if scalar else out
