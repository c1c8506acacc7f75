"""Distributions of products, quotients, sums, and linear combinations of
independent shifted generalized gamma variables.

Products and quotients multiply Mellin transforms and invert along a vertical
line; sums multiply Laplace transforms and invert with the Bromwich integral.
Factor lists are plain sequences of :class:`~shiftedgamma.gengamma.GenGammaParams`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.integrate

from .errors import DomainError, InversionQualityError
from .gengamma import (GenGammaParams, laplace_transform, mellin_evaluator,
                       mellin_transform, scale)
from .quadrature import bromwich_inversion, mellin_inversion


@dataclass(frozen=True)
class InversionSettings:
    """Knobs for the numerical transform inversions."""
    abscissa: float | None = None     # auto-selected when None
    tolerance: float = 1e-8
    max_points: int = 200_000
    damping: float = 0.0              # extra Bromwich abscissa shift

    def __post_init__(self):
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")


_DEFAULT = InversionSettings()


def _check_factors(factors):
    factors = list(factors)
    if not factors:
        raise DomainError("at least one factor is required")
    for p in factors:
        if not isinstance(p, GenGammaParams):
            raise DomainError("factors must be GenGammaParams")
    return factors


def product_mellin(factors, s):
    """Mellin transform of the product variable: the product of the factors'."""
    factors = _check_factors(factors)
    out = complex(1.0)
    for p in factors:
        out *= mellin_transform(p, complex(s))
    return out


def _product_abscissa(factors):
    # zero-shift factors restrict the strip to Re s > 1 - alpha
    lo = max([1.0 - p.alpha for p in factors if p.mu == 0.0], default=None)
    if lo is None:
        return 1.0
    return max(1.0, lo + 0.5)


def product_support(factors):
    return math.prod(p.mu for p in factors) if all(p.mu > 0 for p in factors) \
        else 0.0


def _clip_density(val, err, tol):
    if val < -10.0 * tol - 10.0 * err:
        raise InversionQualityError(
            f"inverted density {val} is negative beyond tolerance {tol}")
    return max(val, 0.0)


def product_pdf(factors, x, inv=_DEFAULT):
    """Density of the product of independent factors at x (inverse Mellin)."""
    factors = _check_factors(factors)
    if x <= product_support(factors):
        return 0.0
    evals = [mellin_evaluator(p) for p in factors]

    def transform(s):
        out = np.ones(np.shape(s), dtype=complex)
        for ev in evals:
            out = out * ev(s)
        return out

    c = inv.abscissa if inv.abscissa is not None else _product_abscissa(factors)
    val, err = mellin_inversion(transform, x, c, inv.tolerance)
    return _clip_density(val, err, inv.tolerance)


def quotient_mellin(numerator, denominator, s):
    """Mellin transform of the ratio: M_num(s) * M_den(2 - s)."""
    s = complex(s)
    return mellin_transform(numerator, s) * mellin_transform(denominator, 2.0 - s)


def quotient_pdf(numerator, denominator, x, inv=_DEFAULT):
    """Density of the ratio of two independent factors at x."""
    for p in (numerator, denominator):
        if not isinstance(p, GenGammaParams):
            raise DomainError("numerator and denominator must be GenGammaParams")
    if x <= 0.0:
        return 0.0
    ev_n = mellin_evaluator(numerator)
    ev_d = mellin_evaluator(denominator)

    def transform(s):
        return ev_n(s) * ev_d(2.0 - np.asarray(s, dtype=complex))

    if inv.abscissa is not None:
        c = inv.abscissa
    else:
        lo = 1.0 - numerator.alpha if numerator.mu == 0.0 else None
        hi = 1.0 + denominator.alpha if denominator.mu == 0.0 else None
        c = 1.0
        if lo is not None and c <= lo:
            c = lo + 0.25 * ((hi - lo) if hi is not None else 1.0)
        if hi is not None and c >= hi:
            c = 0.5 * ((lo if lo is not None else hi - 1.0) + hi)
    val, err = mellin_inversion(transform, x, c, inv.tolerance)
    return _clip_density(val, err, inv.tolerance)


def sum_laplace(factors, s):
    """Laplace transform of the sum variable: the product of the factors'."""
    factors = _check_factors(factors)
    out = complex(1.0)
    for p in factors:
        out *= laplace_transform(p, complex(s))
    return out


def sum_support(factors):
    return sum(p.mu for p in factors)


def sum_pdf(factors, x, inv=_DEFAULT):
    """Density of the sum of independent factors at x (Bromwich inversion)."""
    factors = _check_factors(factors)
    shift = sum_support(factors)
    if x <= shift:
        return 0.0
    if inv.abscissa is not None:
        c = inv.abscissa
    else:
        # balance e^{cx} growth against oscillation
        c = min(1.0, 1.0 / max(1.0, x - shift))

    def transform(s):
        out = np.ones(np.shape(s), dtype=complex)
        for p in factors:
            out = out * laplace_transform(p, s)
        return out

    val, err = bromwich_inversion(transform, x, c, inv.tolerance,
                                  damping=inv.damping)
    return _clip_density(val, err, inv.tolerance)


def linear_combination_pdf(coeffs, factors, x, inv=_DEFAULT):
    """Density of sum_j coeffs_j X_j via the scaling rule and :func:`sum_pdf`."""
    factors = _check_factors(factors)
    coeffs = list(coeffs)
    if len(coeffs) != len(factors):
        raise DomainError("coeffs and factors must have equal length")
    if not all(a > 0 for a in coeffs):
        raise DomainError("coefficients must be positive")
    return sum_pdf([scale(p, a) for a, p in zip(coeffs, factors)], x, inv)


def cdf_of(pdf_fn, support_start, x, tol=1e-8):
    """Cumulative integral of an arbitrary density from its support start."""
    if x <= support_start:
        return 0.0
    val, _ = scipy.integrate.quad(pdf_fn, support_start, x,
                                  epsabs=tol, epsrel=tol, limit=300)
    return min(max(val, 0.0), 1.0)
