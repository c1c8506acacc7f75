"""Ground-truth generators used to check the transform-inversion machinery.

Monte Carlo sampling of combined variables, the Kolmogorov-Smirnov statistic,
and brute-force convolution quadrature.  None of these share numerical
kernels with the contour-integration code paths, so agreement between the two
sides is evidence rather than tautology.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
import scipy.integrate

from .errors import DomainError
from .gengamma import sample


@dataclass(frozen=True)
class SampleSet:
    """Sorted draws of a combined variable, tagged with their seed."""
    values: np.ndarray
    seed: int
    n: int

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float))
        object.__setattr__(self, "values", v)
        if self.n != v.size:
            raise DomainError("n disagrees with the number of values")

    def to_csv(self):
        buf = io.StringIO()
        buf.write(f"# seed={self.seed}, n={self.n}\n")
        for v in self.values:
            buf.write(f"{v:.17g}\n")
        return buf.getvalue()


def _stream_seed(seed, index):
    return int(np.random.SeedSequence((seed, index)).generate_state(1)[0])


def mc_combine(factors, op, coeffs=None, seed=0, n=1):
    """Draw n values of the sum/product/quotient of independent factors.

    Each factor gets its own deterministic substream derived from ``seed``.
    ``coeffs`` (positive, same length) are honored for sums only.
    """
    factors = list(factors)
    if n < 1:
        raise DomainError("n must be >= 1")
    if op == "quotient":
        if len(factors) != 2:
            raise DomainError("quotient requires exactly 2 factors")
    elif op not in ("sum", "product"):
        raise DomainError(f"unknown op {op!r}")
    if coeffs is not None and op != "sum":
        raise DomainError("coeffs are only meaningful for sums")
    if coeffs is not None and len(coeffs) != len(factors):
        raise DomainError("coeffs and factors must have equal length")

    draws = [sample(p, _stream_seed(seed, j), n)
             for j, p in enumerate(factors)]
    if op == "sum":
        if coeffs is not None:
            out = sum(a * d for a, d in zip(coeffs, draws))
        else:
            out = sum(draws)
    elif op == "product":
        out = math.prod(draws[1:], start=draws[0])
    else:
        out = draws[0] / draws[1]
    return SampleSet(out, seed=seed, n=n)


def ks_distance(samples, cdf_fn):
    """Kolmogorov-Smirnov distance between the sample ECDF and ``cdf_fn``."""
    x = samples.values
    n = x.size
    f = np.asarray(cdf_fn(x), dtype=float)
    upper = np.arange(1, n + 1) / n - f
    lower = f - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def convolve_additive(pdf1, pdf2, support1_start, support2_start, x, tol=1e-10):
    """Density of the sum at x: integral of pdf1(t) pdf2(x - t) dt."""
    lo = support1_start
    hi = x - support2_start
    if hi <= lo:
        return 0.0
    val, _ = scipy.integrate.quad(lambda t: pdf1(t) * pdf2(x - t), lo, hi,
                                  epsabs=tol, epsrel=tol, limit=400)
    return max(val, 0.0)


def convolve_multiplicative(pdf1, pdf2, x, tol=1e-10):
    """Density of the product at x: integral of pdf1(t) pdf2(x/t) dt/t.

    Evaluated in logarithmic coordinates (t = e^u), which removes the
    endpoint singularities of the positive half-line.
    """
    if x <= 0:
        return 0.0

    def integrand(u):
        if abs(u) > 700.0:
            return 0.0
        t = math.exp(u)
        return pdf1(t) * pdf2(x / t)

    val, _ = scipy.integrate.quad(integrand, -np.inf, np.inf,
                                  epsabs=tol, epsrel=tol, limit=400)
    return max(val, 0.0)
