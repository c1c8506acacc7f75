"""Shifted generalized gamma distribution.

Density for x > mu (zero otherwise):

    f(x) = gamma_ * beta^(alpha/gamma_) / Gamma(alpha/gamma_)
           * (x - mu)^(alpha - 1) * exp(-beta (x - mu)^gamma_)

The module provides the direct density/CDF, the Mellin and Laplace transforms
in their contour-kernel forms, the inverse-Mellin route to the density, an
exact sampler, the scaling rule, and the named special-case constructors.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, loggamma, wofz

from .errors import DomainError, StripError
from .hfun import (HParams, HValue, ThreeGammaLine, _quadrature_h,
                   select_contour, three_gamma_kernel)
from .ihat import IhatFactor, IhatSpec, eval_ihat
from .specfun import tricomi_u_tall, upper_gamma

_TALL_IMAG = 20.0


@dataclass(frozen=True)
class GenGammaParams:
    """(alpha, beta, gamma_, mu): shape, scale-rate, power, and shift."""
    alpha: float
    beta: float
    gamma_: float
    mu: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma_"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"{name} must be positive and finite")
        if not math.isfinite(self.mu):
            raise DomainError("mu must be finite")

    def to_dict(self):
        return {"alpha": self.alpha, "beta": self.beta,
                "gamma": self.gamma_, "mu": self.mu}

    @classmethod
    def from_dict(cls, d):
        return cls(alpha=d["alpha"], beta=d["beta"],
                   gamma_=d["gamma"], mu=d.get("mu", 0.0))


def weibull(k, lam):
    """Weibull with shape k and scale lam."""
    if not (k > 0 and lam > 0):
        raise DomainError("weibull requires k > 0 and lam > 0")
    return GenGammaParams(k, lam ** (-k), k, 0.0)


def exponential(lam):
    """Exponential with rate lam."""
    if not lam > 0:
        raise DomainError("exponential requires lam > 0")
    return GenGammaParams(1.0, lam, 1.0, 0.0)


def rayleigh(sigma):
    """Rayleigh with scale sigma."""
    if not sigma > 0:
        raise DomainError("rayleigh requires sigma > 0")
    return GenGammaParams(2.0, 1.0 / (2.0 * sigma ** 2), 2.0, 0.0)


def maxwell(a):
    """Maxwell-Boltzmann with scale a."""
    if not a > 0:
        raise DomainError("maxwell requires a > 0")
    return GenGammaParams(3.0, 1.0 / (2.0 * a ** 2), 2.0, 0.0)


def erlang(k, lam):
    """Erlang with integer shape k and rate lam."""
    if not (lam > 0 and k > 0 and float(k).is_integer()):
        raise DomainError("erlang requires a positive integer k and lam > 0")
    return GenGammaParams(float(k), lam, 1.0, 0.0)


def _log_norm(p):
    return (math.log(p.gamma_) + (p.alpha / p.gamma_) * math.log(p.beta)
            - float(loggamma(p.alpha / p.gamma_).real))


def logpdf(p, x):
    """Log density; -inf outside the support.

    At exactly x == mu the right-limit convention applies: the value is
    log(norm) for alpha == 1 (e.g. the exponential at its origin) and -inf
    otherwise.
    """
    x = np.asarray(x, dtype=float)
    y = x - p.mu
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(
            y > 0,
            _log_norm(p) + (p.alpha - 1.0) * np.log(np.where(y > 0, y, 1.0))
            - p.beta * np.where(y > 0, y, 0.0) ** p.gamma_,
            np.where((y == 0) & (p.alpha == 1.0), _log_norm(p), -np.inf))
    return out if out.ndim else float(out)


def pdf(p, x):
    """Density of the shifted generalized gamma law (log-space evaluation)."""
    lp = logpdf(p, x)
    with np.errstate(over="ignore"):
        out = np.exp(lp)
    return out if np.ndim(x) else float(out)


def cdf(p, x):
    """Distribution function: regularized lower incomplete gamma of beta (x-mu)^gamma_."""
    x = np.asarray(x, dtype=float)
    y = np.maximum(x - p.mu, 0.0)
    out = gammainc(p.alpha / p.gamma_, p.beta * y ** p.gamma_)
    return out if out.ndim else float(out)


def _mellin_zero_shift(p, s):
    s = np.asarray(s, dtype=complex)
    arg = (p.alpha + s - 1.0) / p.gamma_
    if np.any(arg.real <= 0):
        raise StripError(
            f"Mellin transform with mu=0 needs Re s > {1.0 - p.alpha}")
    return np.exp(-(s - 1.0) / p.gamma_ * math.log(p.beta)
                  + loggamma(arg) - loggamma(p.alpha / p.gamma_))


def mellin_evaluator(p):
    """Vectorized Mellin-transform evaluator for repeated contour use.

    Returns a callable mapping an ndarray of complex s to transform values;
    kernel panel caches persist across calls (one evaluator per inversion).
    Requires mu >= 0.
    """
    if p.mu < 0:
        raise DomainError("Mellin transform requires mu >= 0")
    if p.mu == 0.0:
        return lambda s: _mellin_zero_shift(p, np.asarray(s, dtype=complex))

    w = p.beta * p.mu ** p.gamma_
    if p.gamma_ == 1.0 and p.alpha == 1.0:
        def exp_case(s):
            s = np.asarray(s, dtype=complex)
            return np.exp((1.0 - s) * math.log(p.beta) + w) * upper_gamma(s, w)
        return exp_case

    pref_log = (math.log(p.gamma_) + (p.alpha / p.gamma_) * math.log(p.beta)
                + (p.alpha - 1.0) * math.log(p.mu))
    line = ThreeGammaLine(1.0 - p.alpha, p.alpha / p.gamma_, p.gamma_, w)

    def general_case(s):
        s = np.asarray(s, dtype=complex)
        out = np.empty(s.shape, dtype=complex)
        if p.gamma_ == 1.0:
            tall = np.abs(s.imag) > _TALL_IMAG
            if np.any(tall):
                # two-term Kummer connection for U(alpha, alpha + s, w)
                out[tall] = (p.beta ** p.alpha
                             * np.exp((p.alpha - 1.0 + s[tall]) * math.log(p.mu))
                             * tricomi_u_tall(p.alpha, p.alpha + s[tall], w))
            rest = ~tall
        else:
            rest = np.ones(s.shape, dtype=bool)
        if np.any(rest):
            sr = s[rest]
            if sr.size >= 2 and np.ptp(sr.real) < 1e-12:
                v = line.batch(1.0 - sr, 1.0 - sr - p.alpha)
            else:
                v = np.array([three_gamma_kernel(
                    1.0 - p.alpha, p.alpha / p.gamma_, 1.0 - si,
                    1.0 - si - p.alpha, p.gamma_, w)[0] for si in sr],
                    dtype=complex)
            out[rest] = np.exp(pref_log + sr * math.log(p.mu)) * v
        return out

    return general_case


def mellin_transform(p, s):
    """Mellin transform of the density at complex s (scalar or ndarray).

    For mu > 0 this is the analytic continuation of the contour-kernel form;
    for mu = 0 the reduced gamma-ratio closed form.  Requires mu >= 0.
    """
    scalar = np.isscalar(s) or getattr(s, "ndim", 0) == 0
    out = mellin_evaluator(p)(np.atleast_1d(np.asarray(s, dtype=complex)))
    return out[0] if scalar else out


def mellin_pdf(p, s):
    """Mellin transform at a single point s (complex)."""
    return complex(mellin_transform(p, complex(s)))


def mellin_ihat_factor(p):
    """The generalized-transform factor whose product form inverts to the density.

    The companion prefactor is ``gamma_ * beta^(alpha/gamma_) * mu^(alpha-1)``.
    """
    if not p.mu > 0:
        raise DomainError("the transform-factor route requires mu > 0")
    g = p.gamma_
    return IhatFactor(
        base_b=p.mu, exp_a=1.0,
        arg_base=p.beta * p.mu ** g,
        inner_upper=((1.0 - p.alpha, 0.0, g),
                     (p.alpha / g, 0.0, 0.0),
                     (1.0, -1.0, 0.0)),
        inner_lower=((0.0, 0.0, 1.0),
                     (1.0 - p.alpha, -1.0, g)),
    )


def pdf_via_ihat(p, x, tol=1e-9):
    """Density through inverse Mellin integration of the transform factor.

    Agrees with :func:`pdf` to quadrature tolerance; requires mu > 0.
    """
    if not p.mu > 0:
        raise DomainError("pdf_via_ihat requires mu > 0")
    if x <= p.mu:
        return 0.0
    pref = math.exp(_log_norm(p) + float(loggamma(p.alpha / p.gamma_).real)
                    + (p.alpha - 1.0) * math.log(p.mu))
    spec = IhatSpec((mellin_ihat_factor(p),))
    val, _ = eval_ihat(spec, x, tol=tol / max(pref, 1.0))
    return max(pref * val.real, 0.0)


def _laplace_gamma2(p, s):
    """Closed forms for gamma_ = 2 and integer alpha in {1, 2, 3} via erfcx."""
    s = np.asarray(s, dtype=complex)
    b = p.beta
    z = s / (2.0 * math.sqrt(b))
    erfcx = wofz(1j * z)
    j1 = math.sqrt(math.pi / (4.0 * b)) * erfcx
    if p.alpha == 1.0:
        j = j1
    else:
        j2 = (1.0 - s * j1) / (2.0 * b)
        j = j2 if p.alpha == 2.0 else (j1 - s * j2) / (2.0 * b)
    norm = 2.0 * b ** (p.alpha / 2.0) / math.exp(float(loggamma(p.alpha / 2.0).real))
    return norm * np.exp(-s * p.mu) * j


_LAPLACE_INNER = None


def _laplace_contour(p, s):
    """Contour-kernel Laplace transform for general gamma_ (scalar s)."""
    params = HParams.make(
        2, 1,
        [(1.0 - p.alpha, p.gamma_), (p.alpha / p.gamma_, 0.0), (1.0, 0.0)],
        [(0.0, 1.0), (1.0, 0.0)])
    w = p.beta * s ** (-p.gamma_)
    r0 = p.alpha / p.gamma_
    # a large |w| concentrates the integral near the first right pole; hug it
    # to avoid exponential cancellation along a mid-strip line
    lw = abs(cmath.log(w))
    c = r0 - min(0.5 * r0, 1.0 / max(2.0, lw))
    h = _quadrature_h(params, w, select_contour(params)._replace_abscissa(c)
                      if False else ContourSpec(c), 1e-12)
    lg = (math.log(p.gamma_) + (p.alpha / p.gamma_) * math.log(p.beta)
          - s * p.mu - p.alpha * cmath.log(s))
    return cmath.exp(lg) * h.value


def laplace_transform(p, s):
    """Laplace transform of the density at complex s, Re s > 0 (vectorized)."""
    scalar = np.isscalar(s) or getattr(s, "ndim", 0) == 0
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    if np.any(s.real <= 0):
        raise DomainError("Laplace transform requires Re s > 0")
    if p.gamma_ == 1.0:
        out = np.exp(p.alpha * math.log(p.beta) - s * p.mu
                     - p.alpha * np.log(p.beta + s))
    elif p.gamma_ == 2.0 and p.alpha in (1.0, 2.0, 3.0):
        out = _laplace_gamma2(p, s)
    else:
        out = np.array([_laplace_contour(p, si) for si in s.ravel()],
                       dtype=complex).reshape(s.shape)
    return out[0] if scalar else out


def laplace_pdf(p, s):
    """Laplace transform at a single point s (complex), Re s > 0."""
    return complex(laplace_transform(p, complex(s)))


def _standard_gamma(rng, shape, n):
    """Marsaglia-Tsang squeeze sampler, boosted below shape 1.

    Pinned here (rather than using a library sampler) so that sampled streams
    are reproducible across platforms and library versions.
    """
    if shape < 1.0:
        boost = rng.random(n) ** (1.0 / shape)
        return _standard_gamma(rng, shape + 1.0, n) * boost
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(n, dtype=float)
    todo = np.arange(n)
    while todo.size:
        x = rng.standard_normal(todo.size)
        v = (1.0 + c * x) ** 3
        u = rng.random(todo.size)
        pos = v > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            squeeze = u < 1.0 - 0.0331 * x ** 4
            full = np.log(u) < 0.5 * x ** 2 + d * (1.0 - v + np.log(
                np.where(pos, v, 1.0)))
        accept = pos & (squeeze | full)
        out[todo[accept]] = d * v[accept]
        todo = todo[~accept]
    return out


def sample(p, seed, n):
    """Draw n values: mu + (G / beta)^(1/gamma_) with G standard gamma."""
    if n < 1:
        raise DomainError("n must be >= 1")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    g = _standard_gamma(rng, p.alpha / p.gamma_, int(n))
    return p.mu + (g / p.beta) ** (1.0 / p.gamma_)


def scale(p, factor):
    """Parameters of factor * X: (alpha, beta / factor^gamma_, gamma_, factor * mu)."""
    if not factor > 0:
        raise DomainError("scaling factor must be positive")
    return GenGammaParams(p.alpha, p.beta / factor ** p.gamma_,
                          p.gamma_, factor * p.mu)
