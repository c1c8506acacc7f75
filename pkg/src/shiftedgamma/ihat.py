"""Generalized transform functions whose Mellin transforms are products of
power/exponential prefactors and H functions with parameters affine in s.

A single factor contributes

    (base_a s + base_b)^(exp_a s + exp_b) * e^(lin_a s + lin_b)
    * ( H[ (arg_base + arg_slope s)^(arg_exp + arg_exp_slope s) ;
           upper entries (a0 + a1 s, A), lower entries (b0 + b1 s, B) ]
      )^(power_slope s + power_const)

and ``upsilon`` multiplies the factors.  ``eval_ihat`` recovers the function
itself by inverse Mellin integration of ``upsilon``.

Inner H functions are evaluated through the closed-form catalogue whenever the
factor's coefficient structure permits (constant-gamma products, incomplete
gamma kernels, three-gamma kernels covering Tricomi U), falling back to nested
contour quadrature otherwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import loggamma

from .errors import BranchCutError, NoContourError, ParameterError, PoleError
from .hfun import (ContourSpec, HParams, HValue, ThreeGammaLine,
                   _is_nonpositive_integer, eval_h, three_gamma_kernel)
from .quadrature import line_integral
from .specfun import upper_gamma

_INNER_TOL_RATIO = 1e-4


@dataclass(frozen=True)
class IhatFactor:
    """One factor of the transform product; all coefficients are real.

    ``inner_upper`` / ``inner_lower`` hold triples ``(c0, c1, coeff)`` meaning
    the H-function entry ``(c0 + c1 * s, coeff)``.
    """
    base_a: float = 0.0
    base_b: float = 1.0
    exp_a: float = 0.0
    exp_b: float = 0.0
    lin_a: float = 0.0
    lin_b: float = 0.0
    arg_base: float = 1.0
    arg_slope: float = 0.0
    arg_exp: float = 1.0
    arg_exp_slope: float = 0.0
    power_slope: float = 0.0
    power_const: float = 1.0
    inner_upper: tuple = ()
    inner_lower: tuple = ()
    inner_indices: tuple = (2, 1, 3, 2)

    def __post_init__(self):
        object.__setattr__(self, "inner_upper",
                           tuple(tuple(map(float, t)) for t in self.inner_upper))
        object.__setattr__(self, "inner_lower",
                           tuple(tuple(map(float, t)) for t in self.inner_lower))
        m, n, p, q = self.inner_indices
        if not (0 <= m <= q and 0 <= n <= p):
            raise ParameterError("inner indices must satisfy 0<=m<=q, 0<=n<=p")
        if len(self.inner_upper) != p or len(self.inner_lower) != q:
            raise ParameterError("inner entry counts disagree with (p, q)")
        for _, _, coeff in self.inner_upper + self.inner_lower:
            if not (coeff >= 0.0 and math.isfinite(coeff)):
                raise ParameterError("inner coefficients must be finite and >= 0")
        for name in ("base_a", "base_b", "exp_a", "exp_b", "lin_a", "lin_b",
                     "arg_base", "arg_slope", "arg_exp", "arg_exp_slope",
                     "power_slope", "power_const"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")


@dataclass(frozen=True)
class IhatSpec:
    factors: tuple
    contour: ContourSpec | None = None

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 1:
            raise ParameterError("at least one factor is required")


def _entries_at(triples, s):
    return [(c0 + c1 * s, coeff) for c0, c1, coeff in triples]


def _checked_power(base, expo):
    """base**expo by the principal logarithm; guards the branch cut."""
    base = complex(base)
    expo = complex(expo)
    if base == 0:
        if expo == 0:
            return complex(1.0)
        if expo.real > 0:
            return complex(0.0)
        raise BranchCutError("zero base with nonpositive exponent")
    integral = abs(expo.imag) < 1e-13 and abs(expo.real - round(expo.real)) < 1e-13
    if base.real < 0 and abs(base.imag) <= 1e-13 * abs(base) and not integral:
        raise BranchCutError(
            f"fractional power of a negative real base {base}")
    return cmath.exp(expo * cmath.log(base))


def _checked_power_arr(base, expo):
    base = np.asarray(base, dtype=complex)
    expo = np.asarray(expo, dtype=complex)
    out = np.empty(np.broadcast(base, expo).shape, dtype=complex)
    b, e = np.broadcast_arrays(base, expo)
    for i in np.ndindex(out.shape):
        out[i] = _checked_power(b[i], e[i])
    return out


class _PreparedFactor:
    """One factor classified once, then evaluated over arrays of s."""

    def __init__(self, factor: IhatFactor):
        self.f = factor
        self.kind = self._classify()
        self._line3 = None

    def _classify(self):
        f = self.f
        m, n, p, q = f.inner_indices
        up, lo = f.inner_upper, f.inner_lower
        if (m, n, p, q) == (1, 0, 0, 1) and lo[0][2] > 0:
            return "exp"
        if (m, n, p, q) != (2, 1, 3, 2):
            return "generic"
        static_arg = f.arg_slope == 0.0 and f.arg_exp_slope == 0.0
        w0 = f.arg_base ** f.arg_exp if (static_arg and f.arg_base > 0) else None
        (u10, u11, A1), (u20, u21, A2), (u30, u31, A3) = up
        (l10, l11, B1), (l20, l21, B2) = lo
        if not (l10 == 0.0 and l11 == 0.0 and abs(B1 - 1.0) < 1e-12):
            return "generic"
        if A1 == 0 and u11 == 0 and (u20, u21, A2) == (1.0, 0.0, 1.0) \
                and A3 == 0 and u31 == 0:
            if B2 == 0 and w0 is not None and abs(w0 - 1.0) < 1e-12:
                return "gamma"
            if abs(B2 - 1.0) < 1e-12 and w0 is not None and w0 > 0:
                return "uppergamma"
            return "generic"
        if A1 > 0 and A2 == 0 and u21 == 0 and A3 == 0 and abs(B2 - A1) < 1e-12:
            return "threegamma"
        return "generic"

    def _batchable(self):
        """Three-gamma factors sharing real parts along vertical contours."""
        f = self.f
        (u10, u11, A1), _, (u30, u31, _) = f.inner_upper
        l20, l21, _ = f.inner_lower[1]
        static_arg = f.arg_slope == 0.0 and f.arg_exp_slope == 0.0
        if not (static_arg and u11 == 0.0 and f.arg_base > 0):
            return False
        # rising-factorial shape 1 - p1 + p4 == p3 as an identity in s
        return abs(1.0 - u10 + l20 - u30) < 1e-12 and abs(l21 - u31) < 1e-12

    def inner_value(self, s, tol):
        """Inner H value at scalar s (before the outer power)."""
        f = self.f
        w = _checked_power(f.arg_base + f.arg_slope * s,
                           f.arg_exp + f.arg_exp_slope * s)
        if self.kind == "exp":
            b0, b1, B = f.inner_lower[0]
            if abs(cmath.phase(w)) / B < 0.5 * math.pi:
                y = _checked_power(w, 1.0 / B)
                return _checked_power(w, (b0 + b1 * s) / B) * cmath.exp(-y) / B
        elif self.kind == "gamma":
            (u10, _, _), _, (u30, _, _) = f.inner_upper
            z = f.inner_lower[1][0] + f.inner_lower[1][1] * s
            for arg in (1.0 - u10, z):
                if _is_nonpositive_integer(arg):
                    raise PoleError(f"gamma factor pole at argument {arg}")
            return cmath.exp(loggamma(complex(1.0 - u10)) + loggamma(complex(z))
                             - loggamma(complex(u30)))
        elif self.kind == "uppergamma":
            (u10, _, _), _, (u30, _, _) = f.inner_upper
            a = f.inner_lower[1][0] + f.inner_lower[1][1] * s
            const = cmath.exp(loggamma(complex(1.0 - u10))
                              - loggamma(complex(u30)))
            return const * upper_gamma(a, w.real)
        elif self.kind == "threegamma":
            (u10, u11, A1), (u20, _, _), (u30, u31, _) = f.inner_upper
            l20, l21, _ = f.inner_lower[1]
            val, _ = three_gamma_kernel(
                u10 + u11 * s, u20, u30 + u31 * s, l20 + l21 * s, A1, w, tol)
            return val
        # nested contour quadrature on the induced H parameters
        m, n, _, _ = f.inner_indices
        params = HParams.make(m, n, _entries_at(f.inner_upper, s),
                              _entries_at(f.inner_lower, s))
        return eval_h(params, w, tol=tol, prefer_catalogue=True).value

    def values(self, s, tol):
        """Factor values over an ndarray of s."""
        f = self.f
        s = np.asarray(s, dtype=complex)
        pref = _checked_power_arr(f.base_a * s + f.base_b,
                                  f.exp_a * s + f.exp_b) \
            * np.exp(f.lin_a * s + f.lin_b)
        power = f.power_slope * s + f.power_const
        if f.power_slope == 0.0 and f.power_const == 0.0:
            return pref
        if self.kind == "uppergamma" and f.arg_slope == 0.0 \
                and f.arg_exp_slope == 0.0:
            # fully vectorized path (the argument is constant in s)
            w0 = f.arg_base ** f.arg_exp
            (u10, _, _), _, (u30, _, _) = f.inner_upper
            a = f.inner_lower[1][0] + f.inner_lower[1][1] * s
            const = cmath.exp(loggamma(complex(1.0 - u10))
                              - loggamma(complex(u30)))
            h = const * upper_gamma(a, w0)
        elif self.kind == "threegamma" and self._batchable() and s.size >= 8 \
                and np.ptp(s.real) < 1e-12:
            (u10, _, A1), (u20, _, _), (u30, u31, _) = f.inner_upper
            l20, l21, _ = f.inner_lower[1]
            if self._line3 is None:
                self._line3 = ThreeGammaLine(u10, u20, A1,
                                             f.arg_base ** f.arg_exp, tol)
            h = self._line3.batch(u30 + u31 * s, l20 + l21 * s)
        elif self.kind == "gamma":
            (u10, _, _), _, (u30, _, _) = f.inner_upper
            z = f.inner_lower[1][0] + f.inner_lower[1][1] * s
            h = np.exp(loggamma(complex(1.0 - u10)) + loggamma(z)
                       - loggamma(complex(u30)))
            if not np.all(np.isfinite(h)):
                raise PoleError("gamma factor pole on the evaluation set")
        else:
            h = np.array([self.inner_value(si, tol) for si in s.ravel()],
                         dtype=complex).reshape(s.shape)
        return pref * _checked_power_arr(h, power)


def _prepare(spec):
    return [_PreparedFactor(f) for f in spec.factors]


def _upsilon_impl(spec, s, tol=1e-12):
    scalar = np.isscalar(s) or getattr(s, "ndim", 0) == 0
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    out = np.ones(s_arr.shape, dtype=complex)
    for pf in _prepare(spec):
        out = out * pf.values(s_arr, tol)
    return out[0] if scalar else out


def upsilon(spec, s, tol=1e-12):
    """Mellin transform of the generalized function (inner H shape fixed 2,1,3,2)."""
    for f in spec.factors:
        if tuple(f.inner_indices) != (2, 1, 3, 2):
            raise ParameterError(
                "upsilon requires inner indices (2, 1, 3, 2); "
                "use upsilon_general for free shapes")
    return _upsilon_impl(spec, s, tol)


def upsilon_general(spec, s, tol=1e-12):
    """Same product with inner H functions of arbitrary index shape."""
    return _upsilon_impl(spec, s, tol)


def select_ihat_contour(spec, default_window=(0.0, 1.0)):
    """Abscissa choice from the factor structure, when it is analyzable.

    Gamma-type factors with positive powers constrain the line away from
    their pole families; prefactor bases contribute branch points.  Raises
    ``NoContourError`` when a factor defies analysis and no explicit contour
    was supplied.
    """
    lo, hi = [], []
    for pf in _prepare(spec):
        f = pf.f
        if f.base_a != 0.0:
            lo.append(-f.base_b / f.base_a)
        if pf.kind == "generic":
            raise NoContourError(
                "cannot infer an abscissa for a generic factor; "
                "supply an explicit ContourSpec")
        if pf.kind == "gamma" and f.power_const > 0:
            b0, b1, _ = f.inner_lower[1]
            if b1 > 0:
                lo.append(-b0 / b1)
            elif b1 < 0:
                hi.append(-b0 / b1)
        if pf.kind == "threegamma":
            # keep the right pole family of the inner kernel to the right
            u10, u11, A1 = f.inner_upper[0]
            if u11 != 0.0:
                bound = (1.0 - u10) / u11
                (lo if u11 < 0 else hi).append(bound)
    left = max(lo) if lo else None
    right = min(hi) if hi else None
    if left is not None and right is not None:
        if not left < right:
            raise NoContourError(f"empty abscissa window ({left}, {right})")
        c = 0.5 * (left + right)
    elif left is not None:
        c = left + 1.0
    elif right is not None:
        c = right - 1.0
    else:
        c = 0.5 * (default_window[0] + default_window[1])
    return ContourSpec(c)


def eval_ihat(spec, z, tol=1e-9):
    """Inverse Mellin transform of ``upsilon`` at ``z``: returns (value, err).

    ``z`` must be positive real (or a complex point off the negative axis;
    conjugate symmetry is then not exploited).
    """
    z = complex(z)
    if z == 0 or (z.real < 0 and z.imag == 0):
        raise BranchCutError("argument must be nonzero and off the negative axis")
    contour = spec.contour or select_ihat_contour(spec)
    c = contour.abscissa
    logz = cmath.log(z)
    inner_tol = max(tol * _INNER_TOL_RATIO, 1e-13)
    prepared = _prepare(spec)

    def transform(v):
        s = c + 1j * np.asarray(v)
        out = np.ones(s.shape, dtype=complex)
        for pf in prepared:
            out = out * pf.values(s, inner_tol)
        return out * np.exp(-s * logz)

    symmetric = abs(z.imag) == 0
    val, err, _ = line_integral(
        transform, tol * 2.0 * math.pi, h0=contour.half_height0,
        tmax=contour.max_half_height, symmetric=symmetric)
    return HValue(val / (2.0 * math.pi), err / (2.0 * math.pi))


# --- constructors for the reduction family -----------------------------------

_GAMMA_INNER_UPPER = ((0.0, 0.0, 0.0), (1.0, 0.0, 1.0), (1.0, 0.0, 0.0))


def _gamma_factor(c0, c1, power):
    return IhatFactor(
        exp_b=1.0,
        inner_upper=_GAMMA_INNER_UPPER,
        inner_lower=((0.0, 0.0, 1.0), (c0, c1, 0.0)),
        power_const=power,
    )


def ihat_from_gamma_product(terms):
    """Spec whose transform is a product of gamma factors.

    ``terms``: iterables ``(c0, c1, power)``, each contributing
    ``Gamma(c0 + c1 s) ** power``.
    """
    terms = list(terms)
    if not terms:
        raise ParameterError("at least one gamma term is required")
    return IhatSpec(tuple(_gamma_factor(c0, c1, power)
                          for c0, c1, power in terms))


def ihat_from_I(m, n, upper, lower):
    """Spec reproducing a gamma-power ratio transform.

    ``upper``: p triples ``(a_j, alpha_j, A_j)``; ``lower``: q triples
    ``(b_j, beta_j, B_j)``.  The first m lower / n upper terms sit in the
    numerator as ``Gamma(b + beta s)^B`` / ``Gamma(1 - a - alpha s)^A``, the
    rest divide with the same powers.
    """
    upper, lower = list(upper), list(lower)
    if not (0 <= m <= len(lower) and 0 <= n <= len(upper)):
        raise ParameterError("index counts exceed the parameter lists")
    for _, _, power in upper + lower:
        if not power > 0:
            raise ParameterError("exponents must be positive")
    factors = []
    for j, (b, beta, B) in enumerate(lower):
        factors.append(_gamma_factor(b, beta, B) if j < m
                       else _gamma_factor(1.0 - b, -beta, -B))
    for j, (a, alpha, A) in enumerate(upper):
        factors.append(_gamma_factor(1.0 - a, -alpha, A) if j < n
                       else _gamma_factor(a, alpha, -A))
    return IhatSpec(tuple(factors))


def _tricomi_factor(phi, b0, b1, scale, power):
    """Factor scale^(phi + b0 - 1 + b1 s) * U(phi, phi + b0 + b1 s, scale)^power.

    With power = -1 both the power prefactor and the U factor divide.
    """
    if not scale > 0:
        raise ParameterError("scale arguments must be positive")
    if not phi > 0:
        raise ParameterError("first parameters must be positive")
    return IhatFactor(
        base_b=scale,
        exp_a=power * b1,
        exp_b=power * (phi + b0 - 1.0),
        arg_base=scale,
        inner_upper=((1.0 - phi, 0.0, 1.0), (phi, 0.0, 0.0),
                     (1.0 - b0, -b1, 0.0)),
        inner_lower=((0.0, 0.0, 1.0), (1.0 - phi - b0, -b1, 1.0)),
        power_const=power,
    )


def ihat_from_Y(m, n, upper, lower):
    """Spec reproducing a transform built from Tricomi U factors.

    ``upper``: p quadruples ``(a_j, alpha_j, A_j, phi_j)``; ``lower``: q
    quadruples ``(b_j, beta_j, B_j, phi_j)``.  Numerator lower terms give
    ``B^(phi+b+beta s-1) U(phi, phi+b+beta s, B)``, numerator upper terms
    ``A^(phi-a-alpha s) U(phi, phi-a-alpha s+1, A)``; the remaining terms
    divide with the analogous arguments.
    """
    upper, lower = list(upper), list(lower)
    if not (0 <= m <= len(lower) and 0 <= n <= len(upper)):
        raise ParameterError("index counts exceed the parameter lists")
    factors = []
    for j, (b, beta, B, phi) in enumerate(lower):
        if j < m:
            factors.append(_tricomi_factor(phi, b, beta, B, 1.0))
        else:
            factors.append(_tricomi_factor(phi, 1.0 - b, -beta, B, -1.0))
    for j, (a, alpha, A, phi) in enumerate(upper):
        if j < n:
            factors.append(_tricomi_factor(phi, 1.0 - a, -alpha, A, 1.0))
        else:
            factors.append(_tricomi_factor(phi, a, alpha, A, -1.0))
    return IhatSpec(tuple(factors))


def _upper_incomplete_factor(c0, c1, cutoff, power):
    if not cutoff > 0:
        raise ParameterError("cutoff arguments must be positive")
    return IhatFactor(
        exp_b=1.0,
        arg_base=cutoff,
        inner_upper=_GAMMA_INNER_UPPER,
        inner_lower=((0.0, 0.0, 1.0), (c0, c1, 1.0)),
        power_const=power,
    )


def ihat_from_upper_incomplete(m, n, upper, lower):
    """Spec reproducing a ratio of upper incomplete gamma factors.

    ``upper``: p triples ``(a_j, alpha_j, A_j)``; ``lower``: q triples
    ``(b_j, beta_j, B_j)`` where the third element is the fixed cutoff.
    Numerator terms are ``Gamma(b + beta s, B)`` / ``Gamma(1-a-alpha s, A)``.
    """
    upper, lower = list(upper), list(lower)
    if not (0 <= m <= len(lower) and 0 <= n <= len(upper)):
        raise ParameterError("index counts exceed the parameter lists")
    factors = []
    for j, (b, beta, B) in enumerate(lower):
        factors.append(_upper_incomplete_factor(b, beta, B, 1.0) if j < m
                       else _upper_incomplete_factor(1.0 - b, -beta, B, -1.0))
    for j, (a, alpha, A) in enumerate(upper):
        factors.append(_upper_incomplete_factor(1.0 - a, -alpha, A, 1.0) if j < n
                       else _upper_incomplete_factor(a, alpha, A, -1.0))
    return IhatSpec(tuple(factors))


def tricomi_u(a, b, z):
    """Tricomi confluent function U(a, b, z) through its H representation."""
    if not a > 0:
        raise ValueError("tricomi_u requires a > 0")
    if not z > 0:
        raise ValueError("tricomi_u requires z > 0")
    params = HParams.make(
        2, 1,
        [(1.0 - a, 1.0), (a, 0.0), (a - b + 1.0, 0.0)],
        [(0.0, 1.0), (1.0 - b, 1.0)])
    got = eval_h(params, z, tol=1e-12)
    return float(got.value.real)
