"""Adaptive contour quadrature for vertical-line (Mellin-Barnes / Bromwich) integrals.

The central tool is :func:`line_integral`, which integrates a vectorized
complex-valued function along the whole real line.  The line is covered by a
central region plus dyadic blocks growing outward; each piece is integrated
with an adaptive Gauss-Kronrod (G7/K15) rule.  Truncation is controlled by a
local tail model: when the integrand settles into ``A * exp(lam * v)`` with
``Re lam < 0`` (which covers both decaying oscillations and power-law decay
locally), the analytic tail of the model is added as a correction and its
model-fit residual is charged to the error estimate.  Block magnitudes that
fail to decrease over two successive doublings trigger ``DivergenceError``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DivergenceError

# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
_K15_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_K15_WEIGHTS = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
_G7_IDX = np.array([1, 3, 5, 7, 9, 11, 13])
_G7_WEIGHTS = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])


def _eval_panels(f, lo, hi):
    """Apply the K15 rule on each panel [lo_i, hi_i]; return (values, errors)."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * _K15_NODES[None, :]
    vals = np.asarray(f(nodes.ravel()), dtype=complex).reshape(nodes.shape)
    i15 = (vals @ _K15_WEIGHTS) * half
    i7 = (vals[:, _G7_IDX] @ _G7_WEIGHTS) * half
    return i15, np.abs(i15 - i7)


def integrate_interval(f, a, b, tol_abs, max_evals=400_000, breakpoints=(),
                       return_panels=False):
    """Adaptively integrate the vectorized complex function ``f`` on [a, b].

    Returns ``(value, err_estimate, nevals)``, plus the final panel arrays
    ``(lo, hi)`` when ``return_panels`` is set.  ``breakpoints`` seed the
    initial panel structure (useful when interior peaks are known).
    """
    pts = [a] + sorted(p for p in breakpoints if a < p < b) + [b]
    lo = np.array(pts[:-1], dtype=float)
    hi = np.array(pts[1:], dtype=float)
    vals, errs = _eval_panels(f, lo, hi)
    nev = 15 * lo.size
    while True:
        tot_err = float(errs.sum())
        if tot_err <= tol_abs or nev >= max_evals:
            break
        order = np.argsort(errs)[::-1]
        csum = np.cumsum(errs[order])
        # split enough of the worst panels to plausibly get under tolerance
        k = int(np.searchsorted(csum, tot_err - 0.4 * tol_abs)) + 1
        k = min(k, 256, lo.size)
        idx = order[:k]
        keep = np.ones(lo.size, dtype=bool)
        keep[idx] = False
        mids = 0.5 * (lo[idx] + hi[idx])
        too_narrow = (hi[idx] - lo[idx]) < 1e-14 * (abs(b - a) + 1.0)
        if np.all(too_narrow):
            break
        new_lo = np.concatenate([lo[idx], mids])
        new_hi = np.concatenate([mids, hi[idx]])
        new_vals, new_errs = _eval_panels(f, new_lo, new_hi)
        nev += 15 * new_lo.size
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        vals = np.concatenate([vals[keep], new_vals])
        errs = np.concatenate([errs[keep], new_errs])
    if return_panels:
        order = np.argsort(lo)
        return complex(vals.sum()), float(errs.sum()), nev, (lo[order], hi[order])
    return complex(vals.sum()), float(errs.sum()), nev


def _tail_model(g, t_end, scale):
    """Fit g(v) ~ A exp(lam (v - t_end)) near t_end.

    Returns ``(tail, err, quality)`` with ``tail`` approximating the integral
    of g from t_end to infinity, or None when the local model cannot decay.
    ``quality`` in [0, 1] measures how far g is from the exponential model
    (slope drift between the probe points, second order in 1/(|lam| t)).
    """
    dt = 0.05 * scale
    for _ in range(8):
        probes = np.array([t_end, t_end + dt, t_end + 2.0 * dt])
        gv = np.asarray(g(probes), dtype=complex)
        if not np.all(np.isfinite(gv)) or np.any(gv == 0):
            return None
        with np.errstate(all="ignore"):
            r1 = gv[1] / gv[0]
            r2 = gv[2] / gv[1]
            if not (np.isfinite(r1) and np.isfinite(r2)):
                return None
            # keep phase steps resolvable so log() picks the right branch
            if max(abs(np.angle(r1)), abs(np.angle(r2))) > 2.4 \
                    and dt > 1e-9 * scale:
                dt *= 0.25
                continue
            lam1 = np.log(r1) / dt
            lam2 = np.log(r2) / dt
            lam = 0.5 * (lam1 + lam2)
        if not np.isfinite(lam) or abs(lam) == 0:
            return None
        if lam.real > 0:
            return None  # growing envelope: no finite tail
        if lam.real >= -1e-300 and abs(lam.imag) < 1e-12:
            return None  # neither decay nor oscillation
        # two-term asymptotic tail: -g/lam * (1 + lam'/lam^2); the residual is
        # third order in the small parameters lam'/lam^2 and 1/(|lam| t)
        lam_prime = (lam2 - lam1) / dt
        eps = abs(lam_prime) / max(abs(lam) ** 2, 1e-300)
        tail = -gv[0] / lam * (1.0 + lam_prime / lam ** 2)
        inv_lt = 1.0 / max(abs(lam) * t_end, 1e-150)
        quality = min(1.0, 6.0 * (eps ** 2 + inv_lt ** 3) + 2.0 * eps * inv_lt)
        return tail, abs(tail) * quality, quality, lam
    return None


def line_integral(F, tol_abs, *, h0=1.0, hints=(), tmax=1e7, symmetric=False,
                  block_max_evals=60_000):
    """Integrate ``F(v)`` over the whole real line.

    Parameters
    ----------
    F : callable
        Vectorized: maps a real ndarray of line positions to complex values.
    tol_abs : float
        Absolute tolerance target for the result.
    h0 : float
        Width scale of the central region.
    hints : iterable of float
        Positive positions of known interior peaks; seeds panel breakpoints.
    tmax : float
        Maximum half-height before giving up with ``DivergenceError``.
    symmetric : bool
        If True, assumes the conjugate symmetry ``F(-v) == conj(F(v))`` and
        integrates only ``v >= 0`` (result is then real).

    Returns
    -------
    (value, err_estimate, info)
    """
    hints = sorted(abs(h) for h in hints if h != 0)
    top = max([h0] + [2.0 * h for h in hints])
    # geometric mesh around every expected peak so that narrow features far
    # from the origin cannot slip between the initial panel nodes
    breaks = set()
    for center in [0.0] + hints:
        if 0.0 < center < top:
            breaks.add(center)
        w = 0.5
        while w < 2.0 * top:
            for q in (center - w, center + w):
                if 1e-12 < q < top * (1.0 - 1e-12):
                    breaks.add(q)
            w *= 2.0
    breaks = sorted(breaks)
    nev = 0

    def center_and_side(sign):
        nonlocal nev
        g = (lambda v: F(v)) if sign > 0 else (lambda v: F(-v))
        val, err, n = integrate_interval(
            g, 0.0, top, 0.25 * tol_abs, breakpoints=breaks,
            max_evals=block_max_evals)
        nev += n
        t = top
        k = 0
        mags = []
        while True:
            budget = max(tol_abs * 2.0 ** (-k - 3), 1e-3 * tol_abs)
            bval, berr, n = integrate_interval(
                g, t, 2.0 * t, budget, max_evals=block_max_evals)
            nev += n
            val += bval
            err += berr
            mags.append(abs(bval))
            t *= 2.0
            k += 1
            model = _tail_model(g, t, min(1.0, 0.01 * t))
            if model is not None:
                tail, tail_err, quality, _ = model
                if abs(tail) < 0.25 * tol_abs or tail_err < 0.25 * tol_abs:
                    val += tail
                    err += max(tail_err, 1e-3 * abs(tail))
                    break
            # geometric extrapolation of the last two block magnitudes
            if len(mags) >= 2 and mags[-1] < 1e-3 * tol_abs and \
                    mags[-1] <= mags[-2]:
                r = mags[-1] / max(mags[-2], 1e-300)
                geo = mags[-1] * r / max(1.0 - r, 0.1)
                if geo < 0.25 * tol_abs:
                    err += geo
                    break
            # non-decaying over two successive doublings means truncation
            # cannot converge -- unless a slow oscillation simply has not
            # completed a period yet (|Im lam| * t small)
            if len(mags) >= 3 and mags[-1] >= 0.999 * mags[-2] \
                    and mags[-2] >= 0.999 * mags[-3] \
                    and mags[-1] > 0.25 * tol_abs \
                    and (model is None
                         or (model[2] >= 0.5 and abs(model[3].imag) * t > 20.0)):
                raise DivergenceError(
                    f"contour blocks stopped decaying near |v|={t:.3g} "
                    f"(last magnitudes {mags[-3]:.3g}, {mags[-2]:.3g}, "
                    f"{mags[-1]:.3g})")
            if t > tmax:
                raise DivergenceError(
                    f"no convergence below the height cap {tmax:.3g}; "
                    f"last block magnitude {mags[-1]:.3g}")
        return val, err, t

    if symmetric:
        vu, eu, height = center_and_side(+1)
        value = complex(2.0 * vu.real)
        err = 2.0 * eu
    else:
        vu, eu, hu = center_and_side(+1)
        vl, el, hl = center_and_side(-1)
        value = vu + vl
        err = eu + el
        height = max(hu, hl)
    return value, err, {"height": height, "nevals": nev}


def mellin_inversion(transform, x, c, tol_abs, *, hints=(), symmetric=True,
                     tmax=1e7):
    """Evaluate ``(1/2 pi i) * integral of transform(s) x^(-s) ds`` on Re s = c.

    ``transform`` must be vectorized over a complex ndarray.  Returns
    ``(value, err_estimate)``; with ``symmetric=True`` the result is real.
    """
    if x <= 0:
        raise ValueError("inversion abscissa requires x > 0")
    lx = math.log(x)

    def integrand(v):
        s = c + 1j * np.asarray(v)
        return transform(s) * np.exp(-s * lx)

    val, err, _ = line_integral(integrand, tol_abs * 2.0 * math.pi,
                                hints=hints, symmetric=symmetric, tmax=tmax)
    val /= 2.0 * math.pi
    err /= 2.0 * math.pi
    return (val.real if symmetric else val), err


def bromwich_inversion(transform, x, c, tol_abs, *, hints=(), symmetric=True,
                       damping=0.0, tmax=1e7):
    """Invert a Laplace transform at ``x`` along the line Re s = c + damping."""
    c_eff = c + damping

    def integrand(v):
        s = c_eff + 1j * np.asarray(v)
        return transform(s) * np.exp(s * x)

    val, err, _ = line_integral(integrand, tol_abs * 2.0 * math.pi,
                                hints=hints, symmetric=symmetric, tmax=tmax)
    val /= 2.0 * math.pi
    err /= 2.0 * math.pi
    return (val.real if symmetric else val), err
