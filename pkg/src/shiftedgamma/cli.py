"""Batch command-line front end.

A job is a single JSON document (stdin or --config), with every scalar field
also settable as a command-line override.  Grids of density/CDF values are
emitted as CSV or JSON with a fixed column order (x, pdf, cdf, err_est);
sampling jobs emit single-column CSV; compare jobs emit a JSON report and set
the exit status.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 comparison beyond thresholds.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields as dc_fields

import numpy as np

from . import algebra, gengamma, oracle
from .errors import ConfigError, ShiftedGammaError
from .hfun import ContourSpec, HParams, eval_h
from .ihat import IhatFactor, IhatSpec, eval_ihat

_OPS = ("eval-h", "eval-ihat", "pdf", "product", "sum", "quotient",
        "lincomb", "sample", "compare")


@dataclass
class JobConfig:
    op: str
    factors: list = field(default_factory=list)
    coeffs: list | None = None
    grid: tuple = (0.0, 1.0, 11)
    tol: float = 1e-8
    seed: int = 0
    samples: int = 100_000
    format: str = "csv"
    out: str | None = None
    compare_op: str | None = None        # op run inside `compare`
    ks_threshold: float = 0.005
    gap_threshold: float = 1e-4
    h_params: dict | None = None         # eval-h: {m, n, upper, lower}
    ihat_factors: list | None = None     # eval-ihat: list of factor dicts
    abscissa: float | None = None


@dataclass
class GridResult:
    x: np.ndarray
    pdf: np.ndarray
    cdf: np.ndarray
    err_est: np.ndarray

    def rows(self):
        return zip(self.x, self.pdf, self.cdf, self.err_est)


def _cfg_get(raw, key, types, default, required=False):
    if key not in raw:
        if required:
            raise ConfigError(key, "missing required field")
        return default
    val = raw[key]
    if types is not None and not isinstance(val, types):
        raise ConfigError(key, f"expected {types}, got {type(val).__name__}")
    return val


def parse_config(raw):
    """Validate a raw JSON dict into a JobConfig."""
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "configuration must be a JSON object")
    known = {f.name for f in dc_fields(JobConfig)}
    for key in raw:
        if key not in known:
            raise ConfigError(key, "unknown field")
    op = _cfg_get(raw, "op", str, None, required=True)
    if op not in _OPS:
        raise ConfigError("op", f"must be one of {', '.join(_OPS)}")

    factors = []
    for i, d in enumerate(_cfg_get(raw, "factors", list, [])):
        try:
            factors.append(gengamma.GenGammaParams.from_dict(d))
        except (KeyError, TypeError, ShiftedGammaError) as exc:
            raise ConfigError(f"factors[{i}]", str(exc)) from exc

    grid_raw = _cfg_get(raw, "grid", (list, tuple, dict), (0.0, 1.0, 11))
    if isinstance(grid_raw, dict):
        grid_raw = (grid_raw.get("start"), grid_raw.get("stop"),
                    grid_raw.get("points"))
    if len(grid_raw) != 3:
        raise ConfigError("grid", "needs (start, stop, points)")
    try:
        grid = (float(grid_raw[0]), float(grid_raw[1]), int(grid_raw[2]))
    except (TypeError, ValueError) as exc:
        raise ConfigError("grid", str(exc)) from exc
    if grid[2] < 2:
        raise ConfigError("grid", "points must be >= 2")
    if not grid[0] < grid[1]:
        raise ConfigError("grid", "start must be below stop")

    tol = _cfg_get(raw, "tol", (int, float), 1e-8)
    if not tol > 0:
        raise ConfigError("tol", "must be positive")
    samples = _cfg_get(raw, "samples", int, 100_000)
    if samples < 1:
        raise ConfigError("samples", "must be >= 1")
    fmt = _cfg_get(raw, "format", str, "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("format", "must be csv or json")
    coeffs = _cfg_get(raw, "coeffs", list, None)
    if coeffs is not None:
        coeffs = [float(c) for c in coeffs]

    cfg = JobConfig(
        op=op, factors=factors, coeffs=coeffs, grid=grid, tol=float(tol),
        seed=_cfg_get(raw, "seed", int, 0), samples=samples, format=fmt,
        out=_cfg_get(raw, "out", str, None),
        compare_op=_cfg_get(raw, "compare_op", str, None),
        ks_threshold=float(_cfg_get(raw, "ks_threshold", (int, float), 0.005)),
        gap_threshold=float(_cfg_get(raw, "gap_threshold", (int, float), 1e-4)),
        h_params=_cfg_get(raw, "h_params", dict, None),
        ihat_factors=_cfg_get(raw, "ihat_factors", list, None),
        abscissa=_cfg_get(raw, "abscissa", (int, float), None),
    )
    _check_arity(cfg)
    return cfg


def _check_arity(cfg):
    need = {"pdf": 1, "quotient": 2}
    n = len(cfg.factors)
    op = cfg.compare_op if cfg.op == "compare" else cfg.op
    if cfg.op == "compare" and op not in ("product", "sum", "quotient", "lincomb"):
        raise ConfigError("compare_op",
                          "compare needs product, sum, quotient, or lincomb")
    if op in need and n != need[op]:
        raise ConfigError("factors", f"{op} requires exactly {need[op]}")
    if op in ("product", "sum", "lincomb", "sample") and n < 1:
        raise ConfigError("factors", f"{op} requires at least one factor")
    if op == "quotient" and n != 2:
        raise ConfigError("factors", "quotient requires exactly 2 factors")
    if op == "lincomb":
        if cfg.coeffs is None or len(cfg.coeffs) != n:
            raise ConfigError("coeffs", "lincomb needs coeffs matching factors")
    if cfg.op == "eval-h" and cfg.h_params is None:
        raise ConfigError("h_params", "eval-h needs h_params")
    if cfg.op == "eval-ihat" and not cfg.ihat_factors:
        raise ConfigError("ihat_factors", "eval-ihat needs ihat_factors")


def _grid_points(cfg):
    start, stop, points = cfg.grid
    return np.linspace(start, stop, points)


def _parallel(fn, xs):
    with ThreadPoolExecutor() as pool:
        return list(pool.map(fn, xs))


def _h_params_from_dict(d):
    try:
        return HParams.make(int(d["m"]), int(d["n"]),
                            [tuple(e) for e in d.get("upper", [])],
                            [tuple(e) for e in d.get("lower", [])])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("h_params", str(exc)) from exc


def _ihat_spec_from_config(cfg):
    try:
        factors = tuple(IhatFactor(**d) for d in cfg.ihat_factors)
    except (TypeError, ShiftedGammaError) as exc:
        raise ConfigError("ihat_factors", str(exc)) from exc
    contour = ContourSpec(cfg.abscissa) if cfg.abscissa is not None else None
    return IhatSpec(factors, contour)


def _pdf_fn(cfg, op):
    inv = algebra.InversionSettings(abscissa=cfg.abscissa, tolerance=cfg.tol)
    fs = cfg.factors
    if op == "pdf":
        return (lambda x: gengamma.pdf(fs[0], x)), fs[0].mu
    if op == "product":
        return (lambda x: algebra.product_pdf(fs, x, inv)), \
            algebra.product_support(fs)
    if op == "sum":
        return (lambda x: algebra.sum_pdf(fs, x, inv)), algebra.sum_support(fs)
    if op == "lincomb":
        scaled = [gengamma.scale(p, a) for a, p in zip(cfg.coeffs, fs)]
        return (lambda x: algebra.sum_pdf(scaled, x, inv)), \
            algebra.sum_support(scaled)
    if op == "quotient":
        return (lambda x: algebra.quotient_pdf(fs[0], fs[1], x, inv)), 0.0
    raise ConfigError("op", f"no density for op {op}")


def _cumulative(xs, pdf_vals, support_start, exact_cdf=None):
    if exact_cdf is not None:
        return np.clip(exact_cdf(xs), 0.0, 1.0)
    xs_full = np.concatenate([[support_start], xs]) \
        if xs[0] > support_start else xs
    pdf_full = np.concatenate([[0.0], pdf_vals]) \
        if xs[0] > support_start else pdf_vals
    from scipy.integrate import cumulative_trapezoid
    cum = cumulative_trapezoid(pdf_full, xs_full, initial=0.0)
    if xs[0] > support_start:
        cum = cum[1:]
    return np.clip(cum, 0.0, 1.0)


def run(config):
    """Execute one job; returns GridResult, SampleSet, or a report dict."""
    op = config.op
    if op == "sample":
        return oracle.SampleSet(
            gengamma.sample(config.factors[0], config.seed, config.samples),
            seed=config.seed, n=config.samples)

    if op == "eval-h":
        params = _h_params_from_dict(config.h_params)
        xs = _grid_points(config)

        def one(x):
            got = eval_h(params, x, tol=config.tol)
            return got.value.real, got.err_est
        vals = _parallel(one, xs)
        return GridResult(xs, np.array([v for v, _ in vals]),
                          np.zeros(xs.size), np.array([e for _, e in vals]))

    if op == "eval-ihat":
        spec = _ihat_spec_from_config(config)
        xs = _grid_points(config)

        def one(x):
            got = eval_ihat(spec, x, tol=config.tol)
            return got.value.real, got.err_est
        vals = _parallel(one, xs)
        return GridResult(xs, np.array([v for v, _ in vals]),
                          np.zeros(xs.size), np.array([e for _, e in vals]))

    if op == "compare":
        return _run_compare(config)

    pdf_fn, support = _pdf_fn(config, op)
    xs = _grid_points(config)
    pdf_vals = np.array(_parallel(pdf_fn, xs))
    exact = (lambda x: gengamma.cdf(config.factors[0], x)) if op == "pdf" \
        else None
    cdf_vals = _cumulative(xs, pdf_vals, support, exact_cdf=exact)
    err = np.zeros(xs.size) if op == "pdf" \
        else np.full(xs.size, config.tol)
    return GridResult(xs, pdf_vals, cdf_vals, err)


def _run_compare(config):
    op = config.compare_op
    mc_op = {"product": "product", "sum": "sum", "quotient": "quotient",
             "lincomb": "sum"}[op]
    coeffs = config.coeffs if op == "lincomb" else None
    samples = oracle.mc_combine(config.factors, mc_op, coeffs=coeffs,
                                seed=config.seed, n=config.samples)
    pdf_fn, support = _pdf_fn(config, op)

    # density grid concentrated where the sample mass is
    qs = np.quantile(samples.values, np.linspace(0.0, 1.0, 400))
    xs = np.unique(np.concatenate([_grid_points(config), qs]))
    xs = xs[xs > support]
    pdf_vals = np.array(_parallel(pdf_fn, xs))
    cdf_vals = _cumulative(xs, pdf_vals, support)

    def cdf_interp(x):
        return np.interp(x, xs, cdf_vals, left=0.0, right=float(cdf_vals[-1]))

    ks = oracle.ks_distance(samples, cdf_interp)

    gap = None
    grid = _grid_points(config)
    grid = grid[grid > support]
    if op in ("product", "sum", "quotient") and len(config.factors) == 2:
        p1, p2 = config.factors
        f1 = lambda t: gengamma.pdf(p1, t)
        f2 = lambda t: gengamma.pdf(p2, t)
        if op == "sum":
            ref = [oracle.convolve_additive(f1, f2, p1.mu, p2.mu, x)
                   for x in grid]
        elif op == "product":
            ref = [oracle.convolve_multiplicative(f1, f2, x) for x in grid]
        else:
            inv2 = lambda t: f2(1.0 / t) / t ** 2 if t > 0 else 0.0
            ref = [oracle.convolve_multiplicative(f1, inv2, x) for x in grid]
        got = np.array(_parallel(pdf_fn, grid))
        gap = float(np.abs(got - np.array(ref)).max()) if grid.size else None

    passed = ks <= config.ks_threshold and \
        (gap is None or gap <= config.gap_threshold)
    return {
        "op": op,
        "n_samples": config.samples,
        "seed": config.seed,
        "ks": ks,
        "ks_threshold": config.ks_threshold,
        "max_pdf_gap": gap,
        "gap_threshold": config.gap_threshold,
        "pass": bool(passed),
    }


def _factors_text(cfg):
    return json.dumps([p.to_dict() for p in cfg.factors], sort_keys=True)


def render(result, config):
    """Serialize a run result to text in the configured format."""
    if isinstance(result, oracle.SampleSet):
        return result.to_csv()
    if isinstance(result, dict):
        return json.dumps(result, indent=2, sort_keys=True) + "\n"
    if config.format == "json":
        payload = {
            "op": config.op, "factors": [p.to_dict() for p in config.factors],
            "tol": config.tol, "seed": config.seed,
            "rows": [{"x": x, "pdf": p, "cdf": c, "err_est": e}
                     for x, p, c, e in result.rows()],
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# op={config.op} factors={_factors_text(config)} "
              f"tol={config.tol:.17g} seed={config.seed} "
              f"columns=x,pdf,cdf,err_est\n")
    for x, p, c, e in result.rows():
        buf.write(f"{x:.17g},{p:.17g},{c:.17g},{e:.17g}\n")
    return buf.getvalue()


def _parse_grid_flag(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("grid", "expected start:stop:points")
    return [float(parts[0]), float(parts[1]), int(parts[2])]


def build_parser():
    ap = argparse.ArgumentParser(
        prog="shiftedgamma",
        description="Evaluate special-function transforms and densities of "
                    "combinations of shifted generalized gamma variables.")
    ap.add_argument("--op", choices=_OPS)
    ap.add_argument("--config", help="path to a JSON job document")
    ap.add_argument("--grid", help="start:stop:points")
    ap.add_argument("--tol", type=float)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--samples", type=int)
    ap.add_argument("--format", choices=("csv", "json"), dest="fmt")
    ap.add_argument("--out", help="output path (default stdout)")
    ap.add_argument("--factors",
                    help="inline JSON list of factor parameter objects")
    ap.add_argument("--coeffs", help="inline JSON list of coefficients")
    return ap


def _load_raw_config(args):
    raw = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    elif not sys.stdin.isatty():
        text = sys.stdin.read().strip()
        if text:
            raw = json.loads(text)
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "configuration must be a JSON object")
    # command-line overrides win
    if args.op:
        raw["op"] = args.op
    if args.grid:
        raw["grid"] = _parse_grid_flag(args.grid)
    if args.tol is not None:
        raw["tol"] = args.tol
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.samples is not None:
        raw["samples"] = args.samples
    if args.fmt:
        raw["format"] = args.fmt
    if args.out:
        raw["out"] = args.out
    if args.factors:
        raw["factors"] = json.loads(args.factors)
    if args.coeffs:
        raw["coeffs"] = json.loads(args.coeffs)
    return raw


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        try:
            raw = _load_raw_config(args)
        except json.JSONDecodeError as exc:
            raise ConfigError("<json>", str(exc)) from exc
        config = parse_config(raw)
        result = run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ShiftedGammaError as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3

    text = render(result, config)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if isinstance(result, dict) and not result.get("pass", True):
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
