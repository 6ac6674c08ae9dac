"""Operation-count benchmarks and log-log slope fits."""

import math
import time

import numpy as np

from .field import build_field, independent_over_fq
from .skewpoly import SkewPoly, fast_mul, fast_right_div, leea, naive_mul, naive_right_div
from .subspace import interpolate, mpe, msp

CSV_HEADER = "op,s,mul,inv,add,frob,wall_ns"
DEFAULT_SIZES = (64, 128, 256, 512, 1024)


def _independent(ctx, s, rng):
    while True:
        U = ctx.random(rng, s)
        if independent_over_fq(ctx, U):
            return U


def _setup(op, ctx, s, rng):
    """Inputs for one run of ``op`` at size s, and the call to time."""
    if op in ("mul-naive", "mul-fast"):
        a, b = SkewPoly.random(ctx, s, rng), SkewPoly.random(ctx, s, rng)
        f = naive_mul if op == "mul-naive" else fast_mul
        return lambda: f(a, b)
    if op in ("div-naive", "div-fast"):
        a, b = SkewPoly.random(ctx, s, rng), SkewPoly.random(ctx, s // 2, rng)
        f = naive_right_div if op == "div-naive" else fast_right_div
        return lambda: f(a, b)
    if op == "msp":
        U = _independent(ctx, s, rng)
        return lambda: msp(ctx, U)
    if op == "mpe":
        a, U = SkewPoly.random(ctx, s - 1, rng), ctx.random(rng, s)
        return lambda: mpe(a, U)
    if op == "interpolate":
        U, ys = _independent(ctx, s, rng), ctx.random(rng, s)
        return lambda: interpolate(ctx, U, ys)
    if op == "leea":
        a, b = SkewPoly.random(ctx, s, rng), SkewPoly.random(ctx, s - 1, rng)
        return lambda: leea(a, b, s // 2)
    raise ValueError(f"unknown benchmark op {op!r}")


OPS = ("mul-naive", "mul-fast", "div-naive", "div-fast", "msp", "mpe", "interpolate", "leea")


def run(op, sizes=DEFAULT_SIZES, seed=0, ctx=None):
    """One row per size: op counts exclude input generation."""
    sizes = sorted(int(s) for s in sizes)
    if ctx is None:
        ctx = build_field(2, 1, max(sizes), seed=seed)
    if op in ("msp", "interpolate") and max(sizes) > ctx.m:
        raise ValueError("msp and interpolate need s <= m independent points")
    rows = []
    for s in sizes:
        rng = np.random.default_rng([seed, s])
        call = _setup(op, ctx, s, rng)
        with ctx.measure() as rec:
            t0 = time.perf_counter_ns()
            call()
            wall = time.perf_counter_ns() - t0
        c = rec.counts
        rows.append({"op": op, "s": s, "mul": c.mul, "inv": c.inv, "add": c.add,
                     "frob": c.frob, "wall_ns": wall})
    return rows


def fit_slope(sizes, values):
    """Least-squares slope of log(values) against log(sizes)."""
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    if len(x) < 2:
        return math.nan
    return float(np.polyfit(x, y, 1)[0])


def to_csv(rows):
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join(str(r[k]) for k in CSV_HEADER.split(",")))
    return "\n".join(lines)


def slope_report(rows, skip=2):
    """Slopes of the mul counts: over all sizes and over the tail after ``skip`` warm-up sizes."""
    sizes = [r["s"] for r in rows]
    muls = [max(r["mul"], 1) for r in rows]
    tail = slice(skip, None) if len(rows) - skip >= 2 else slice(None)
    return {"all": fit_slope(sizes, muls), "tail": fit_slope(sizes[tail], muls[tail])}
