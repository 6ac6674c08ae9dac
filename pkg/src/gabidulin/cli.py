"""Command line: gabidulin {field,code,encode,decode,simulate,bench}.

Exit status is 0 on success, 1 on a usage or input error and 2 when decoding
fails.
"""

import argparse
import json
import sys

import numpy as np

from . import bench
from .channel import simulate_transmission
from .codec import CodeParams, ErasureSideInfo, decode, encode
from .field import FieldCtx, FieldParams, build_field
from .skewpoly import SkewPoly

EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_json(path_or_obj):
    if isinstance(path_or_obj, dict):
        return path_or_obj
    with open(path_or_obj) as fh:
        return json.load(fh)


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_code(spec):
    d = _load_json(spec)
    fld = d.get("field")
    if isinstance(fld, str):
        d = dict(d, field=_load_json(fld))
    return CodeParams.from_dict(d)


def cmd_field(args):
    if args.field_file:
        ctx = FieldCtx(FieldParams.from_dict(_load_json(args.field_file)))
    else:
        ctx = build_field(args.p, args.e, args.m, seed=args.seed)
    _emit(args, json.dumps(ctx.params.to_dict()))
    return EXIT_OK


def cmd_code(args):
    if args.field:
        params = FieldParams.from_dict(_load_json(args.field))
        if args.m is not None and args.m != params.m:
            raise UsageError(f"--m {args.m} disagrees with the field file (m = {params.m})")
    else:
        if args.m is None:
            raise UsageError("give --field or --m")
        params = None
    m = params.m if params else args.m
    if args.n > m:
        raise UsageError(f"n exceeds m ({args.n} > {m})")
    if not 1 <= args.k <= args.n:
        raise UsageError(f"need 1 <= k <= n, got k = {args.k}")
    ctx = FieldCtx(params) if params else build_field(args.p, args.e, m, seed=args.seed)
    if args.g:
        cp = CodeParams(ctx, args.n, args.k, ctx.elements(args.g))
    else:
        cp = CodeParams.normal(ctx, args.n, args.k)
    _emit(args, json.dumps(cp.to_dict()))
    return EXIT_OK


def _poly_terms(d):
    if isinstance(d, dict):
        d = d["f"]
    return d


def cmd_encode(args):
    cp = _load_code(args.code)
    f = SkewPoly.from_terms(cp.ctx, _poly_terms(_load_json(args.f)))
    c = encode(cp, f)
    _emit(args, json.dumps({"r": cp.ctx.to_ints(c)}))
    return EXIT_OK


def cmd_decode(args):
    cp = _load_code(args.code)
    ctx = cp.ctx
    rec = _load_json(args.received)
    r = ctx.elements(rec["r"])
    aR = args.aR if args.aR is not None else rec.get("aR", [])
    BC = json.loads(args.BC) if args.BC is not None else rec.get("BC", [])
    side = None
    if aR or BC:
        side = ErasureSideInfo(ctx.elements(aR), np.array(BC, dtype=np.int64).reshape(-1, cp.n))
    outcome = decode(cp, r, side)
    if outcome.ok:
        _emit(args, json.dumps({"status": "ok", "f": outcome.f.to_terms()}))
        return EXIT_OK
    _emit(args, json.dumps({"status": "failure"}))
    return EXIT_FAILURE


def cmd_simulate(args):
    spec = _load_json(args.spec)
    cp = _load_code(spec["code"])
    ctx = cp.ctx
    tau, rho, gamma = int(spec.get("tau", 0)), int(spec.get("rho", 0)), int(spec.get("gamma", 0))
    seed0 = int(spec.get("seed", args.seed))
    trials = int(spec.get("trials", 1))
    if tau + rho + gamma > cp.n:
        raise UsageError("tau + rho + gamma exceeds n")
    if (rho or gamma) and not cp.supports_erasures:
        raise UsageError("erasures need n = m and the normal basis")
    lines, wins = [], 0
    for t in range(trials):
        seed = seed0 + t
        rng = np.random.default_rng(seed)
        f = SkewPoly.random(ctx, cp.k - 1, rng)
        r, side, _ = simulate_transmission(cp, f, tau, rho, gamma, seed)
        with ctx.measure() as m:
            outcome = decode(cp, r, side)
        ok = outcome.ok and outcome.f == f
        wins += ok
        lines.append(json.dumps({"seed": seed, "success": bool(ok), "tau": tau, "rho": rho,
                                 "gamma": gamma, "fq_op_counts": m.counts.as_dict()}))
    if trials:
        lines.append(json.dumps({"trials": trials, "success_rate": wins / trials}))
    if lines:
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_bench(args):
    ops = bench.OPS if "all" in args.op else args.op
    for op in ops:
        if op not in bench.OPS:
            raise UsageError(f"unknown op {op!r}; choose from {', '.join(bench.OPS)}")
    sizes = sorted(args.sizes)
    m = args.m or max(sizes)
    ctx = build_field(2, 1, m, seed=args.seed)
    rows, slopes = [], {}
    for op in ops:
        part = bench.run(op, sizes, seed=args.seed, ctx=ctx)
        rows += part
        slopes[op] = bench.slope_report(part)
    if args.json:
        _emit(args, json.dumps({"rows": rows, "slopes": slopes}, indent=1))
    else:
        text = bench.to_csv(rows)
        for op, s in slopes.items():
            text += f"\n# slope {op} tail={s['tail']:.3f} all={s['all']:.3f}"
        _emit(args, text)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="gabidulin", description=__doc__.splitlines()[0],
                                 parents=[common])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("field", parents=[common], help="construct F_{q^m} and print its description")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--from", dest="field_file", help="validate and reprint a field file")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("code", parents=[common], help="describe a Gabidulin code")
    p.add_argument("--field", help="field file (otherwise built from --p/--e/--m/--seed)")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--normal-basis", action="store_true", help="g_i = beta^[i] (default)")
    g.add_argument("--g", type=int, nargs="+", help="evaluation points as element codes")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("encode", parents=[common], help="encode a polynomial file")
    p.add_argument("--code", required=True)
    p.add_argument("--f", required=True, help='JSON {"f": [[exp, int], ...]}')
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="decode a received word")
    p.add_argument("--code", required=True)
    p.add_argument("--received", required=True, help='JSON {"r": [...], "aR": [...], "BC": [[...]]}')
    p.add_argument("--aR", type=int, nargs="*", help="row-erasure elements (overrides the file)")
    p.add_argument("--BC", help="column-erasure matrix as a JSON list of rows (overrides the file)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", parents=[common], help="Monte-Carlo round trips")
    p.add_argument("spec", help='JSON {"code", "tau", "rho", "gamma", "seed", "trials"}')
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", parents=[common], help="operation counts and log-log slopes")
    p.add_argument("--op", nargs="+", default=["all"])
    p.add_argument("--sizes", type=int, nargs="+", default=list(bench.DEFAULT_SIZES))
    p.add_argument("--m", type=int, help="extension degree (default: largest size)")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for bad arguments, which here means a decoding failure
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    for name, default in (("seed", 0), ("out", None), ("json", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
