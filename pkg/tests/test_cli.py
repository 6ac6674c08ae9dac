import json

import numpy as np
import pytest

from gabidulin.bench import CSV_HEADER
from gabidulin.channel import simulate_transmission
from gabidulin.cli import main
from gabidulin.codec import CodeParams, encode
from gabidulin.field import FieldCtx, FieldParams
from gabidulin.skewpoly import SkewPoly


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    fld = tmp_path / "field.json"
    code = tmp_path / "code.json"
    assert run(capsys, "field", "--p", 2, "--m", 12, "--seed", 7, "--out", fld)[0] == 0
    assert run(capsys, "code", "--field", fld, "--n", 12, "--k", 4, "--normal-basis", "--out", code)[0] == 0
    return tmp_path, fld, code


def load_code(path):
    d = json.loads(path.read_text())
    d["field"] = json.loads((path.parent / "field.json").read_text())
    return CodeParams.from_dict(d)


def test_field_is_deterministic(capsys):
    a = run(capsys, "field", "--p", 2, "--e", 1, "--m", 8, "--seed", 7)
    b = run(capsys, "field", "--p", 2, "--e", 1, "--m", 8, "--seed", 7)
    assert a[0] == 0 and a[1] == b[1]
    params = FieldParams.from_dict(json.loads(a[1]))
    assert (params.p, params.e, params.m) == (2, 1, 8)
    FieldCtx(params)


def test_field_reprint(files, capsys):
    _, fld, _ = files
    code, out, _ = run(capsys, "field", "--from", fld)
    assert code == 0 and json.loads(out) == json.loads(fld.read_text())


@pytest.mark.parametrize("argv", [
    ["field", "--p", 4, "--m", 3],
    ["code", "--n", 9, "--m", 8, "--k", 2],
    ["code", "--n", 4, "--m", 8, "--k", 5],
    ["code", "--n", 4, "--k", 2],
    ["bench", "--op", "nope", "--sizes", 4],
    ["decode", "--code", "missing.json", "--received", "missing.json"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 1
    if argv[:3] == ["code", "--n", 9]:
        assert "n exceeds m" in err


def test_code_file(files):
    _, fld, code = files
    d = json.loads(code.read_text())
    assert d["n"] == 12 and d["k"] == 4 and d["g"] == "normal_basis"
    cp = load_code(code)
    assert (cp.g == cp.ctx.normal_basis()).all()


def test_code_file_explicit_points(files, capsys):
    tmp_path, fld, _ = files
    out = tmp_path / "c2.json"
    assert run(capsys, "code", "--field", fld, "--n", 3, "--k", 1, "--g", 1, 2, 4, "--out", out)[0] == 0
    assert json.loads(out.read_text())["g"] == [1, 2, 4]


def test_encode_decode_roundtrip(files, capsys):
    tmp_path, _, code = files
    cp = load_code(code)
    f = SkewPoly.random(cp.ctx, 3, np.random.default_rng(1))
    fpath = tmp_path / "f.json"
    fpath.write_text(json.dumps({"f": f.to_terms()}))
    rpath = tmp_path / "r.json"
    assert run(capsys, "encode", "--code", code, "--f", fpath, "--out", rpath)[0] == 0
    assert json.loads(rpath.read_text())["r"] == cp.ctx.to_ints(encode(cp, f))
    status, out, _ = run(capsys, "decode", "--code", code, "--received", rpath)
    assert status == 0
    assert json.loads(out) == {"status": "ok", "f": f.to_terms()}


def test_decode_with_erasures(files, capsys):
    tmp_path, _, code = files
    cp = load_code(code)
    ctx = cp.ctx
    f = SkewPoly.random(ctx, 3, np.random.default_rng(2))
    r, side, _ = simulate_transmission(cp, f, 1, 2, 3, seed=3)
    rpath = tmp_path / "r.json"
    rpath.write_text(json.dumps({"r": ctx.to_ints(r), "aR": ctx.to_ints(side.aR),
                                 "BC": side.BC.tolist()}))
    status, out, _ = run(capsys, "decode", "--code", code, "--received", rpath)
    assert status == 0 and json.loads(out)["f"] == f.to_terms()
    # the same side information from flags
    rpath.write_text(json.dumps({"r": ctx.to_ints(r)}))
    status, out, _ = run(capsys, "decode", "--code", code, "--received", rpath,
                         "--aR", *ctx.to_ints(side.aR), "--BC", json.dumps(side.BC.tolist()))
    assert status == 0 and json.loads(out)["f"] == f.to_terms()


def test_decode_failure_exit_code(files, capsys):
    tmp_path, _, code = files
    cp = load_code(code)
    ctx = cp.ctx
    rng = np.random.default_rng(3)
    codes = set()
    for seed in range(10):
        f = SkewPoly.random(ctx, 3, rng)
        r, _, _ = simulate_transmission(cp, f, 6, 0, 0, seed)
        rpath = tmp_path / "r.json"
        rpath.write_text(json.dumps({"r": ctx.to_ints(r)}))
        status, out, _ = run(capsys, "decode", "--code", code, "--received", rpath)
        codes.add(status)
        if status == 0:
            assert max(e for e, _ in json.loads(out)["f"]) < cp.k
        else:
            assert status == 2 and json.loads(out) == {"status": "failure"}
    assert 2 in codes


def simulate(tmp_path, capsys, code, **spec):
    path = tmp_path / "sim.json"
    path.write_text(json.dumps(dict(code=str(code), **spec)))
    status, out, _ = run(capsys, "simulate", path)
    return status, [json.loads(line) for line in out.splitlines()]


def test_simulate_within_radius(files, capsys):
    tmp_path, _, code = files
    status, recs = simulate(tmp_path, capsys, code, tau=2, rho=2, gamma=2, seed=5, trials=6)
    assert status == 0
    assert recs[-1] == {"trials": 6, "success_rate": 1.0}
    for rec in recs[:-1]:
        assert rec["success"] and set(rec["fq_op_counts"]) == {"mul", "inv", "add", "frob"}
    again = simulate(tmp_path, capsys, code, tau=2, rho=2, gamma=2, seed=5, trials=6)[1]
    assert again == recs


def test_simulate_beyond_radius_reports(files, capsys):
    tmp_path, _, code = files
    status, recs = simulate(tmp_path, capsys, code, tau=3, rho=2, gamma=1, seed=0, trials=4)
    assert status == 0 and 0.0 <= recs[-1]["success_rate"] <= 1.0


def test_simulate_zero_trials(files, capsys):
    tmp_path, _, code = files
    assert simulate(tmp_path, capsys, code, tau=1, trials=0) == (0, [])


def test_simulate_infeasible(files, capsys):
    tmp_path, _, code = files
    path = tmp_path / "sim.json"
    path.write_text(json.dumps({"code": str(code), "tau": 10, "rho": 3, "trials": 1}))
    assert run(capsys, "simulate", path)[0] == 1


def test_bench_csv(capsys):
    status, out, _ = run(capsys, "bench", "--op", "mul-naive", "msp", "--sizes", 8, 16, 32, 64)
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == CSV_HEADER
    rows = [l.split(",") for l in lines[1:] if not l.startswith("#")]
    assert [r[0] for r in rows] == ["mul-naive"] * 4 + ["msp"] * 4
    assert all(int(r[2]) > 0 for r in rows)
    assert sum(l.startswith("# slope") for l in lines) == 2


def test_bench_deterministic_counts(capsys):
    argv = ["bench", "--op", "mpe", "--sizes", 16, 32, "--json"]
    a, b = json.loads(run(capsys, *argv)[1]), json.loads(run(capsys, *argv)[1])
    strip = lambda d: [{k: v for k, v in r.items() if k != "wall_ns"} for r in d["rows"]]
    assert strip(a) == strip(b)
    assert a["slopes"] == b["slopes"]
