import math

import pytest

from gabidulin import bench
from gabidulin.field import build_field

SIZES = [8, 16, 32]


@pytest.mark.parametrize("op", bench.OPS)
def test_run_rows(op):
    rows = bench.run(op, SIZES, seed=1)
    assert [r["s"] for r in rows] == SIZES
    for r in rows:
        assert set(r) == set(bench.CSV_HEADER.split(","))
        assert r["mul"] > 0
    again = bench.run(op, SIZES, seed=1)
    assert [r["mul"] for r in rows] == [r["mul"] for r in again]


def test_counts_exclude_setup():
    ctx = build_field(2, 1, 32)
    with ctx.measure() as outer:
        rows = bench.run("mul-naive", [16], ctx=ctx)
    # schoolbook product of two degree-16 polynomials
    assert rows[0]["mul"] == 17 * 17
    assert outer.counts.mul >= rows[0]["mul"]


def test_unknown_op():
    with pytest.raises(ValueError):
        bench.run("nope", SIZES)


def test_msp_needs_room():
    with pytest.raises(ValueError):
        bench.run("msp", [64], ctx=build_field(2, 1, 32))


@pytest.mark.parametrize("exponent", [1.0, 1.5, 2.0])
def test_fit_slope(exponent):
    sizes = [64, 128, 256, 512]
    assert math.isclose(bench.fit_slope(sizes, [s**exponent for s in sizes]), exponent)
    assert math.isnan(bench.fit_slope([4], [5]))


def test_slope_report_skips_warmup():
    rows = [{"s": s, "mul": m} for s, m in [(1, 100), (2, 100), (4, 16), (8, 64), (16, 256)]]
    rep = bench.slope_report(rows)
    assert math.isclose(rep["tail"], 2.0)
    assert rep["all"] < 2.0


def test_to_csv():
    rows = bench.run("leea", [8], seed=0)
    text = bench.to_csv(rows)
    head, line = text.splitlines()
    assert head == bench.CSV_HEADER and line.startswith("leea,8,")
