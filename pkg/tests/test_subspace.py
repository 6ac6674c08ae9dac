import numpy as np
import pytest

from gabidulin.field import independent_over_fq
from gabidulin.skewpoly import SkewPoly, fast_mul, fast_right_div, sp_eval, sp_sub
from gabidulin.subspace import (LinearDependenceError, PointSet, SubspaceBasis, interpolate,
                                interpolate_incremental, interpolation_plan, mpe, mpe_tree, msp,
                                msp_incremental, q_reverse_full, subspace_tree)
from helpers import SMALL_FIELDS, field, independent, span_elements
from oracles import all_coords

SIZES = [1, 2, 3, 7, 8, 9, 16, 31]


def frobenius_modulus(ctx):
    return sp_sub(SkewPoly.monomial(ctx, ctx.m), SkewPoly.one(ctx))


def ones_at(ctx, degrees):
    coeffs = ctx.zeros(max(degrees) + 1)
    coeffs[list(degrees)] = ctx.one()
    return SkewPoly(ctx, coeffs)


def fields_for(s):
    return [f for f in SMALL_FIELDS if f[2] >= s]


# minimal subspace polynomials

def test_msp_single_point(rng):
    ctx = field(3, 1, 5)
    u = ctx.random(rng, nonzero=True)
    c = ctx.mul(ctx.frob(u, 1), ctx.inv(u))  # u^(q-1)
    expect = SkewPoly(ctx, np.stack([ctx.neg(c), ctx.one()]))
    assert msp(ctx, u[None]) == expect


@pytest.mark.parametrize("p,e,m", SMALL_FIELDS)
def test_msp_of_whole_field(p, e, m):
    ctx = field(p, e, m)
    assert msp(ctx, ctx.normal_basis()) == frobenius_modulus(ctx)


def test_msp_f4():
    ctx = field(2, 1, 2)
    M = msp(ctx, ctx.normal_basis())
    assert M == ones_at(ctx, [2, 0])
    assert not ctx.coords(sp_eval(M, ctx.from_coords(all_coords(2, 2)))).any()


@pytest.mark.parametrize("s", SIZES + [64])
def test_msp_properties(s, rng):
    for p, e, m in fields_for(s):
        ctx = field(p, e, m)
        U = independent(ctx, s, rng)
        M = msp(ctx, U)
        assert M.is_monic() and M.degree == s
        assert not ctx.coords(sp_eval(M, span_elements(ctx, U, rng, 100))).any()
        assert M == msp_incremental(ctx, U)


def test_msp_rejects_dependent(rng):
    ctx = field(2, 1, 33)
    U = independent(ctx, 12, rng)
    bad = np.concatenate([U, ctx.add(U[0], U[5])[None]])
    with pytest.raises(LinearDependenceError):
        msp(ctx, bad)
    with pytest.raises(LinearDependenceError):
        msp_incremental(ctx, bad)
    assert msp(ctx, bad, strict=False) == msp(ctx, U)


def test_subspace_basis_type(rng):
    ctx = field(2, 1, 8)
    U = SubspaceBasis(ctx, independent(ctx, 5, rng))
    assert len(U) == 5 and U.is_independent()
    assert msp(ctx, U) == msp_incremental(ctx, U.elems)


def test_subspace_tree(rng):
    ctx = field(2, 1, 33)
    U = independent(ctx, 20, rng)
    tree = subspace_tree(ctx, U)
    assert tree.M == msp(ctx, U)
    assert tree.left.M == msp(ctx, U[:10]) and tree.right.M == msp(ctx, U[10:])


def test_msp_count_growth():
    # two doublings at a time, since single ratios wobble with the fragment sizes
    ctx = field(2, 1, 512)
    counts = {}
    for s in (64, 128, 256, 512):
        U = independent(ctx, s, np.random.default_rng(s))
        with ctx.measure() as rec:
            msp(ctx, U)
        counts[s] = rec.counts.mul
    for s in (64, 128):
        assert counts[4 * s] / counts[s] <= 3.7**2


# multi-point evaluation

@pytest.mark.parametrize("p,e,m", SMALL_FIELDS)
def test_mpe_identity_and_kernel(p, e, m, rng):
    ctx = field(p, e, m)
    s = min(m, 20)
    U = independent(ctx, s, rng)
    assert np.array_equal(mpe(SkewPoly.one(ctx), U), U)
    assert not ctx.coords(mpe(msp(ctx, U), U)).any()


@pytest.mark.parametrize("evaluate", [mpe, mpe_tree])
@pytest.mark.parametrize("p,e,m", SMALL_FIELDS)
def test_mpe_matches_pointwise(evaluate, p, e, m, rng):
    ctx = field(p, e, m)
    for npts, deg in [(0, 5), (1, 0), (5, 40), (8, 7), (17, 16), (40, 80), (40, 3), (64, 63)]:
        a = SkewPoly.random(ctx, deg, rng)
        U = ctx.random(rng, npts)
        if npts > 4:
            U[3] = U[1]
            U[4] = ctx.add(U[0], U[2])
        assert np.array_equal(evaluate(a, U), sp_eval(a, U))


def test_mpe_large(rng):
    ctx = field(2, 1, 128)
    a = SkewPoly.random(ctx, 64, rng)
    U = ctx.random(rng, 64)
    assert np.array_equal(mpe(a, U), sp_eval(a, U))
    assert np.array_equal(mpe_tree(a, U), sp_eval(a, U))


def test_mpe_zero_poly(rng):
    ctx = field(2, 1, 33)
    assert not ctx.coords(mpe(SkewPoly.zero(ctx), ctx.random(rng, 20))).any()


def test_mpe_needs_linearized():
    ctx = field(2, 1, 8)
    with pytest.raises(ValueError):
        mpe(SkewPoly.one(ctx, 2), ctx.normal_basis())


# interpolation

def test_interpolate_one_point(rng):
    ctx = field(3, 1, 5)
    x, y = ctx.random(rng, nonzero=True), ctx.random(rng)
    assert interpolate(ctx, x[None], y[None]) == SkewPoly(ctx, ctx.div(y, x)[None])


def test_interpolate_f4():
    ctx = field(2, 1, 2)
    xs = ctx.normal_basis()
    ys = np.stack([ctx.one(), ctx.one()])
    assert interpolate(ctx, xs, ys) == ones_at(ctx, [1, 0])


@pytest.mark.parametrize("s", SIZES + [64])
def test_interpolate_roundtrips(s, rng):
    for p, e, m in fields_for(s):
        ctx = field(p, e, m)
        xs = independent(ctx, s, rng)
        f = SkewPoly.random(ctx, s - 1, rng)
        assert interpolate(ctx, xs, mpe(f, xs)) == f
        ys = ctx.random(rng, s)
        I = interpolate(ctx, PointSet(ctx, xs, ys))
        assert I.degree < s
        assert np.array_equal(sp_eval(I, xs), ys)
        assert I == interpolate_incremental(ctx, xs, ys)


def test_interpolation_plan_reuse(rng):
    ctx = field(2, 1, 33)
    xs = independent(ctx, 30, rng)
    plan = interpolation_plan(ctx, xs)
    for _ in range(3):
        ys = ctx.random(rng, 30)
        assert interpolate(ctx, xs, ys, plan=plan) == interpolate(ctx, xs, ys)
    with pytest.raises(ValueError):
        interpolate(ctx, xs, ys[:5], plan=plan)


def test_interpolate_rejects_dependent(rng):
    ctx = field(2, 1, 33)
    xs = independent(ctx, 10, rng)
    xs[7] = ctx.add(xs[1], xs[2])
    with pytest.raises(LinearDependenceError):
        interpolate(ctx, xs, ctx.random(rng, 10))
    with pytest.raises(LinearDependenceError):
        interpolate(ctx, xs[:3].repeat(2, axis=0), ctx.random(rng, 6))


def test_pointset_lengths(rng):
    ctx = field(2, 1, 8)
    with pytest.raises(ValueError):
        PointSet(ctx, ctx.random(rng, 3), ctx.random(rng, 2))


# full q-reverse

@pytest.mark.parametrize("p,e,m", SMALL_FIELDS)
def test_q_reverse_examples(p, e, m):
    ctx = field(p, e, m)
    one = SkewPoly.one(ctx)
    assert q_reverse_full(one, m) == one
    assert q_reverse_full(SkewPoly.monomial(ctx, 1), m) == SkewPoly.monomial(ctx, m - 1)


@pytest.mark.parametrize("p,e,m", SMALL_FIELDS)
def test_q_reverse_shifted_degree(p, e, m, rng):
    ctx = field(p, e, m)
    xm = frobenius_modulus(ctx)
    for gamma in range(min(m, 6)):
        G = SkewPoly.random(ctx, gamma, rng)
        shifted = fast_mul(q_reverse_full(G, m), SkewPoly.monomial(ctx, gamma))
        gt = fast_right_div(shifted, xm)[1] if shifted.degree >= m else shifted
        assert gt.degree <= gamma


@pytest.mark.parametrize("p,e,m", SMALL_FIELDS)
def test_q_reverse_is_trace_adjoint(p, e, m, rng):
    # Tr(G(x) y) = Tr(x Gbar(y)) for the trace of F_(q^m) over F_q
    ctx = field(p, e, m)
    G = SkewPoly.random(ctx, m - 1, rng)
    Gbar = q_reverse_full(G, m)
    x, y = ctx.random(rng, 5), ctx.random(rng, 5)

    def trace(z):
        acc = z
        for i in range(1, m):
            acc = ctx.add(acc, ctx.frob(z, i))
        return acc

    assert np.array_equal(trace(ctx.mul(sp_eval(G, x), y)), trace(ctx.mul(x, sp_eval(Gbar, y))))


def test_q_reverse_rejects_high_degree():
    ctx = field(2, 1, 8)
    with pytest.raises(ValueError):
        q_reverse_full(SkewPoly.monomial(ctx, 8), 8)


def test_independent_helper(rng):
    ctx = field(2, 1, 8)
    assert independent_over_fq(ctx, independent(ctx, 8, rng))
