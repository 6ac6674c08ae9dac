import numpy as np
import pytest

from gabidulin.matmul import naive_matmul, strassen_cost, strassen_matmul
from helpers import field


def reference(ctx, A, B):
    # entry by entry, no broadcasting tricks
    r, k = A.shape[:2]
    c = B.shape[1]
    out = ctx.zeros((r, c))
    for i in range(r):
        for j in range(c):
            acc = ctx.zeros()
            for t in range(k):
                acc = ctx.add(acc, ctx.mul(A[i, t], B[t, j]))
            out[i, j] = acc
    return out


@pytest.mark.parametrize("p,e,m", [(2, 1, 8), (3, 1, 4), (2, 2, 3)])
@pytest.mark.parametrize("n,N", [(1, 1), (2, 5), (3, 3), (5, 12), (8, 8), (9, 20), (13, 13)])
def test_strassen_matches_schoolbook(p, e, m, n, N, rng):
    ctx = field(p, e, m)
    A, B = ctx.random(rng, (n, n)), ctx.random(rng, (n, N))
    ref = reference(ctx, A, B)
    assert np.array_equal(naive_matmul(ctx, A, B), ref)
    for cutoff in (1, 2, 4):
        assert np.array_equal(strassen_matmul(ctx, A, B, cutoff), ref)


@pytest.mark.parametrize("n,N", [(4, 4), (7, 21), (12, 30), (23, 23), (24, 50)])
def test_cost_model_is_exact(n, N, rng):
    ctx = field(2, 1, 16)
    A, B = ctx.random(rng, (n, n)), ctx.random(rng, (n, N))
    with ctx.measure() as rec:
        strassen_matmul(ctx, A, B)
    assert rec.counts.mul == -(-N // n) * strassen_cost(n)


def test_strassen_saves_multiplications():
    assert strassen_cost(32) < 32**3
    assert strassen_cost(24) < strassen_cost(23)


def test_shape_errors():
    ctx = field(2, 1, 8)
    with pytest.raises(ValueError):
        strassen_matmul(ctx, ctx.zeros((2, 3)), ctx.zeros((3, 3)))
    with pytest.raises(ValueError):
        strassen_matmul(ctx, ctx.zeros((2, 2)), ctx.zeros((3, 3)))
