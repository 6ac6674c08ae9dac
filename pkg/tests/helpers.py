"""Shared helpers for the test modules."""

import functools

import numpy as np

from gabidulin.field import build_field, independent_over_fq


@functools.lru_cache(maxsize=None)
def field(p, e, m, seed=0):
    return build_field(p, e, m, seed=seed)


def independent(ctx, s, rng):
    """s random elements independent over F_q (rejection sampling)."""
    while True:
        U = ctx.random(rng, s)
        if independent_over_fq(ctx, U):
            return U


def span_elements(ctx, U, rng, count):
    """Random F_q-combinations of the rows of U."""
    C = rng.integers(0, ctx.q, size=(count, len(U)))
    coords = np.zeros((count, ctx.m), dtype=np.int64)
    UC = ctx.coords(U)
    F = ctx.base
    for i in range(len(U)):
        coords = F.add(coords, F.mul(C[:, i:i + 1], UC[i][None]))
    return ctx.from_coords(coords)


SMALL_FIELDS = [(2, 1, 8), (3, 1, 5), (2, 2, 4), (5, 1, 3), (2, 1, 33)]

# PASS/FAIL lines of the acceptance criteria, printed in the terminal summary
ACCEPTANCE = []
