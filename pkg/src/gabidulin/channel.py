"""Rank-metric channel: matrix views of words and random structured errors."""

from dataclasses import dataclass

import numpy as np

from .codec import ErasureSideInfo, encode
from .field import ext_matrix, fq_rank, independent_over_fq, linalg


def ext_map(ctx, v):
    """m x n matrix over F_q; column j holds the coordinates of v_j."""
    return ext_matrix(ctx, np.asarray(v).reshape((-1,) + ctx.elem_shape))


def ext_inv(ctx, M):
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != ctx.m:
        raise ValueError(f"expected a matrix with m = {ctx.m} rows, got shape {M.shape}")
    return ctx.from_coords(np.ascontiguousarray(M.T))


def rank_of_word(ctx, v):
    return fq_rank(ctx, ext_map(ctx, v))


def combine(ctx, a, B):
    """The word ``a B`` for field elements a (t,) and an F_q matrix B (t x n)."""
    B = np.asarray(B, dtype=np.int64)
    if B.ndim != 2 or B.shape[0] != len(a):
        raise ValueError("B needs one row per element of a")
    if len(a) == 0:
        return ctx.zeros(B.shape[1])
    F = ctx.base
    A = ext_matrix(ctx, a)
    return ext_inv(ctx, linalg.matmul(F, A, B))


@dataclass
class RankError:
    """``e = aE BE + aR BR + aC BC``; the a's are field elements, the B's F_q matrices."""

    e: np.ndarray
    aE: np.ndarray
    BE: np.ndarray
    aR: np.ndarray
    BR: np.ndarray
    aC: np.ndarray
    BC: np.ndarray

    @property
    def tau(self):
        return len(self.aE)

    @property
    def rho(self):
        return len(self.aR)

    @property
    def gamma(self):
        return len(self.aC)


def random_independent(ctx, t, rng):
    """t field elements independent over F_q, by rejection."""
    if t > ctx.m:
        raise ValueError(f"cannot draw {t} independent elements in a field of degree {ctx.m}")
    while True:
        a = ctx.random(rng, t)
        if independent_over_fq(ctx, a):
            return a


def random_full_rank(ctx, rows, cols, rng):
    if rows > cols:
        raise ValueError(f"no full-rank {rows} x {cols} matrix has full row rank")
    while True:
        B = rng.integers(0, ctx.q, size=(rows, cols))
        if rows == 0 or fq_rank(ctx, B) == rows:
            return B.astype(np.int64)


def random_rank_error(ctx, n, tau, rho, gamma, seed, overlap=False):
    """Random error with tau full errors, rho row and gamma column erasures.

    By default all tau + rho + gamma elements are drawn jointly independent and
    the stacked matrices jointly full rank, so ``rank(e) = tau + rho + gamma``.
    With ``overlap`` the three fragments are drawn separately and may share
    directions.
    """
    if min(tau, rho, gamma) < 0:
        raise ValueError("fragment ranks must be non-negative")
    t = tau + rho + gamma
    if t > n or t > ctx.m:
        raise ValueError(f"tau + rho + gamma = {t} exceeds min(n, m) = {min(n, ctx.m)}")
    rng = np.random.default_rng(seed)
    if overlap:
        parts = [(random_independent(ctx, w, rng), random_full_rank(ctx, w, n, rng))
                 for w in (tau, rho, gamma)]
    else:
        a = random_independent(ctx, t, rng)
        B = random_full_rank(ctx, t, n, rng)
        cut = [0, tau, tau + rho, t]
        parts = [(a[cut[i]:cut[i + 1]], B[cut[i]:cut[i + 1]]) for i in range(3)]
    (aE, BE), (aR, BR), (aC, BC) = parts
    e = ctx.add(ctx.add(combine(ctx, aE, BE), combine(ctx, aR, BR)), combine(ctx, aC, BC))
    return RankError(e, aE, BE, aR, BR, aC, BC)


def simulate_transmission(cp, f, tau, rho, gamma, seed, overlap=False):
    """``(r, side, truth)``: r = encode(f) + e, side holds only aR and BC."""
    ctx = cp.ctx
    err = random_rank_error(ctx, cp.n, tau, rho, gamma, seed, overlap=overlap)
    r = ctx.add(encode(cp, f), err.e)
    return r, ErasureSideInfo(err.aR.copy(), err.BC.copy()), err
