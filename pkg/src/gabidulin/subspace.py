"""Subspace polynomials, multi-point evaluation and interpolation.

MSPs and interpolation polynomials are divide and conquer over halves of the
point list and drop to incremental methods below :data:`CUTOFF` points.
Evaluation at many points is one matrix product: the polynomial is cut into
about sqrt(deg) fragments, which meet the first few Frobenius powers of every
point in a Strassen product.  The remainder-tree evaluation is kept as
:func:`mpe_tree`.  Points are ``(s,) + elem_shape`` arrays.
"""

import math
from dataclasses import dataclass

import numpy as np

from .field import independent_over_fq
from .matmul import STRASSEN_CUTOFF, strassen_cost, strassen_matmul
from .skewpoly import SkewPoly, fast_mul, fast_right_div, sp_add, sp_eval, sp_scale

CUTOFF = 8


class LinearDependenceError(ValueError):
    """Points that must be independent over F_q are not."""


@dataclass
class SubspaceBasis:
    ctx: object
    elems: np.ndarray

    def __len__(self):
        return len(self.elems)

    def is_independent(self):
        return independent_over_fq(self.ctx, self.elems)


@dataclass
class PointSet:
    ctx: object
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ValueError("xs and ys differ in length")

    def __len__(self):
        return len(self.xs)


def _points(ctx, U):
    if isinstance(U, SubspaceBasis):
        U = U.elems
    return np.asarray(U, dtype=ctx.dtype).reshape((-1,) + ctx.elem_shape)


def _times_linear(M, v):
    """``(x - v^(q-1)) * M`` for ``v = M(u)``, the step that adds u to the kernel."""
    ctx = M.ctx
    c = ctx.pow_q_minus_1(v)
    shifted = np.concatenate([ctx.zeros(1), ctx.frob(M.coeffs, 1)])
    shifted[:-1] = ctx.sub(shifted[:-1], ctx.mul(c, M.coeffs))
    return SkewPoly(ctx, shifted, 1)


def msp_incremental(ctx, U, strict=True):
    """MSP built one point at a time: ``M <- (x^[1] - M(u)^(q-1) x^[0]) * M``."""
    M = SkewPoly.one(ctx)
    for u in _points(ctx, U):
        v = sp_eval(M, u)
        if ctx.is_zero(v):
            if strict:
                raise LinearDependenceError("points are linearly dependent over F_q")
            continue
        M = _times_linear(M, v)
    return M


def msp(ctx, U, strict=True):
    """Minimal subspace polynomial of the span of ``U``.

    Uses ``M_U = M_<M_A(B)> * M_A`` for the halves A, B of U.  With
    ``strict`` a dependent list raises :class:`LinearDependenceError`;
    otherwise the MSP of the span is returned, with degree equal to its
    dimension.
    """
    U = _points(ctx, U)
    if len(U) < CUTOFF:
        return msp_incremental(ctx, U, strict)
    h = len(U) // 2
    MA = msp(ctx, U[:h], strict)
    MB = msp(ctx, mpe(MA, U[h:]), strict)
    return fast_mul(MB, MA)


def _fragment_size(d, N, t0, cutoff):
    # t fragments of t coefficients, the rest evaluated directly; minimize the counted products
    def cost(t):
        return -(-N // t) * strassen_cost(t, cutoff) + max(d - t * t, 0) * N
    return min(range(t0, 2 * t0 + 2), key=cost)


def mpe(a, U, cutoff=STRASSEN_CUTOFF):
    """``[a(u) for u in U]`` for any list of points.

    With t fragments of t coefficients, ``A[i, j] = sigma^(-i t)(a_(i t + j))`` and
    ``V[j, u] = u^[j]``, the value ``a(u)`` is ``sum_i sigma^(i t)((A V)[i, u])``
    plus the direct evaluation of the coefficients beyond t^2.  Among t near
    sqrt(len(a)) the one with the fewest counted multiplications is used.
    """
    ctx = a.ctx
    if a.aut != 1:
        raise ValueError("evaluation needs a linearized polynomial (aut = 1)")
    U = _points(ctx, U)
    d, N = len(a), len(U)
    t0 = math.isqrt(d)
    if t0 <= cutoff or N < CUTOFF:
        return sp_eval(a, U)
    t = _fragment_size(d, N, t0, cutoff)
    # coefficients beyond t^2 (the lead of a monic MSP, say) are evaluated directly
    tail = SkewPoly(ctx, a.coeffs[t * t:], 1)
    extra = None
    if not tail.is_zero():
        powers = ctx.frob(np.broadcast_to(U[:, None], (N, len(tail)) + ctx.elem_shape),
                          t * t + np.arange(len(tail))[None, :].repeat(N, axis=0))
        extra = ctx.sum(ctx.mul(powers, tail.coeffs[None]), axis=1)
    A = a.truncate(t * t).padded(t * t).reshape((t, t) + ctx.elem_shape)
    A = ctx.frob(A, np.repeat(-t * np.arange(t), t).reshape(t, t))
    V = ctx.frob(np.broadcast_to(U[None], (t, N) + ctx.elem_shape),
                 np.repeat(np.arange(t), N).reshape(t, N))
    C = strassen_matmul(ctx, A, V, cutoff)
    C = ctx.frob(C, np.repeat(t * np.arange(t), N).reshape(t, N))
    out = ctx.sum(C, axis=0)
    return out if extra is None else ctx.add(out, extra)


class SubspaceTree:
    """Binary split of a point list with the MSP of every node.

    Leaves hold fewer than :data:`CUTOFF` points.
    """

    __slots__ = ("points", "M", "left", "right")

    def __init__(self, points, M, left=None, right=None):
        self.points, self.M, self.left, self.right = points, M, left, right

    @property
    def is_leaf(self):
        return self.left is None


def subspace_tree(ctx, U, strict=True):
    """Build the tree bottom up; a parent joins its halves A, B as ``M_<M_A(B)> * M_A``."""
    U = _points(ctx, U)
    if len(U) < CUTOFF:
        return SubspaceTree(U, msp_incremental(ctx, U, strict))
    h = len(U) // 2
    left = subspace_tree(ctx, U[:h], strict)
    right = subspace_tree(ctx, U[h:], strict)
    M = fast_mul(msp(ctx, mpe(left.M, right.points), strict), left.M)
    return SubspaceTree(U, M, left, right)


def tree_eval(a, tree):
    """``a`` at every point of ``tree``, by remainders modulo the MSPs of the halves."""
    # a(u) = (a mod M_A)(u) for u in A, since the quotient times M_A vanishes there
    if tree.is_leaf or a.degree < 1:
        return sp_eval(a, tree.points)
    rA = fast_right_div(a, tree.left.M)[1]
    rB = fast_right_div(a, tree.right.M)[1]
    return np.concatenate([tree_eval(rA, tree.left), tree_eval(rB, tree.right)])


def mpe_tree(a, U):
    """Evaluation through the remainder tree of U; same result as :func:`mpe`."""
    ctx = a.ctx
    if a.aut != 1:
        raise ValueError("evaluation needs a linearized polynomial (aut = 1)")
    U = _points(ctx, U)
    if len(U) < CUTOFF:
        return sp_eval(a, U)
    tree = subspace_tree(ctx, U, strict=False)
    if a.degree > len(U):
        a = fast_right_div(a, tree.M)[1]
    return tree_eval(a, tree)


def interpolate_incremental(ctx, xs, ys):
    """Newton-form interpolation, one point at a time."""
    xs, ys = _points(ctx, xs), _points(ctx, ys)
    I = SkewPoly.zero(ctx)
    M = SkewPoly.one(ctx)
    for x, y in zip(xs, ys):
        mx = sp_eval(M, x)
        if ctx.is_zero(mx):
            raise LinearDependenceError("abscissas are linearly dependent over F_q")
        c = ctx.div(ctx.sub(y, sp_eval(I, x)), mx)
        I = sp_add(I, sp_scale(c, M))
        M = _times_linear(M, mx)
    return I


class InterpolationPlan:
    """The part of :func:`interpolate` that depends on the abscissas only.

    A leaf stores the Newton basis ``M_i`` (the MSP of the first i points)
    and ``1 / M_i(x_i)``; an inner node stores the MSPs of its halves and
    the plans for the twisted abscissas.
    """

    __slots__ = ("n", "xs", "basis", "inv_mx", "h", "MA", "MB", "left", "right")

    def __init__(self, n):
        self.n = n
        self.xs = self.basis = self.inv_mx = self.MA = self.MB = self.left = self.right = None
        self.h = 0

    def __len__(self):
        return self.n


def interpolation_plan(ctx, xs):
    xs = _points(ctx, xs)
    plan = InterpolationPlan(len(xs))
    if len(xs) < CUTOFF:
        M, basis, mxs = SkewPoly.one(ctx), [], []
        for x in xs:
            mx = sp_eval(M, x)
            if ctx.is_zero(mx):
                raise LinearDependenceError("abscissas are linearly dependent over F_q")
            basis.append(M)
            mxs.append(mx)
            M = _times_linear(M, mx)
        plan.basis = basis
        plan.inv_mx = ctx.inv(np.asarray(mxs)) if mxs else ctx.zeros(0)
        plan.xs = xs
        return plan
    h = len(xs) // 2
    plan.h = h
    plan.MA, plan.MB = msp(ctx, xs[:h]), msp(ctx, xs[h:])
    plan.left = interpolation_plan(ctx, mpe(plan.MB, xs[:h]))
    plan.right = interpolation_plan(ctx, mpe(plan.MA, xs[h:]))
    return plan


def _run_plan(ctx, plan, ys):
    if plan.left is None:
        I = SkewPoly.zero(ctx)
        for M, x, w, y in zip(plan.basis, plan.xs, plan.inv_mx, ys):
            c = ctx.mul(ctx.sub(y, sp_eval(I, x)), w)
            I = sp_add(I, sp_scale(c, M))
        return I
    IA = _run_plan(ctx, plan.left, ys[:plan.h])
    IB = _run_plan(ctx, plan.right, ys[plan.h:])
    return sp_add(fast_mul(IA, plan.MB), fast_mul(IB, plan.MA))


def interpolate(ctx, xs, ys=None, plan=None):
    """The unique ``I`` with deg I < s and ``I(x_i) = y_i``.

    Accepts a :class:`PointSet` or two arrays.  The halves are combined as
    ``I = I_A' * M_B + I_B' * M_A`` where ``I_A'`` interpolates ``y`` at the
    twisted abscissas ``M_B(x)`` for x in A, and symmetrically for B.  A
    ``plan`` from :func:`interpolation_plan` for the same ``xs`` skips the
    work that does not involve ``ys``.
    """
    if isinstance(xs, PointSet):
        xs, ys = xs.xs, xs.ys
    ys = _points(ctx, ys)
    if plan is None:
        plan = interpolation_plan(ctx, xs)
    if len(plan) != len(ys):
        raise ValueError("xs and ys differ in length")
    return _run_plan(ctx, plan, ys)


def q_reverse_full(G, m):
    """``Gbar_i = (G_(-i mod m))^[i]`` for i < m, the adjoint under the trace form."""
    ctx = G.ctx
    if G.aut != 1:
        raise ValueError("the full q-reverse needs a linearized polynomial")
    if G.degree >= m:
        raise ValueError(f"degree {G.degree} is not below m = {m}")
    src = G.padded(m)[(-np.arange(m)) % m]
    return SkewPoly(ctx, ctx.frob(src, np.arange(m)), 1)
