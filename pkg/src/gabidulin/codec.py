"""Gabidulin codes: encoding and error-and-erasure decoding.

A code of length n and dimension k over F_{q^m} evaluates linearized
polynomials of q-degree below k at n points independent over F_q.  The
decoder solves a key equation with the linearized extended Euclidean
algorithm.  Row and column erasures are supported when n = m and the points
are the normal basis.
"""

from dataclasses import dataclass, field

import numpy as np

from .field import FieldParams, FieldCtx, fq_rank, independent_over_fq, linalg
from .skewpoly import (SkewPoly, fast_left_div, fast_mul, fast_right_div, leea, sp_scale,
                       sp_shift, sp_sub)
from .subspace import interpolate, interpolation_plan, mpe, msp, q_reverse_full


@dataclass
class CodeParams:
    ctx: FieldCtx
    n: int
    k: int
    g: np.ndarray
    normal_basis: bool = False

    def __post_init__(self):
        m = self.ctx.m
        if self.n > m:
            raise ValueError(f"n = {self.n} exceeds m = {m}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k = {self.k}, n = {self.n}")
        self.g = np.asarray(self.g, dtype=self.ctx.dtype)
        if len(self.g) != self.n:
            raise ValueError("the number of evaluation points differs from n")
        if not independent_over_fq(self.ctx, self.g):
            raise ValueError("evaluation points are not independent over F_q")

    @classmethod
    def normal(cls, ctx, n, k):
        """Evaluation points beta^[0], ..., beta^[n-1]."""
        if n > ctx.m:
            raise ValueError(f"n = {n} exceeds m = {ctx.m}")
        return cls(ctx, n, k, ctx.normal_basis()[:n], normal_basis=True)

    @property
    def d(self):
        return self.n - self.k + 1

    def plan(self):
        """Interpolation plan for the evaluation points, built once."""
        cached = self.__dict__.get("_plan")
        if cached is None:
            cached = self.__dict__["_plan"] = interpolation_plan(self.ctx, self.g)
        return cached

    def points_msp(self):
        cached = self.__dict__.get("_msp")
        if cached is None:
            cached = self.__dict__["_msp"] = msp(self.ctx, self.g)
        return cached

    @property
    def supports_erasures(self):
        return self.normal_basis and self.n == self.ctx.m

    def to_dict(self):
        out = {"field": self.ctx.params.to_dict(), "n": self.n, "k": self.k}
        if self.normal_basis:
            out["g"] = "normal_basis"
        else:
            out["g"] = self.ctx.to_ints(self.g)
        return out

    @classmethod
    def from_dict(cls, d, ctx=None):
        if ctx is None:
            ctx = FieldCtx(FieldParams.from_dict(d["field"]))
        n, k = int(d["n"]), int(d["k"])
        g = d.get("g", "normal_basis")
        if g == "normal_basis" or d.get("normal_basis"):
            return cls.normal(ctx, n, k)
        return cls(ctx, n, k, ctx.elements(g))


@dataclass
class ErasureSideInfo:
    """Known column space ``aR`` of the row erasures and row space ``BC`` of the column erasures."""

    aR: np.ndarray
    BC: np.ndarray

    @classmethod
    def empty(cls, ctx, n):
        return cls(ctx.zeros(0), np.zeros((0, n), dtype=np.int64))

    @property
    def rho(self):
        return len(self.aR)

    @property
    def gamma(self):
        return len(self.BC)


@dataclass
class DecodeOutcome:
    f: SkewPoly = None
    trace: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.f is not None


def encode(cp, f):
    if f.degree >= cp.k:
        raise ValueError(f"deg f = {f.degree} is not below k = {cp.k}")
    return mpe(f, cp.g)


def frobenius_modulus(ctx):
    """x^[m] - x^[0], the MSP of the whole field."""
    return sp_sub(SkewPoly.monomial(ctx, ctx.m), SkewPoly.one(ctx))


def dual_normal_basis(ctx):
    """Coordinates (rows) of the trace-dual basis of the normal basis.

    Row j is the element b_j with Tr(b_j beta^[i]) = [i == j].
    """
    cached = getattr(ctx, "_dual_basis", None)
    if cached is not None:
        return cached
    F, m = ctx.base, ctx.m
    basis = ctx.normal_basis()
    # 1 has constant coordinates c, and Tr(alpha) = (sum of coordinates) / c
    c_inv = F.inv(ctx.coords(ctx.one())[0])
    coords = ctx.coords(ctx.arith.mul(np.broadcast_to(basis[0], basis.shape), basis))
    total = coords[:, 0]
    for i in range(1, m):
        total = F.add(total, coords[:, i])
    T = F.mul(total, c_inv)
    # Tr(beta^[i] beta^[j]) = T[j - i]
    G = T[(np.arange(m)[None, :] - np.arange(m)[:, None]) % m]
    dual = linalg.inverse(F, G)
    ctx._dual_basis = dual
    return dual


def column_erasure_points(ctx, BC, dual=True):
    """The elements d_i whose span the column-erasure polynomial must annihilate.

    Row i of BC is paired with a basis: with ``dual`` (the default) the
    trace-dual of the normal basis, which is what makes the reversed
    polynomial cancel ``aC BC``; with ``dual=False`` the normal basis itself.
    The two agree exactly when the normal basis is self-dual.
    """
    BC = np.asarray(BC, dtype=np.int64).reshape(-1, ctx.m)
    if len(BC) == 0:
        return ctx.zeros(0)
    coords = linalg.matmul(ctx.base, BC, dual_normal_basis(ctx)) if dual else BC
    return ctx.from_coords(coords)


def _mod_frobenius(a):
    # x^[m+j] = x^[j] modulo x^[m] - x^[0]
    if a.degree < a.ctx.m:
        return a
    return fast_right_div(a, frobenius_modulus(a.ctx))[1]


def _check_side(cp, side):
    ctx = cp.ctx
    if not cp.supports_erasures:
        raise ValueError("erasure decoding needs n = m and the normal basis as evaluation points")
    aR = np.asarray(side.aR, dtype=ctx.dtype).reshape((-1,) + ctx.elem_shape)
    BC = np.asarray(side.BC, dtype=np.int64)
    BC = BC.reshape(0, cp.n) if BC.size == 0 else BC
    if not independent_over_fq(ctx, aR):
        raise ValueError("aR is not independent over F_q")
    if BC.ndim != 2 or BC.shape[1] != cp.n:
        raise ValueError(f"BC must have n = {cp.n} columns")
    if np.any((BC < 0) | (BC >= ctx.q)):
        raise ValueError("BC entries must be F_q codes")
    if len(BC) and fq_rank(ctx, BC) != len(BC):
        raise ValueError("BC does not have full row rank")
    return aR, BC


def erasure_polynomials(cp, side, dual=True):
    """``(Lambda_R, Gamma_C, g_tilde)`` for the given side information."""
    ctx = cp.ctx
    aR, BC = _check_side(cp, side)
    gamma = len(BC)
    LR = msp(ctx, aR)
    GC = msp(ctx, column_erasure_points(ctx, BC, dual))
    gt = _mod_frobenius(sp_shift(q_reverse_full(GC, ctx.m), gamma))
    return LR, GC, gt


def decode_errors_erasures(cp, r, side=None, dual=True):
    """Decode τ errors, ρ row and γ column erasures whenever 2τ + ρ + γ <= n - k.

    Returns a :class:`DecodeOutcome`; ``outcome.f`` is None on failure.  The
    intermediate polynomials are kept in ``outcome.trace``.
    """
    ctx = cp.ctx
    if side is None:
        side = ErasureSideInfo.empty(ctx, cp.n)
    aR, BC = _check_side(cp, side)
    r = np.asarray(r, dtype=ctx.dtype)
    if len(r) != cp.n:
        raise ValueError(f"received word has length {len(r)}, expected {cp.n}")
    if len(aR) + len(BC) > cp.n - cp.k:
        # no error pattern with this side information lies within the radius
        return DecodeOutcome(None, {"rho": len(aR), "gamma": len(BC)})
    LR, GC, gt = erasure_polynomials(cp, side, dual)
    rho, gamma = LR.degree, GC.degree
    xm = frobenius_modulus(ctx)
    rbar = interpolate(ctx, cp.g, r, plan=cp.plan())
    ybar = _mod_frobenius(fast_mul(fast_mul(LR, rbar), gt))
    d_stop = (cp.n + cp.k + rho + gamma) // 2
    out = leea(ybar, xm, d_stop)
    trace = {"rbar": rbar, "Gamma_C": GC, "g_tilde": gt, "Lambda_R": LR, "ybar": ybar,
             "d_stop": d_stop}
    return _finish(cp, out, LR, gt, trace)


def decode_errors_only(cp, r):
    """Decode up to floor((n - k) / 2) rank errors for any evaluation points."""
    ctx = cp.ctx
    r = np.asarray(r, dtype=ctx.dtype)
    if len(r) != cp.n:
        raise ValueError(f"received word has length {len(r)}, expected {cp.n}")
    Mg = cp.points_msp()
    rbar = interpolate(ctx, cp.g, r, plan=cp.plan())
    d_stop = (cp.n + cp.k) // 2
    out = leea(rbar, Mg, d_stop)
    one = SkewPoly.one(ctx)
    trace = {"rbar": rbar, "modulus": Mg, "d_stop": d_stop}
    return _finish(cp, out, one, one, trace)


def _finish(cp, out, LR, gt, trace):
    u, rem = out.u, out.r
    if u.is_zero():
        return DecodeOutcome(None, trace)
    lc = cp.ctx.inv(u.lead())
    u, rem = sp_scale(lc, u), sp_scale(lc, rem)
    trace["Lambda_E"] = u
    trace["r_out"] = rem
    chi_l, rho_l = fast_left_div(rem, fast_mul(u, LR))
    chi_r, rho_r = fast_right_div(chi_l, gt)
    if not (rho_l.is_zero() and rho_r.is_zero()) or chi_r.degree >= cp.k:
        return DecodeOutcome(None, trace)
    return DecodeOutcome(chi_r, trace)


def decode(cp, r, side=None):
    """Erasure-capable decoder when the code allows it, errors-only otherwise."""
    if cp.supports_erasures:
        return decode_errors_erasures(cp, r, side)
    if side is not None and (side.rho or side.gamma):
        raise ValueError("erasure side information needs n = m and a normal basis")
    return decode_errors_only(cp, r)


def error_locator(cp, aE, LR):
    """M of the span of Lambda_R(aE): the locator the Euclidean step must find."""
    ctx = cp.ctx
    aE = np.asarray(aE, dtype=ctx.dtype).reshape((-1,) + ctx.elem_shape)
    return msp(ctx, mpe(LR, aE) if len(aE) else aE, strict=False)


def verify_key_equation(cp, f, side, r, aE, dual=True):
    """Check ``LE ybar = LE LR f g_tilde  mod x^[m] - x^[0]`` from ground truth."""
    ctx = cp.ctx
    LR, _, gt = erasure_polynomials(cp, side, dual)
    LE = error_locator(cp, aE, LR)
    rbar = interpolate(ctx, cp.g, np.asarray(r, dtype=ctx.dtype), plan=cp.plan())
    ybar = _mod_frobenius(fast_mul(fast_mul(LR, rbar), gt))
    lhs = _mod_frobenius(fast_mul(LE, ybar))
    rhs = _mod_frobenius(fast_mul(fast_mul(fast_mul(LE, LR), f), gt))
    return lhs == rhs
