"""Skew polynomials over F_{q^m} and fast arithmetic on them.

A :class:`SkewPoly` lives in F_{q^m}[x; sigma] with sigma = Frob^aut, so that
``x * c = sigma(c) * x``.  ``aut = 1`` is the ring of linearized polynomials,
where ``sum a_i x^i`` stands for the map ``alpha -> sum a_i alpha^(q^i)``.
Reversal moves a polynomial into the opposite ring ``aut = -aut``.

The zero polynomial has degree -1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .matmul import STRASSEN_CUTOFF, strassen_cost, strassen_matmul

# fast multiplication falls back to the naive rule below this degree
NAIVE_MUL_BELOW = 16


class SkewPoly:
    """Coefficient array ``coeffs[i]`` of x^i, trailing zeros trimmed."""

    __slots__ = ("ctx", "coeffs", "aut")

    def __init__(self, ctx, coeffs, aut=1):
        self.ctx = ctx
        self.aut = int(aut)
        c = np.asarray(coeffs, dtype=ctx.dtype)
        if c.ndim == len(ctx.elem_shape):
            c = c[None]
        nz = np.nonzero(c.reshape(c.shape[0], -1).any(axis=1))[0] if c.size else []
        nz = np.asarray(nz)
        self.coeffs = c[:nz[-1] + 1] if nz.size else c[:0]

    # constructors

    @classmethod
    def zero(cls, ctx, aut=1):
        return cls(ctx, ctx.zeros(0), aut)

    @classmethod
    def one(cls, ctx, aut=1):
        return cls(ctx, ctx.one()[None], aut)

    @classmethod
    def monomial(cls, ctx, i, c=None, aut=1):
        coeffs = ctx.zeros(i + 1)
        coeffs[i] = ctx.one() if c is None else c
        return cls(ctx, coeffs, aut)

    @classmethod
    def from_ints(cls, ctx, values, aut=1):
        return cls(ctx, ctx.elements(values), aut)

    @classmethod
    def from_terms(cls, ctx, terms, aut=1):
        """From the text form ``[[exponent, element_int], ...]``."""
        terms = [(int(e), int(v)) for e, v in terms]
        if any(e < 0 for e, _ in terms):
            raise ValueError("negative exponent")
        deg = max((e for e, _ in terms), default=-1)
        coeffs = ctx.zeros(deg + 1)
        for e, v in terms:
            coeffs[e] = ctx.add(coeffs[e], ctx.element(v))
        return cls(ctx, coeffs, aut)

    @classmethod
    def random(cls, ctx, deg, rng, aut=1, monic=False):
        coeffs = ctx.random(rng, deg + 1)
        if deg >= 0:
            coeffs[deg] = ctx.one() if monic else ctx.random(rng, nonzero=True)
        return cls(ctx, coeffs, aut)

    # views

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self):
        return len(self.coeffs) == 0

    def lead(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return not self.is_zero() and self.ctx.equal(self.lead(), self.ctx.one())

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zeros()

    def padded(self, n):
        """First ``n`` coefficients, zero padded."""
        out = self.ctx.zeros(n)
        k = min(n, len(self.coeffs))
        out[:k] = self.coeffs[:k]
        return out

    def truncate(self, n):
        """Remainder modulo x^n."""
        return SkewPoly(self.ctx, self.coeffs[:n], self.aut)

    def to_ints(self):
        return self.ctx.to_ints(self.coeffs) if len(self.coeffs) else []

    def to_terms(self):
        return [[i, v] for i, v in enumerate(self.to_ints()) if v]

    def __repr__(self):
        return f"SkewPoly(deg={self.degree}, aut={self.aut}, {self.to_terms()})"

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.aut == other.aut and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    # operators

    def __add__(self, other):
        return sp_add(self, other)

    def __sub__(self, other):
        return sp_sub(self, other)

    def __neg__(self):
        return SkewPoly(self.ctx, self.ctx.neg(self.coeffs), self.aut)

    def __mul__(self, other):
        return fast_mul(self, other)

    def __call__(self, alpha):
        return sp_eval(self, alpha)


def _same_ring(a, b):
    if a.ctx is not b.ctx:
        raise ValueError("polynomials over different fields")
    if a.aut != b.aut:
        raise ValueError(f"polynomials in different rings (aut {a.aut} vs {b.aut})")


def sp_add(a, b):
    _same_ring(a, b)
    n = max(len(a), len(b))
    if len(a) == len(b):
        return SkewPoly(a.ctx, a.ctx.add(a.coeffs, b.coeffs), a.aut)
    return SkewPoly(a.ctx, a.ctx.add(a.padded(n), b.padded(n)), a.aut)


def sp_sub(a, b):
    _same_ring(a, b)
    n = max(len(a), len(b))
    return SkewPoly(a.ctx, a.ctx.sub(a.padded(n), b.padded(n)), a.aut)


def sp_scale(c, a):
    """Left scalar multiple ``c * a``."""
    if a.is_zero():
        return a
    return SkewPoly(a.ctx, a.ctx.mul(c, a.coeffs), a.aut)


def sp_shift(a, k):
    """``a * x^k``."""
    if a.is_zero():
        return a
    return SkewPoly(a.ctx, np.concatenate([a.ctx.zeros(k), a.coeffs]), a.aut)


def sp_eval(a, alpha):
    """Evaluate a linearized polynomial at one element or an array of elements."""
    if a.aut != 1:
        raise ValueError("evaluation needs a linearized polynomial (aut = 1)")
    ctx = a.ctx
    alpha = np.asarray(alpha, dtype=ctx.dtype)
    single = alpha.ndim == len(ctx.elem_shape)
    pts = alpha[None] if single else alpha
    if a.is_zero() or len(pts) == 0:
        out = ctx.zeros(len(pts))
    else:
        d = len(a)
        grid = np.broadcast_to(pts[:, None], (len(pts), d) + ctx.elem_shape)
        powers = ctx.frob(grid, np.broadcast_to(np.arange(d), (len(pts), d)))
        out = ctx.sum(ctx.mul(powers, a.coeffs[None]), axis=1)
    return out[0] if single else out


# multiplication

def naive_mul(a, b):
    """Product by the defining rule ``c_k = sum_i a_i sigma^i(b_(k-i))``."""
    _same_ring(a, b)
    ctx, s = a.ctx, a.aut
    if a.is_zero() or b.is_zero():
        return SkewPoly.zero(ctx, s)
    la, lb = len(a), len(b)
    out = ctx.zeros(la + lb - 1)
    if la <= lb:
        for i in range(la):
            term = ctx.mul(a.coeffs[i], ctx.frob(b.coeffs, s * i))
            out[i:i + lb] = ctx.add(out[i:i + lb], term)
    else:
        shifts = s * np.arange(la)
        for j in range(lb):
            twisted = ctx.frob(np.broadcast_to(b.coeffs[j], a.coeffs.shape), shifts)
            out[j:j + la] = ctx.add(out[j:j + la], ctx.mul(a.coeffs, twisted))
    return SkewPoly(ctx, out, s)


def fast_mul(a, b, naive_below=NAIVE_MUL_BELOW, cutoff=STRASSEN_CUTOFF):
    """Product via fragmentation into one square-by-rectangular matrix product.

    The first t^2 coefficients of ``a`` are cut into t fragments of t.  Row i
    of A holds fragment i untwisted by sigma^(-i t), and row j of B holds
    ``sigma^j(b)`` shifted by j; then fragment i of the product is read off
    row i of A*B twisted back by sigma^(i t).  Coefficients of ``a`` beyond
    t^2 are multiplied directly.  t is taken near sqrt(len(a)) to minimize
    the counted multiplications.
    """
    _same_ring(a, b)
    ctx, s_aut = a.ctx, a.aut
    if a.is_zero() or b.is_zero():
        return SkewPoly.zero(ctx, s_aut)
    if max(a.degree, b.degree) < naive_below or min(a.degree, b.degree) == 0:
        return naive_mul(a, b)
    la, lb = len(a), len(b)
    t0 = math.isqrt(la)

    def cost(t):
        return -(-(lb + t - 1) // t) * strassen_cost(t, cutoff) + max(la - t * t, 0) * lb

    t = min(range(max(t0, 1), 2 * t0 + 2), key=cost)
    E = ctx.elem_shape
    # A[i, j] = sigma^(-i t)(a_(i t + j))
    A = a.truncate(t * t).padded(t * t).reshape((t, t) + E)
    A = ctx.frob(A, np.broadcast_to((-s_aut * t * np.arange(t))[:, None], (t, t)))
    # B[j, j + u] = sigma^j(b_u)
    rows = ctx.frob(np.broadcast_to(b.coeffs[None], (t, lb) + E),
                    np.broadcast_to((s_aut * np.arange(t))[:, None], (t, lb)))
    width = lb + t - 1
    B = ctx.zeros((t, width))
    for j in range(t):
        B[j, j:j + lb] = rows[j]
    C = strassen_matmul(ctx, A, B, cutoff)
    C = ctx.frob(C, np.broadcast_to((s_aut * t * np.arange(t))[:, None], (t, width)))
    out = ctx.zeros(la + lb - 1 + t * t)
    for i in range(t):
        lo = i * t
        out[lo:lo + width] = ctx.add(out[lo:lo + width], C[i])
    if la > t * t:
        # (h x^(t^2)) b = h sigma^(t^2)(b) x^(t^2)
        h = SkewPoly(ctx, a.coeffs[t * t:], s_aut)
        b_tw = SkewPoly(ctx, ctx.frob(b.coeffs, s_aut * t * t), s_aut)
        hb = naive_mul(h, b_tw).coeffs
        out[t * t:t * t + len(hb)] = ctx.add(out[t * t:t * t + len(hb)], hb)
    # only the true product degree can be nonzero
    out = out[:la + lb - 1]
    return SkewPoly(ctx, out, s_aut)


def mul_trunc(a, b, n, **kw):
    """``a * b`` modulo x^n, inputs truncated first."""
    return fast_mul(a.truncate(n), b.truncate(n), **kw).truncate(n)


# reversal and inverses

def reversal_tau(a, s):
    """``x^s * a(x^-1)`` in the opposite ring: coefficient i is ``a_(s - i)``."""
    if a.degree > s:
        raise ValueError(f"degree {a.degree} exceeds the reversal length {s}")
    return SkewPoly(a.ctx, a.padded(s + 1)[::-1], -a.aut)


def newton_right_inverse(c, k, trace=None):
    """The inverse of ``c`` modulo x^k by Newton iteration.

    Runs ceil(log2 k) steps ``h <- 2h - h c h mod x^(2^i)``.  Each step is
    computed as ``h - h e`` with ``e = c h - 1``, which vanishes below the old
    precision, so the second product only needs half-length operands.  The
    result is a two-sided inverse modulo x^k.  If ``trace`` is a list, each
    iterate is appended to it.
    """
    ctx = c.ctx
    if k < 1:
        raise ValueError("k must be positive")
    if c.is_zero() or ctx.is_zero(c.coeffs[0]):
        raise ZeroDivisionError("constant coefficient is zero")
    h = SkewPoly(ctx, ctx.inv(c.coeffs[0])[None], c.aut)
    half = 1
    while half < k:
        prec = 2 * half
        ch = mul_trunc(c, h, prec)
        # e = ch - 1 = e_hi * x^half
        e_hi = SkewPoly(ctx, ch.coeffs[half:], c.aut)
        corr = mul_trunc(h, e_hi, half)
        h = sp_sub(h, sp_shift(corr, half))
        half = prec
        if trace is not None:
            trace.append(h)
    return h.truncate(k)


def newton_iterations(k):
    return max(0, math.ceil(math.log2(k))) if k > 1 else 0


# division

def _divisor_check(a, b):
    _same_ring(a, b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")


def naive_right_div(a, b):
    """``(chi, rho)`` with ``a = chi * b + rho``, deg rho < deg b, by long division."""
    _divisor_check(a, b)
    ctx, s = a.ctx, a.aut
    l = b.degree
    if a.degree < l:
        return SkewPoly.zero(ctx, s), a
    r = a.coeffs.copy()
    d = a.degree - l
    chi = ctx.zeros(d + 1)
    shifts = s * np.arange(d + 1)
    lead_tw = ctx.inv(ctx.frob(np.broadcast_to(b.lead(), (d + 1,) + ctx.elem_shape), shifts))
    for t in range(d, -1, -1):
        top = r[t + l]
        if ctx.is_zero(top):
            continue
        q = ctx.mul(top, lead_tw[t])
        chi[t] = q
        r[t:t + l + 1] = ctx.sub(r[t:t + l + 1], ctx.mul(q, ctx.frob(b.coeffs, s * t)))
    return SkewPoly(ctx, chi, s), SkewPoly(ctx, r[:l], s)


def naive_left_div(a, b):
    """``(chi, rho)`` with ``a = b * chi + rho``, deg rho < deg b, by long division."""
    _divisor_check(a, b)
    ctx, s = a.ctx, a.aut
    l = b.degree
    if a.degree < l:
        return SkewPoly.zero(ctx, s), a
    r = a.coeffs.copy()
    d = a.degree - l
    chi = ctx.zeros(d + 1)
    inv_lead = ctx.inv(b.lead())
    shifts = s * np.arange(l + 1)
    for t in range(d, -1, -1):
        top = r[t + l]
        if ctx.is_zero(top):
            continue
        # b_l sigma^l(chi_t) = top
        q = ctx.frob(ctx.mul(inv_lead, top), -s * l)
        chi[t] = q
        col = ctx.frob(np.broadcast_to(q, b.coeffs.shape), shifts)
        r[t:t + l + 1] = ctx.sub(r[t:t + l + 1], ctx.mul(b.coeffs, col))
    return SkewPoly(ctx, chi, s), SkewPoly(ctx, r[:l], s)


def _scalar_divisor(a, b, right):
    ctx, s = a.ctx, a.aut
    b0 = b.coeffs[0]
    if right:
        # chi_i sigma^i(b0) = a_i
        tw = ctx.frob(np.broadcast_to(b0, a.coeffs.shape), s * np.arange(len(a)))
        chi = ctx.mul(a.coeffs, ctx.inv(tw))
    else:
        chi = ctx.mul(ctx.inv(b0), a.coeffs)
    return SkewPoly(ctx, chi, s), SkewPoly.zero(ctx, s)


def fast_right_div(a, b, **kw):
    """Right division ``a = chi * b + rho`` through reversal and a Newton inverse.

    With s = deg a, l = deg b, d = s - l the reversed identity
    ``tau_s(a) = tau_d(chi) * tau_l(sigma^d(b)) mod x^(d+1)`` holds in the
    opposite ring, so ``chi`` is recovered from one truncated product with the
    inverse of ``tau_l(sigma^d(b))``.
    """
    _divisor_check(a, b)
    ctx, s_aut = a.ctx, a.aut
    s, l = a.degree, b.degree
    if s < l:
        return SkewPoly.zero(ctx, s_aut), a
    if l == 0:
        return _scalar_divisor(a, b, right=True)
    d = s - l
    b_tw = SkewPoly(ctx, ctx.frob(b.coeffs, s_aut * d), s_aut)
    c = reversal_tau(b_tw, l)
    at = reversal_tau(a, s)
    cinv = newton_right_inverse(c.truncate(d + 1), d + 1)
    X = mul_trunc(at, cinv, d + 1, **kw)
    chi = reversal_tau(X, d)
    rho = sp_sub(a, fast_mul(chi, b, **kw))
    return chi, rho.truncate(l)


def fast_left_div(a, b, **kw):
    """Left division ``a = b * chi + rho``.

    Here ``tau_s(a) = tau_l(b) * tau_d(sigma^l(chi)) mod x^(d+1)``, so the
    inverse multiplies from the left and the quotient is untwisted by sigma^-l.
    """
    _divisor_check(a, b)
    ctx, s_aut = a.ctx, a.aut
    s, l = a.degree, b.degree
    if s < l:
        return SkewPoly.zero(ctx, s_aut), a
    if l == 0:
        return _scalar_divisor(a, b, right=False)
    d = s - l
    c = reversal_tau(b, l)
    at = reversal_tau(a, s)
    cinv = newton_right_inverse(c.truncate(d + 1), d + 1)
    X = mul_trunc(cinv, at, d + 1, **kw)
    chi_l = reversal_tau(X, d)
    chi = SkewPoly(ctx, ctx.frob(chi_l.coeffs, -s_aut * l), s_aut)
    rho = sp_sub(a, fast_mul(b, chi, **kw))
    return chi, rho.truncate(l)


def sp_mod(a, b):
    """Right remainder of ``a`` modulo ``b``."""
    return fast_right_div(a, b)[1]


# extended Euclid

@dataclass
class EeaOutput:
    """Final remainder ``r = u * a + v * b`` of the Euclidean algorithm."""

    r: SkewPoly
    u: SkewPoly
    v: SkewPoly


def leea(a, b, d_stop):
    """Left extended Euclid on right divisions, stopped at the first deg r < d_stop.

    Keeps ``r_i = u_i * a + v_i * b`` starting from ``(a, 1, 0)`` and
    ``(b, 0, 1)``.
    """
    _same_ring(a, b)
    if d_stop < 1:
        raise ValueError("d_stop must be at least 1")
    ctx, s = a.ctx, a.aut
    one, zero = SkewPoly.one(ctx, s), SkewPoly.zero(ctx, s)
    r0, u0, v0 = a, one, zero
    r1, u1, v1 = b, zero, one
    if r0.degree < d_stop:
        return EeaOutput(r0, u0, v0)
    while r1.degree >= d_stop:
        chi, r2 = fast_right_div(r0, r1)
        u2 = sp_sub(u0, fast_mul(chi, u1))
        v2 = sp_sub(v0, fast_mul(chi, v1))
        r0, u0, v0 = r1, u1, v1
        r1, u1, v1 = r2, u2, v2
    return EeaOutput(r1, u1, v1)
