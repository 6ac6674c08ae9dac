"""Compiled arithmetic for F_{2^m} in normal-basis coordinates.

An element is a row of ``W = ceil(m / 64)`` little-endian ``uint64`` words;
bit ``i`` is the coordinate of ``beta^(2^i)``.  Squaring (the Frobenius map)
is therefore a cyclic bit rotation.  Products go through the polynomial
basis: both operands are mapped with 4-bit window lookup tables, multiplied
carry-less, and the double-length product is mapped straight back to normal
coordinates by a second table that also performs the modular reduction.
"""

import math

import numpy as np
from numba import njit

from . import gf2x

_U64 = np.uint64


@njit(cache=True)
def _matvec(x, nbits, tab, out):
    # out = sum of rows i of the underlying matrix over the set bits i < nbits of x
    W = out.shape[0]
    for w in range(W):
        out[w] = 0
    nn = (nbits + 3) // 4
    for b in range(nn):
        v = (x[b >> 4] >> _U64(4 * (b & 15))) & _U64(15)
        if v:
            for w in range(W):
                out[w] ^= tab[b, v, w]


@njit(cache=True)
def _clmul(a, b, T, res):
    W = a.shape[0]
    for t in range(W + 1):
        T[0, t] = 0
    for t in range(W):
        T[1, t] = a[t]
    T[1, W] = 0
    for v in range(2, 16):
        if v & 1:
            for t in range(W + 1):
                T[v, t] = T[v - 1, t] ^ T[1, t]
        else:
            h = v >> 1
            T[v, 0] = T[h, 0] << _U64(1)
            for t in range(1, W + 1):
                T[v, t] = (T[h, t] << _U64(1)) | (T[h, t - 1] >> _U64(63))
    n = res.shape[0]
    for t in range(n):
        res[t] = 0
    for j in range(15, -1, -1):
        sh = _U64(4 * j)
        for w in range(W):
            v = (b[w] >> sh) & _U64(15)
            if v:
                for t in range(W + 1):
                    res[w + t] ^= T[v, t]
        if j > 0:
            for t in range(n - 1, 0, -1):
                res[t] = (res[t] << _U64(4)) | (res[t - 1] >> _U64(60))
            res[0] = res[0] << _U64(4)


@njit(cache=True)
def _is_zero(a):
    for w in range(a.shape[0]):
        if a[w]:
            return False
    return True


@njit(cache=True)
def _mul_one(a, b, m, tn2p, tout, ap, bp, T, res, out):
    if _is_zero(a) or _is_zero(b):
        for w in range(out.shape[0]):
            out[w] = 0
        return
    _matvec(a, m, tn2p, ap)
    _matvec(b, m, tn2p, bp)
    _clmul(ap, bp, T, res)
    _matvec(res, 2 * m - 1, tout, out)


@njit(cache=True)
def mul_batch(X, Y, m, tn2p, tout):
    N, W = X.shape
    out = np.empty((N, W), dtype=np.uint64)
    ap = np.empty(W, dtype=np.uint64)
    bp = np.empty(W, dtype=np.uint64)
    T = np.empty((16, W + 1), dtype=np.uint64)
    res = np.empty(2 * W + 1, dtype=np.uint64)
    for i in range(N):
        _mul_one(X[i], Y[i], m, tn2p, tout, ap, bp, T, res, out[i])
    return out


@njit(cache=True)
def scale_batch(c, Y, m, tn2p, tout):
    """``c * Y[i]`` for a single element ``c``; ``c`` is mapped to the polynomial basis once."""
    N, W = Y.shape
    out = np.zeros((N, W), dtype=np.uint64)
    if _is_zero(c):
        return out
    cp = np.empty(W, dtype=np.uint64)
    bp = np.empty(W, dtype=np.uint64)
    T = np.empty((16, W + 1), dtype=np.uint64)
    res = np.empty(2 * W + 1, dtype=np.uint64)
    _matvec(c, m, tn2p, cp)
    for i in range(N):
        if _is_zero(Y[i]):
            continue
        _matvec(Y[i], m, tn2p, bp)
        _clmul(cp, bp, T, res)
        _matvec(res, 2 * m - 1, tout, out[i])
    return out


@njit(cache=True)
def _rot_one(x, k, m, top_mask, out):
    # out = x rotated toward higher bit indices by k (0 <= k < m)
    W = x.shape[0]
    for w in range(W):
        out[w] = 0
    if k == 0:
        for w in range(W):
            out[w] = x[w]
        return
    # left shift by k, truncated to m bits
    ws = k >> 6
    bs = k & 63
    for w in range(W - 1, ws - 1, -1):
        v = x[w - ws] << _U64(bs)
        if bs and w - ws - 1 >= 0:
            v |= x[w - ws - 1] >> _U64(64 - bs)
        out[w] = v
    out[W - 1] &= top_mask
    # or in the right shift by m - k
    r = m - k
    ws = r >> 6
    bs = r & 63
    for w in range(0, W - ws):
        v = x[w + ws] >> _U64(bs)
        if bs and w + ws + 1 < W:
            v |= x[w + ws + 1] << _U64(64 - bs)
        out[w] |= v


@njit(cache=True)
def rot_batch(X, shifts, m, top_mask):
    N, W = X.shape
    out = np.empty((N, W), dtype=np.uint64)
    for i in range(N):
        k = shifts[i] % m
        if k < 0:
            k += m
        _rot_one(X[i], k, m, top_mask, out[i])
    return out


@njit(cache=True)
def inv_batch(X, m, top_mask, tn2p, tout):
    # Itoh-Tsujii: x^-1 = (x^(2^(m-1) - 1))^2, built along the binary expansion of m-1
    N, W = X.shape
    out = np.empty((N, W), dtype=np.uint64)
    ap = np.empty(W, dtype=np.uint64)
    bp = np.empty(W, dtype=np.uint64)
    T = np.empty((16, W + 1), dtype=np.uint64)
    res = np.empty(2 * W + 1, dtype=np.uint64)
    acc = np.empty(W, dtype=np.uint64)
    tmp = np.empty(W, dtype=np.uint64)
    tmp2 = np.empty(W, dtype=np.uint64)
    n = m - 1
    nbits = 0
    while (n >> nbits) > 0:
        nbits += 1
    for i in range(N):
        x = X[i]
        if m == 1:
            for w in range(W):
                out[i, w] = x[w]
            continue
        # acc = x^(2^j - 1) with j the running prefix of n's bits
        for w in range(W):
            acc[w] = x[w]
        j = 1
        for bit in range(nbits - 2, -1, -1):
            _rot_one(acc, j % m, m, top_mask, tmp)
            _mul_one(tmp, acc, m, tn2p, tout, ap, bp, T, res, tmp2)
            j *= 2
            for w in range(W):
                acc[w] = tmp2[w]
            if (n >> bit) & 1:
                _rot_one(acc, 1, m, top_mask, tmp)
                _mul_one(tmp, x, m, tn2p, tout, ap, bp, T, res, tmp2)
                j += 1
                for w in range(W):
                    acc[w] = tmp2[w]
        _rot_one(acc, 1, m, top_mask, out[i])
    return out


# table construction (plain Python / numpy, run once per field)

def ints_to_words(values, W):
    out = np.zeros((len(values), W), dtype=np.uint64)
    for i, v in enumerate(values):
        out[i] = np.frombuffer(int(v).to_bytes(8 * W, "little"), dtype="<u8")
    return out


def words_to_ints(arr):
    arr = np.ascontiguousarray(arr, dtype="<u8")
    flat = arr.reshape(-1, arr.shape[-1])
    return [int.from_bytes(row.tobytes(), "little") for row in flat]


def nibble_tables(rows, W):
    """Lookup tables for ``v -> XOR of rows[i] over set bits i of v``, one per 4-bit window."""
    nrows = rows.shape[0]
    nn = (nrows + 3) // 4
    padded = np.zeros((nn * 4, W), dtype=np.uint64)
    padded[:nrows] = rows
    padded = padded.reshape(nn, 4, W)
    tab = np.zeros((nn, 16, W), dtype=np.uint64)
    for v in range(1, 16):
        low = (v & -v).bit_length() - 1
        tab[:, v] = tab[:, v & (v - 1)] ^ padded[:, low]
    return tab


def _gf2_rank_rows(rows):
    rows = list(rows)
    rank = 0
    pivots = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank


def _gf2_inverse_rows(rows, m):
    # rows[i] is an m-bit int; returns inv rows with (sum_i v_i rows[i]) inverted
    aug = [rows[i] | (1 << (m + i)) for i in range(m)]
    low = (1 << m) - 1
    for c in range(m):
        bit = 1 << c
        piv = next((k for k in range(c, m) if aug[k] & bit), None)
        if piv is None:
            raise ValueError("singular change-of-basis matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        pr = aug[c]
        for k in range(m):
            if k != c and aug[k] & bit:
                aug[k] ^= pr
    return [(aug[i] >> m) for i in range(m)], [aug[i] & low for i in range(m)]


class BinaryTables:
    """Precomputed F_{2^m} data: modulus, normal element and conversion tables."""

    def __init__(self, m, modulus, beta_poly):
        self.m = m
        self.W = (m + 63) // 64
        self.top_mask = np.uint64((1 << (m % 64)) - 1) if m % 64 else np.uint64(0xFFFFFFFFFFFFFFFF)
        self.modulus = modulus
        conj = [gf2x.mod(beta_poly, modulus)]
        for _ in range(m - 1):
            conj.append(gf2x.sqrmod(conj[-1], modulus))
        if _gf2_rank_rows(conj) != m:
            raise ValueError("element does not generate a normal basis")
        self.beta_poly = conj[0]
        # n2p: normal coords -> poly coords. Row i of the matrix is conj[i].
        # p2n: inverse; row j = normal coords of x^j.
        inv_rows, _ = _gf2_inverse_rows(conj, m)
        # inv_rows[i] = combination c with sum_k c_k conj[k] = e_i, i.e. normal coords of x^i
        W = self.W
        self.n2p_rows = ints_to_words(conj, W)
        self.p2n_rows = ints_to_words(inv_rows, W)
        self.tn2p = nibble_tables(self.n2p_rows, W)
        tp2n = nibble_tables(self.p2n_rows, W)
        powers = []
        x = 1
        for _ in range(2 * m - 1):
            powers.append(x)
            x <<= 1
            if x >> m & 1:
                x ^= modulus
        pw = ints_to_words(powers, W)
        out_rows = np.empty_like(pw)
        for i in range(pw.shape[0]):
            _matvec(pw[i], m, tp2n, out_rows[i])
        self.tout = nibble_tables(out_rows, W)


def is_normal(beta_poly, modulus, m):
    conj = [gf2x.mod(beta_poly, modulus)]
    for _ in range(m - 1):
        conj.append(gf2x.sqrmod(conj[-1], modulus))
    return _gf2_rank_rows(conj) == m


class BinaryArith:
    """Array interface over :class:`BinaryTables`; same surface as ``GenericArith``."""

    def __init__(self, m, modulus, beta_poly):
        self.t = BinaryTables(m, modulus, beta_poly)
        self.m = m
        self.W = self.t.W
        self.modulus = modulus
        self.beta_poly = self.t.beta_poly
        self.elem_shape = (self.W,)
        self.dtype = np.uint64

    def _flat(self, X):
        return np.ascontiguousarray(X, dtype=np.uint64).reshape(-1, self.W)

    def mul(self, X, Y):
        X = np.asarray(X, dtype=np.uint64)
        Y = np.asarray(Y, dtype=np.uint64)
        t = self.t
        if X.ndim == 1 and Y.ndim > 1:
            out = scale_batch(X, self._flat(Y), t.m, t.tn2p, t.tout)
            return out.reshape(Y.shape)
        if Y.ndim == 1 and X.ndim > 1:
            out = scale_batch(Y, self._flat(X), t.m, t.tn2p, t.tout)
            return out.reshape(X.shape)
        X, Y = np.broadcast_arrays(X, Y)
        shape = X.shape
        return mul_batch(self._flat(X), self._flat(Y), t.m, t.tn2p, t.tout).reshape(shape)

    def frob(self, X, k):
        X = np.asarray(X, dtype=np.uint64)
        lead = X.shape[:-1]
        if np.ndim(k) == 0:
            k = np.full(math.prod(lead), int(k), dtype=np.int64)
        else:
            k = np.ascontiguousarray(np.broadcast_to(np.asarray(k, dtype=np.int64), lead)).reshape(-1)
        return rot_batch(self._flat(X), k, self.m, self.t.top_mask).reshape(X.shape)

    def inv(self, X):
        X = np.asarray(X, dtype=np.uint64)
        flat = self._flat(X)
        if np.any(~flat.any(axis=1)):
            raise ZeroDivisionError("inverse of zero in F_{2^m}")
        t = self.t
        return inv_batch(flat, t.m, t.top_mask, t.tn2p, t.tout).reshape(X.shape)

    def one(self):
        # 1 = sum of all normal-basis vectors when m is odd, in general solve via p2n row 0
        return self.t.p2n_rows[0].copy()

    def add(self, X, Y):
        return np.bitwise_xor(X, Y)

    sub = add

    def sum(self, X, axis):
        return np.bitwise_xor.reduce(np.asarray(X, dtype=np.uint64), axis=axis)

    def neg(self, X):
        return np.asarray(X, dtype=np.uint64)

    def coords(self, X):
        X = np.ascontiguousarray(X, dtype="<u8")
        bits = np.unpackbits(X.view(np.uint8).reshape(X.shape[:-1] + (8 * self.W,)),
                             axis=-1, bitorder="little")
        return bits[..., :self.m].astype(np.int64)

    def from_coords(self, C):
        C = np.asarray(C, dtype=np.uint8)
        pad = np.zeros(C.shape[:-1] + (64 * self.W,), dtype=np.uint8)
        pad[..., :self.m] = C
        packed = np.packbits(pad, axis=-1, bitorder="little")
        return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)

    def to_poly_coords(self, X):
        flat = self._flat(X)
        out = np.empty_like(flat)
        for i in range(flat.shape[0]):
            _matvec(flat[i], self.m, self.t.tn2p, out[i])
        return out

    def to_ints(self, X):
        return words_to_ints(self._flat(X))

    def from_ints(self, values):
        for v in values:
            if not 0 <= int(v) < (1 << self.m):
                raise ValueError(f"{v} is not an element code of F_(2^{self.m})")
        return ints_to_words(values, self.W)
