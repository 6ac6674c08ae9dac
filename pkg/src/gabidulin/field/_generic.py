"""Vectorized F_{q^m} arithmetic for arbitrary q (numpy, no compilation).

Elements are arrays of shape ``(..., m)`` holding F_q codes: the normal-basis
coordinates.  This path is meant for small fields; binary fields of any size
normally use :mod:`gabidulin.field._binary`.
"""

import numpy as np

from . import linalg


# polynomials over F_q: lists of int codes, low degree first, no trailing zeros

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(F, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([int(v) for v in F.add(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))])


def _mod(F, a, f):
    a = list(a)
    df = len(f) - 1
    inv_lead = int(F.inv(f[-1]))
    while len(_trim(a)) - 1 >= df:
        c = int(F.mul(a[-1], inv_lead))
        shift = len(a) - 1 - df
        seg = np.array(a[shift:], dtype=np.int64)
        seg = F.sub(seg, F.mul(c, np.array(f, dtype=np.int64)))
        a[shift:] = [int(v) for v in seg]
    return a


def _mul(F, a, b):
    if not a or not b:
        return []
    r = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    bb = np.array(b, dtype=np.int64)
    for i, ai in enumerate(a):
        if ai:
            r[i:i + len(b)] = F.add(r[i:i + len(b)], F.mul(ai, bb))
    return _trim([int(v) for v in r])


def mulmod(F, a, b, f):
    return _mod(F, _mul(F, a, b), f)


def powmod(F, a, e, f):
    r = [1]
    a = _mod(F, a, f)
    while e:
        if e & 1:
            r = mulmod(F, r, a, f)
        e >>= 1
        if e:
            a = mulmod(F, a, a, f)
    return r


def _gcd(F, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _mod(F, a, b)
    return a


def is_irreducible(F, f):
    d = len(f) - 1
    if d == 1:
        return True
    if f[0] == 0:
        return False
    h = [0, 1]
    for _ in range(d // 2):
        h = powmod(F, h, F.q, f)
        g = _add(F, h, [0, int(F.neg(1))])
        if len(_gcd(F, f, g)) != 1:
            return False
    return True


def random_irreducible(F, d, rng):
    if d == 1:
        return [0, 1]
    while True:
        f = [int(c) for c in rng.integers(0, F.q, size=d)] + [1]
        if is_irreducible(F, f):
            return f


def conjugates(F, beta, f, m):
    out = [_mod(F, beta, f)]
    for _ in range(m - 1):
        out.append(powmod(F, out[-1], F.q, f))
    return out


def _dense(a, m):
    v = np.zeros(m, dtype=np.int64)
    v[:len(a)] = a
    return v


# largest intermediate array (in entries) for the loop-free products
_VECTOR_LIMIT = 1 << 20


class GenericArith:
    """F_{q^m} over a :class:`BaseField` with a normal basis given by ``beta``."""

    def __init__(self, F, m, modulus, beta_poly):
        self.F = F
        self.m = m
        self.modulus = [int(c) for c in modulus]
        conj = conjugates(F, list(beta_poly), self.modulus, m)
        N2P = np.array([_dense(c, m) for c in conj], dtype=np.int64)
        if linalg.rank(F, N2P) != m:
            raise ValueError("element does not generate a normal basis")
        self.beta_poly = conj[0]
        self.n2p = N2P
        self.p2n = linalg.inverse(F, N2P)
        self.elem_shape = (m,)
        self.dtype = np.int64
        # x^j mod f for j < 2m - 1, as poly coordinates
        red = np.zeros((2 * m - 1, m), dtype=np.int64)
        for j in range(2 * m - 1):
            red[j] = _dense(_mod(F, [0] * j + [1], self.modulus), m)
        self._red_normal = linalg.matmul(F, red, self.p2n)
        self._rows, self._cols = np.divmod(np.arange(m * m), m)
        self._cols = (self._rows + self._cols).reshape(m, m)
        self._rows = self._rows.reshape(m, m)

    def _change(self, X, M):
        F = self.F
        if F.e == 1:
            return (X @ M) % F.p
        if X.size * M.shape[1] <= _VECTOR_LIMIT:
            return F.reduce_sum(F.mul(X[..., :, None], M), axis=-2)
        out = np.zeros(X.shape[:-1] + (M.shape[1],), dtype=np.int64)
        for i in range(M.shape[0]):
            out = F.add(out, F.mul(X[..., i:i + 1], M[i]))
        return out

    def mul(self, X, Y):
        F, m = self.F, self.m
        X, Y = np.broadcast_arrays(np.asarray(X, dtype=np.int64), np.asarray(Y, dtype=np.int64))
        shape = X.shape
        X = X.reshape(-1, m)
        Y = Y.reshape(-1, m)
        Xp = self._change(X, self.n2p)
        Yp = self._change(Y, self.n2p)
        if X.size * 2 * m <= _VECTOR_LIMIT:
            # schoolbook in one shot: row i of the outer product lands at offset i
            shifted = np.zeros((X.shape[0], m, 2 * m - 1), dtype=np.int64)
            shifted[:, self._rows, self._cols] = F.mul(Xp[:, :, None], Yp[:, None, :])
            prod = F.reduce_sum(shifted, axis=1)
        else:
            prod = np.zeros((X.shape[0], 2 * m - 1), dtype=np.int64)
            for i in range(m):
                prod[:, i:i + m] = F.add(prod[:, i:i + m], F.mul(Xp[:, i:i + 1], Yp))
        return self._change(prod, self._red_normal).reshape(shape)

    def frob(self, X, k):
        X = np.asarray(X)
        k = np.asarray(k) % self.m
        if k.ndim == 0:
            return np.roll(X, int(k), axis=-1)
        idx = (np.arange(self.m) - k[..., None]) % self.m
        idx = np.broadcast_to(idx, X.shape)
        return np.take_along_axis(X, idx, axis=-1)

    def inv(self, X):
        X = np.asarray(X, dtype=np.int64)
        if np.any(np.all(X == 0, axis=-1)):
            raise ZeroDivisionError("inverse of zero in F_{q^m}")
        # Itoh-Tsujii: x^-1 = x^(r-1) / N(x) with r = (q^m - 1) / (q - 1), where
        # x^(r-1) = x^(q + ... + q^(m-1)) comes from Frobenius shifts and the norm lies in F_q
        F, m = self.F, self.m
        b, k = X, 1  # b = x^(1 + q + ... + q^(k-1))
        for bit in bin(m - 1)[3:]:
            b, k = self.mul(b, self.frob(b, k)), 2 * k
            if bit == "1":
                b, k = self.mul(X, self.frob(b, 1)), k + 1
        rest = self.frob(b, 1) if m > 1 else np.broadcast_to(self.one(), X.shape).copy()
        norm = self.mul(X, rest)[..., 0]
        scale = F.mul(F.inv(norm), self.one()[0])
        return F.mul(rest, scale[..., None])

    def one(self):
        return self._change(_dense([1], self.m)[None, :], self.p2n)[0]

    def add(self, X, Y):
        return self.F.add(X, Y)

    def sub(self, X, Y):
        return self.F.sub(X, Y)

    def sum(self, X, axis):
        X = np.moveaxis(np.asarray(X, dtype=np.int64), axis, 0)
        if self.F.e == 1:
            return X.sum(axis=0) % self.F.p
        out = X[0]
        for row in X[1:]:
            out = self.F.add(out, row)
        return out

    def neg(self, X):
        return self.F.neg(X)

    def coords(self, X):
        return np.asarray(X, dtype=np.int64)

    def from_coords(self, C):
        return np.asarray(C, dtype=np.int64)

    def to_poly_coords(self, X):
        return self._change(np.atleast_2d(X), self.n2p)

    def from_poly_coords(self, P):
        return self._change(np.atleast_2d(np.asarray(P, dtype=np.int64)), self.p2n)

    def to_ints(self, X):
        X = np.asarray(X, dtype=np.int64).reshape(-1, self.m)
        q = self.F.q
        return [sum(int(c) * q**i for i, c in enumerate(row)) for row in X]

    def from_ints(self, values):
        q, m = self.F.q, self.m
        out = np.zeros((len(values), m), dtype=np.int64)
        for r, v in enumerate(values):
            v = int(v)
            if not 0 <= v < q**m:
                raise ValueError(f"{v} is not an element code of F_(q^m)")
            for i in range(m):
                out[r, i] = v % q
                v //= q
        return out
