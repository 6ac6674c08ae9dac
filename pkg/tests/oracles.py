"""Independent reference arithmetic used by the tests.

``PolyBasisField`` works in the polynomial basis F_q[z]/(f) with F_q itself
as F_p[w]/(g), straight from the field parameters, and never touches the
package's normal-basis code.  Elements are passed in and out as (N, m)
arrays of F_q codes sum_i c_i p^i; internally each F_q entry is unpacked
into its e digits over F_p and all arithmetic is plain integer work mod p,
vectorized over the leading axis.  That is enough for exhaustive checks of
every field with up to a few thousand elements.
"""

import numpy as np


class PolyBasisField:
    def __init__(self, params):
        self.p, self.e, self.m = params.p, params.e, params.m
        self.q = self.p**self.e
        self.g = np.array(params.base_modulus, dtype=np.int64)
        self.f = np.array(params.ext_modulus, dtype=np.int64)
        self.beta = self._digits(params.beta, self.m)
        self._conj = None

    # F_q codes <-> F_p digits

    def _digits(self, X, n):
        """Base-q digits of the integers X, as an array with a trailing axis of length n."""
        X = np.asarray(X, dtype=np.int64)
        return np.stack([(X // self.q**i) % self.q for i in range(n)], axis=-1)

    def unpack(self, A):
        A = np.asarray(A, dtype=np.int64)
        return np.stack([(A // self.p**i) % self.p for i in range(self.e)], axis=-1)

    def to_codes(self, D):
        return (D * self.p ** np.arange(self.e)).sum(axis=-1)

    # F_q on digit arrays (..., e)

    def _fq_mul(self, x, y):
        p, e = self.p, self.e
        lead = np.broadcast_shapes(x.shape[:-1], y.shape[:-1])
        prod = np.zeros(lead + (2 * e - 1,), dtype=np.int64)
        for i in range(e):
            prod[..., i:i + e] += x[..., i:i + 1] * y
        prod %= p
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[..., k:k + 1]
            prod[..., k - e:k + 1] = (prod[..., k - e:k + 1] - c * self.g) % p
        return prod[..., :e]

    # F_(q^m) on digit arrays (..., m, e)

    def _mul(self, X, Y):
        p, m = self.p, self.m
        prod = np.zeros(X.shape[:-2] + (2 * m - 1, self.e), dtype=np.int64)
        for i in range(m):
            prod[..., i:i + m, :] += self._fq_mul(X[..., i:i + 1, :], Y)
        prod %= p
        fd = self.unpack(self.f)
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[..., k:k + 1, :]
            prod[..., k - m:k + 1, :] = (prod[..., k - m:k + 1, :] - self._fq_mul(c, fd)) % p
        return prod[..., :m, :]

    # public interface on (N, m) code arrays

    def add(self, A, B):
        return self.to_codes((self.unpack(A) + self.unpack(B)) % self.p)

    def mul(self, A, B):
        A, B = np.broadcast_arrays(np.atleast_2d(A), np.atleast_2d(B))
        return self.to_codes(self._mul(self.unpack(A), self.unpack(B)))

    def one(self, N=1):
        out = np.zeros((N, self.m), dtype=np.int64)
        out[:, 0] = 1
        return out

    def pow(self, A, n):
        X = self.unpack(np.atleast_2d(A))
        result = self.unpack(self.one(X.shape[0]))
        while n:
            if n & 1:
                result = self._mul(result, X)
            n >>= 1
            if n:
                X = self._mul(X, X)
        return self.to_codes(result)

    def conjugates(self):
        """``beta^(q^i)`` for i < m, rows in the polynomial basis."""
        if self._conj is None:
            rows = [self.beta[None]]
            for _ in range(self.m - 1):
                rows.append(self.pow(rows[-1], self.q))
            self._conj = np.concatenate(rows)
        return self._conj

    def from_normal(self, C):
        """Polynomial-basis form of the elements with normal-basis coordinates C."""
        C = np.atleast_2d(C)
        conj = self.unpack(self.conjugates())
        D = self.unpack(C)
        out = np.zeros((C.shape[0], self.m, self.e), dtype=np.int64)
        for i in range(self.m):
            out = (out + self._fq_mul(D[:, i:i + 1, :], conj[i][None])) % self.p
        return self.to_codes(out)


def all_coords(q, m):
    """Every coordinate vector of F_q^m, as a (q^m, m) array."""
    idx = np.arange(q**m)
    return np.stack([(idx // q**i) % q for i in range(m)], axis=1)
