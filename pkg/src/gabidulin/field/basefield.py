"""The base field F_q, q = p**e, with table-driven arithmetic.

Elements are integer codes in ``range(q)``: the base-p digits of a code are
the coefficients (low degree first) of its polynomial over F_p modulo the
base modulus.  All arithmetic methods accept numpy arrays and broadcast.
"""

import numpy as np

MAX_Q = 1 << 16


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# polynomials over F_p as coefficient lists, low degree first, no trailing zeros

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, f, p):
    a = list(a)
    inv_lead = pow(f[-1], p - 2, p)
    df = len(f) - 1
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
    return a


def _fp_mulmod(a, b, f, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                r[i + j] = (r[i + j] + ai * bj) % p
    return _fp_mod(r, f, p)


def _fp_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_is_irreducible(f, p):
    d = len(f) - 1
    if d == 1:
        return True
    h = [0, 1]
    for _ in range(d // 2):
        h = _fp_powmod(h, p, f, p)
        g = list(h) + [0] * max(0, 2 - len(h))
        g[1] = (g[1] - 1) % p
        if len(_fp_gcd(f, _trim(g), p)) != 1:
            return False
    return True


def _fp_powmod(a, e, f, p):
    r = [1]
    while e:
        if e & 1:
            r = _fp_mulmod(r, a, f, p)
        e >>= 1
        if e:
            a = _fp_mulmod(a, a, f, p)
    return r


def random_fp_irreducible(p, d, rng):
    """Random monic irreducible polynomial of degree ``d`` over F_p."""
    if d == 1:
        return [0, 1]
    while True:
        f = [int(c) for c in rng.integers(0, p, size=d)] + [1]
        if f[0] and _fp_is_irreducible(f, p):
            return f


class BaseField:
    """F_q given by a prime ``p``, degree ``e`` and a monic F_p-irreducible modulus."""

    def __init__(self, p, e, modulus):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("base modulus must be monic of degree e")
        if e > 1 and not _fp_is_irreducible(list(modulus), p):
            raise ValueError("base modulus is reducible over F_p")
        self.p = p
        self.e = e
        self.q = p**e
        if self.q > MAX_Q:
            raise ValueError(f"q={self.q} exceeds the supported maximum {MAX_Q}")
        self.modulus = [int(c) for c in modulus]
        self._build_tables()

    def _code_to_poly(self, c):
        out = []
        for _ in range(self.e):
            out.append(c % self.p)
            c //= self.p
        return _trim(out)

    def _poly_to_code(self, a):
        c = 0
        for coef in reversed(a):
            c = c * self.p + coef
        return c

    def _slow_mul(self, x, y):
        if self.e == 1:
            return x * y % self.p
        prod = _fp_mulmod(self._code_to_poly(x), self._code_to_poly(y), self.modulus, self.p)
        return self._poly_to_code(prod)

    def _build_tables(self):
        q, p = self.q, self.p
        order = q - 1
        factors = prime_factors(order) if order > 1 else []
        gen = None
        for g in range(1, q):
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                gen = g
                break
        self.generator = gen
        exp = np.zeros(2 * order + 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        exp[order:2 * order] = exp[:order]
        self.exp = exp
        self.log = log
        # digit weights for the carry-free addition of base-p digit vectors
        self._weights = p ** np.arange(self.e, dtype=np.int64)

    def _slow_pow(self, g, n):
        r = 1
        while n:
            if n & 1:
                r = self._slow_mul(r, g)
            g = self._slow_mul(g, g)
            n >>= 1
        return r

    # vectorized arithmetic on code arrays

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.e == 1:
            return (a + b) % self.p
        a, b = np.asarray(a), np.asarray(b)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._weights:
            out += ((a // w + b // w) % self.p) * w
        return out

    def reduce_sum(self, a, axis):
        """Sum of the F_q entries of ``a`` along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.e == 1:
            return a.sum(axis=axis) % self.p
        out = 0
        for w in self._weights:
            out = out + ((a // w) % self.p).sum(axis=axis) % self.p * w
        return np.asarray(out, dtype=np.int64)

    def neg(self, a):
        if self.p == 2:
            return np.asarray(a)
        if self.e == 1:
            return (-np.asarray(a)) % self.p
        a = np.asarray(a)
        out = np.zeros(a.shape, dtype=np.int64)
        for w in self._weights:
            out += ((-(a // w)) % self.p) * w
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return np.asarray(a) * np.asarray(b) % self.p
        a, b = np.asarray(a), np.asarray(b)
        r = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def pow(self, a, n):
        a = np.asarray(a)
        if self.q == 2:
            return a if n else np.ones_like(a)
        r = self.exp[(self.log[a] * n) % (self.q - 1)]
        return np.where(a == 0, 0 if n else 1, r)
