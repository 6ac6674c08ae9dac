"""Binary polynomials packed into Python integers.

Bit ``i`` of the integer is the coefficient of ``x**i``.  These helpers are
used while constructing binary extension fields; the hot arithmetic lives in
the compiled kernels of :mod:`gabidulin.field._binary`.
"""

import numpy as np

# _SPREAD[b] has the bits of byte b moved to the even positions of a 16-bit word
_SPREAD = np.zeros(256, dtype="<u2")
for _b in range(256):
    _v = 0
    for _t in range(8):
        if _b >> _t & 1:
            _v |= 1 << (2 * _t)
    _SPREAD[_b] = _v
del _b, _v, _t


def degree(a):
    return a.bit_length() - 1


def mul(a, b):
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def square(a):
    if a == 0:
        return 0
    raw = a.to_bytes((a.bit_length() + 7) // 8, "little")
    spread = _SPREAD[np.frombuffer(raw, dtype=np.uint8)]
    return int.from_bytes(spread.tobytes(), "little")


def mod(a, f):
    df = f.bit_length() - 1
    da = a.bit_length() - 1
    while da >= df:
        a ^= f << (da - df)
        da = a.bit_length() - 1
    return a


def mulmod(a, b, f):
    return mod(mul(a, b), f)


def sqrmod(a, f):
    return mod(square(a), f)


def gcd(a, b):
    while b:
        a, b = b, mod(a, b)
    return a


def powmod(a, e, f):
    r = 1
    a = mod(a, f)
    while e:
        if e & 1:
            r = mulmod(r, a, f)
        e >>= 1
        if e:
            a = sqrmod(a, f)
    return r


def is_irreducible(f):
    """Ben-Or test; cheap early exit on polynomials with a small factor."""
    d = degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    if not f & 1:
        return False
    h = 2  # x
    for _ in range(d // 2):
        h = sqrmod(h, f)
        if gcd(f, h ^ 2) != 1:
            return False
    return True


def random_irreducible(d, rng):
    """Random monic irreducible of degree ``d`` drawn from ``rng``."""
    if d == 1:
        return 0b10  # x
    while True:
        low = int(rng.integers(0, 1 << 62)) if d <= 62 else _random_bits(d, rng)
        f = (1 << d) | (low & ((1 << d) - 1)) | 1
        if is_irreducible(f):
            return f


def _random_bits(nbits, rng):
    nbytes = (nbits + 7) // 8
    return int.from_bytes(rng.bytes(nbytes), "little") & ((1 << nbits) - 1)
