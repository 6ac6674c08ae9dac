"""Field contexts for F_{q^m} in a normal basis, with operation counters."""

import contextlib
import math
import json
import threading
from dataclasses import dataclass, field, fields

import numpy as np

from . import _binary, _generic, gf2x, linalg
from .basefield import BaseField, is_prime, random_fp_irreducible

NORMAL_SEARCH_BUDGET = 10_000


@dataclass(frozen=True)
class FieldParams:
    """Defining data of F_{q^m}.

    ``base_modulus`` has F_p coefficients, ``ext_modulus`` has F_q codes, both
    low degree first and monic.  ``beta`` is the normal element written in the
    polynomial basis of ``ext_modulus`` and serialized base q.
    """

    p: int
    e: int
    m: int
    base_modulus: tuple
    ext_modulus: tuple
    beta: int

    @property
    def q(self):
        return self.p**self.e

    def to_dict(self):
        return {
            "p": self.p,
            "e": self.e,
            "m": self.m,
            "base_modulus": list(self.base_modulus),
            "ext_modulus": list(self.ext_modulus),
            "beta": self.beta,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["p"]), int(d["e"]), int(d["m"]),
                   tuple(int(c) for c in d["base_modulus"]),
                   tuple(int(c) for c in d["ext_modulus"]), int(d["beta"]))


@dataclass
class OpCounts:
    """Tally of F_{q^m} operations."""

    mul: int = 0
    inv: int = 0
    add: int = 0
    frob: int = 0

    def copy(self):
        return OpCounts(self.mul, self.inv, self.add, self.frob)

    def __sub__(self, other):
        return OpCounts(*(getattr(self, f.name) - getattr(other, f.name) for f in fields(self)))

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class _Measurement:
    counts: OpCounts = field(default_factory=OpCounts)


class FieldCtx:
    """Arithmetic context of F_{q^m} over F_q with a fixed normal basis.

    Elements are numpy arrays whose last axis holds the element representation
    (``ctx.elem_shape``); all arithmetic broadcasts over the leading axes and
    counts one operation per element produced.  Use :meth:`element` and
    :meth:`to_int` to move between arrays and the integer serialization.

    Counter updates are guarded by a lock, so one context can be shared by
    threads; per-thread accounting needs separate contexts.
    """

    def __init__(self, params, backend="auto"):
        self.params = params
        p, e, m = params.p, params.e, params.m
        self.p, self.e, self.m = p, e, m
        self.base = BaseField(p, e, list(params.base_modulus))
        self.q = self.base.q
        if backend == "auto":
            backend = "binary" if self.q == 2 else "generic"
        if backend == "binary" and self.q != 2:
            raise ValueError("the binary backend needs q = 2")
        self.backend = backend
        beta_digits = _digits(params.beta, self.q, m)
        if backend == "binary":
            modulus = sum(int(c) << i for i, c in enumerate(params.ext_modulus))
            if not gf2x.is_irreducible(modulus) or gf2x.degree(modulus) != m:
                raise ValueError("extension modulus is not irreducible of degree m")
            beta_poly = sum(int(c) << i for i, c in enumerate(beta_digits))
            self.arith = _binary.BinaryArith(m, modulus, beta_poly)
        else:
            ext = [int(c) for c in params.ext_modulus]
            if len(ext) != m + 1 or ext[-1] != 1 or not _generic.is_irreducible(self.base, ext):
                raise ValueError("extension modulus is not monic irreducible of degree m")
            self.arith = _generic.GenericArith(self.base, m, ext, _generic._trim(list(beta_digits)))
        self.elem_shape = self.arith.elem_shape
        self.dtype = self.arith.dtype
        self.counters = OpCounts()
        self._lock = threading.Lock()
        self._one = self.arith.one()

    def __repr__(self):
        return f"FieldCtx(q={self.q}, m={self.m}, backend={self.backend!r})"

    # counting

    def _count(self, name, X):
        n = math.prod(np.shape(X)[:-1])
        with self._lock:
            setattr(self.counters, name, getattr(self.counters, name) + n)

    @contextlib.contextmanager
    def measure(self):
        """Context manager yielding a record whose ``counts`` holds the counter delta."""
        rec = _Measurement()
        with self._lock:
            start = self.counters.copy()
        try:
            yield rec
        finally:
            with self._lock:
                rec.counts = self.counters.copy() - start

    def reset_counters(self):
        with self._lock:
            self.counters = OpCounts()

    # arithmetic

    def add(self, a, b):
        out = self.arith.add(a, b)
        self._count("add", out)
        return out

    def sub(self, a, b):
        out = self.arith.sub(a, b)
        self._count("add", out)
        return out

    def neg(self, a):
        return self.arith.neg(a)

    def mul(self, a, b):
        out = self.arith.mul(a, b)
        self._count("mul", out)
        return out

    def inv(self, a):
        out = self.arith.inv(a)
        self._count("inv", out)
        return out

    def frob(self, a, i):
        """``a ** (q ** i)`` elementwise; ``i`` may be negative or an array of exponents."""
        out = self.arith.frob(a, i)
        self._count("frob", out)
        return out

    def sum(self, X, axis=0):
        """Sum along ``axis``; counts one addition per summand beyond the first."""
        X = np.asarray(X)
        axis = axis % (X.ndim - 1)
        n = X.shape[axis]
        if n == 0:
            shape = X.shape[:axis] + X.shape[axis + 1:]
            return np.zeros(shape, dtype=self.dtype)
        out = self.arith.sum(X, axis)
        with self._lock:
            self.counters.add += (n - 1) * int(np.prod(out.shape[:-1], dtype=np.int64))
        return out

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_q_minus_1(self, a):
        """``a ** (q - 1)``, the coefficient of the one-dimensional subspace polynomial."""
        if self.q == 2:
            return np.array(a, dtype=self.dtype, copy=True)
        return self.mul(self.frob(a, 1), self.inv(a))

    # construction helpers

    def zeros(self, n=None):
        if n is None:
            lead = ()
        elif isinstance(n, tuple):
            lead = n
        else:
            lead = (n,)
        return np.zeros(lead + self.elem_shape, dtype=self.dtype)

    def one(self):
        return self._one.copy()

    def is_zero(self, a):
        return ~np.asarray(a).any(axis=-1)

    def equal(self, a, b):
        return np.array_equal(np.asarray(a), np.asarray(b))

    def element(self, value):
        return self.arith.from_ints([value])[0]

    def elements(self, values):
        values = list(values)
        if not values:
            return np.zeros((0,) + self.elem_shape, dtype=self.dtype)
        return self.arith.from_ints(values)

    def to_int(self, a):
        return self.arith.to_ints(np.asarray(a)[None, ...])[0]

    def to_ints(self, a):
        return self.arith.to_ints(a)

    def coords(self, a):
        """Normal-basis coordinates over F_q, shape ``(..., m)``."""
        return self.arith.coords(a)

    def from_coords(self, c):
        return self.arith.from_coords(c)

    def normal_basis(self):
        """``beta^[0], ..., beta^[m-1]`` as an ``(m, ...)`` array."""
        return self.from_coords(np.eye(self.m, dtype=np.int64))

    def random(self, rng, n=None, nonzero=False):
        shape = () if n is None else (n,) if np.isscalar(n) else tuple(n)
        coords = rng.integers(0, self.q, size=shape + (self.m,))
        if nonzero:
            flat = coords.reshape(-1, self.m)
            dead = ~flat.any(axis=1)
            while dead.any():
                flat[dead] = rng.integers(0, self.q, size=(int(dead.sum()), self.m))
                dead = ~flat.any(axis=1)
            coords = flat.reshape(shape + (self.m,))
        return self.from_coords(coords)

    # serialization

    def to_json(self):
        return json.dumps(self.params.to_dict())

    @classmethod
    def from_json(cls, text, backend="auto"):
        return cls(FieldParams.from_dict(json.loads(text)), backend=backend)


def _digits(value, q, n):
    out = []
    for _ in range(n):
        out.append(value % q)
        value //= q
    if value:
        raise ValueError("value does not fit in n base-q digits")
    return out


def build_field(p, e, m, seed=0, backend="auto"):
    """Construct F_{q^m}, q = p**e, with random irreducible moduli and a normal element.

    Everything is drawn from ``numpy.random.default_rng(seed)``, so the result
    is a deterministic function of the arguments.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if e < 1 or m < 1:
        raise ValueError("e and m must be positive")
    rng = np.random.default_rng(seed)
    base_mod = [0, 1] if e == 1 else random_fp_irreducible(p, e, rng)
    F = BaseField(p, e, base_mod)
    q = F.q
    if q == 2:
        f = gf2x.random_irreducible(m, rng)
        ext = [(f >> i) & 1 for i in range(m + 1)]
    else:
        ext = _generic.random_irreducible(F, m, rng)
    for _ in range(NORMAL_SEARCH_BUDGET):
        digits = [int(c) for c in rng.integers(0, q, size=m)]
        if not any(digits):
            continue
        if _is_normal(F, ext, digits, m):
            beta = sum(d * q**i for i, d in enumerate(digits))
            params = FieldParams(p, e, m, tuple(base_mod), tuple(ext), beta)
            return FieldCtx(params, backend=backend)
    raise RuntimeError("no normal element found within the search budget")


def _is_normal(F, ext, digits, m):
    if F.q == 2:
        f = sum(c << i for i, c in enumerate(ext))
        return _binary.is_normal(sum(c << i for i, c in enumerate(digits)), f, m)
    conj = _generic.conjugates(F, _generic._trim(list(digits)), ext, m)
    mat = np.array([_generic._dense(c, m) for c in conj], dtype=np.int64)
    return linalg.rank(F, mat) == m


# functional surface

def fe_add(ctx, a, b):
    _check(ctx, a, b)
    return ctx.add(a, b)


def fe_mul(ctx, a, b):
    _check(ctx, a, b)
    return ctx.mul(a, b)


def fe_inv(ctx, a):
    _check(ctx, a)
    return ctx.inv(a)


def fe_frob(ctx, a, i):
    _check(ctx, a)
    return ctx.frob(a, i)


def _check(ctx, *elems):
    for a in elems:
        if np.shape(a)[-1:] != ctx.elem_shape:
            raise ValueError(f"element shape {np.shape(a)} does not match the field {ctx}")


def fq_rank(ctx, M):
    return linalg.rank(ctx.base, M)


def fq_rref(ctx, M):
    return linalg.rref(ctx.base, M)


def ext_matrix(ctx, elems):
    """F_q matrix whose column j holds the coordinates of ``elems[j]``."""
    elems = np.asarray(elems)
    if elems.shape[0] == 0:
        return np.zeros((ctx.m, 0), dtype=np.int64)
    return np.ascontiguousarray(ctx.coords(elems).T)


def independent_over_fq(ctx, elems):
    elems = np.asarray(elems)
    n = elems.shape[0]
    if n == 0:
        return True
    if n > ctx.m:
        return False
    return fq_rank(ctx, ext_matrix(ctx, elems)) == n
