"""Matrix products over F_{q^m}: schoolbook and Strassen.

Matrices are arrays of shape ``(rows, cols) + ctx.elem_shape``.
"""

import functools

import numpy as np

# below this dimension a leaf is multiplied by the schoolbook kernel
STRASSEN_CUTOFF = 4


def naive_matmul(ctx, A, B):
    """Schoolbook product, ``r * k * c`` multiplications."""
    return _school(ctx, A, np.asarray(B)[None])[0]


def _school(ctx, A, Bs):
    # A (r, k), Bs (nb, k, c) -> (nb, r, c) in one broadcast kernel call
    A = np.asarray(A)
    Bs = np.asarray(Bs)
    if A.shape[1] == 0:
        return ctx.zeros((Bs.shape[0], A.shape[0], Bs.shape[2]))
    prod = ctx.mul(A[None, :, :, None], Bs[:, None, :, :])
    return ctx.sum(prod, axis=2)


def strassen_matmul(ctx, A, B, cutoff=STRASSEN_CUTOFF):
    """Product of a square ``A`` (n x n) with ``B`` (n x N).

    ``B`` is cut into n x n blocks (zero padded on the right) that share one
    Strassen recursion on ``A``.  Odd sizes are handled by peeling the last
    row and column instead of padding.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    n = A.shape[0]
    if A.shape[1] != n or B.shape[0] != n:
        raise ValueError("A must be square and match the rows of B")
    N = B.shape[1]
    if n == 0 or N == 0:
        return ctx.zeros((n, N))
    nb = -(-N // n)
    if nb * n != N:
        pad = ctx.zeros((n, nb * n - N))
        B = np.concatenate([B, pad], axis=1)
    E = B.shape[2:]
    Bs = B.reshape((n, nb, n) + E).swapaxes(0, 1)
    C = _strassen(ctx, A, Bs, max(int(cutoff), 1))
    return C.swapaxes(0, 1).reshape((n, nb * n) + E)[:, :N]


@functools.lru_cache(maxsize=None)
def strassen_cost(n, cutoff=STRASSEN_CUTOFF):
    """Multiplications spent by :func:`strassen_matmul` on one n x n block."""
    if n <= cutoff:
        return n**3
    if n % 2:
        t = n - 1
        return strassen_cost(t, cutoff) + t * t + n * n + n * t
    return 7 * strassen_cost(n // 2, cutoff)


def _strassen(ctx, A, Bs, cutoff):
    n = A.shape[0]
    if n <= cutoff:
        return _school(ctx, A, Bs)
    if n % 2:
        t = n - 1
        C = ctx.zeros((Bs.shape[0], n, n))
        C[:, :t, :t] = ctx.add(_strassen(ctx, A[:t, :t], Bs[:, :t, :t], cutoff),
                               _school(ctx, A[:t, t:], Bs[:, t:, :t]))
        C[:, :, t:] = _school(ctx, A, Bs[:, :, t:])
        C[:, t:, :t] = _school(ctx, A[t:, :], Bs[:, :, :t])
        return C
    h = n // 2
    A11, A12, A21, A22 = A[:h, :h], A[:h, h:], A[h:, :h], A[h:, h:]
    B11, B12 = Bs[:, :h, :h], Bs[:, :h, h:]
    B21, B22 = Bs[:, h:, :h], Bs[:, h:, h:]
    add, sub = ctx.add, ctx.sub
    M1 = _strassen(ctx, add(A11, A22), add(B11, B22), cutoff)
    M2 = _strassen(ctx, add(A21, A22), B11, cutoff)
    M3 = _strassen(ctx, A11, sub(B12, B22), cutoff)
    M4 = _strassen(ctx, A22, sub(B21, B11), cutoff)
    M5 = _strassen(ctx, add(A11, A12), B22, cutoff)
    M6 = _strassen(ctx, sub(A21, A11), add(B11, B12), cutoff)
    M7 = _strassen(ctx, sub(A12, A22), add(B21, B22), cutoff)
    C = ctx.zeros((Bs.shape[0], n, n))
    C[:, :h, :h] = add(sub(add(M1, M4), M5), M7)
    C[:, :h, h:] = add(M3, M5)
    C[:, h:, :h] = add(M2, M4)
    C[:, h:, h:] = add(add(sub(M1, M2), M3), M6)
    return C
