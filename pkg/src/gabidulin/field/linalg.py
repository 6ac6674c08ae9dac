"""Gaussian elimination over F_q.

Matrices are 2-D integer arrays of F_q codes (see :class:`BaseField`).
"""

import numpy as np


def rref(F, M):
    """Reduced row-echelon form of ``M`` over the base field ``F``.

    Returns ``(R, pivots)`` where ``pivots`` lists the pivot column of each
    nonzero row of ``R``.
    """
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    rows, cols = R.shape
    pivots = []
    r = 0
    binary = F.q == 2
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        if binary:
            mask = R[:, c].astype(bool)
            mask[r] = False
            R[mask] ^= R[r]
        else:
            R[r] = F.mul(R[r], F.inv(R[r, c]))
            factors = R[:, c].copy()
            factors[r] = 0
            hit = np.nonzero(factors)[0]
            if hit.size:
                R[hit] = F.sub(R[hit], F.mul(factors[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F, M):
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def inverse(F, M):
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("matrix must be square")
    aug = np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise np.linalg.LinAlgError("matrix is singular over F_q")
    return R[:, n:]


def matmul(F, A, B):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.e == 1:
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.add(out, F.mul(A[:, k:k + 1], B[k:k + 1, :]))
    return out
