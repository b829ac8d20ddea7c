"""Dense Gaussian elimination over F_p (p prime)."""

from __future__ import annotations

import numpy as np


def row_echelon_mod_p(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M`` mod p and its pivot columns."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod_p(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(row_echelon_mod_p(M, p)[1])


def solve_mod_p(A, b, p: int) -> np.ndarray:
    """One solution x of A x = b over F_p; ValueError if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, pivots = row_echelon_mod_p(np.hstack([A, b]), p)
    n = A.shape[1]
    if n in pivots:
        raise ValueError("inconsistent linear system")
    x = np.zeros(n, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = R[row, n]
    return x
