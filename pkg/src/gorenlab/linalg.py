"""Exact dense linear algebra over a prime field GF(p).

Matrices are numpy int64 arrays with entries reduced mod p.  Every routine
is deterministic; zero-sized shapes like (0, n) are legal throughout.
"""

from __future__ import annotations

import numpy as np


def normalize(m, p: int) -> np.ndarray:
    """Coerce to an int64 array with entries in [0, p)."""
    a = np.asarray(m, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix, got shape %r" % (a.shape,))
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.  Returns (R, pivot column indices)."""
    a = normalize(m, p).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns span the right kernel of m.  Shape (cols, nullity)."""
    a = normalize(m, p)
    rows, cols = a.shape
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(cols, len(free))
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-int(r[i, fc])) % p
    return basis


def solve_matrix(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution X of a @ X = b mod p, or None when inconsistent."""
    a = normalize(a, p)
    b = normalize(b, p)
    rows, cols = a.shape
    aug, pivots = rref(np.hstack([a, b]), p)
    for c in pivots:
        if c >= cols:
            return None
    x = zeros(cols, b.shape[1])
    for i, c in enumerate(pivots):
        x[c] = aug[i, cols:]
    return x


def solve(a: np.ndarray, v: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a @ x = v mod p, or None."""
    x = solve_matrix(a, np.asarray(v, dtype=np.int64).reshape(-1, 1), p)
    return None if x is None else x[:, 0]


def in_column_space(a: np.ndarray, v: np.ndarray, p: int) -> bool:
    return solve(a, v, p) is not None


def pivot_columns(m: np.ndarray, p: int) -> list[int]:
    """Indices of a maximal independent subset of columns."""
    return rref(m, p)[1]


def image_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the column space (original pivot columns)."""
    a = normalize(m, p)
    return a[:, pivot_columns(a, p)]


def is_invertible(m: np.ndarray, p: int) -> bool:
    r, c = m.shape
    return r == c and rank(m, p) == r


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    r, c = m.shape
    if r != c:
        raise ValueError("not square")
    x = solve_matrix(m, identity(r), p)
    if x is None:
        raise ValueError("singular matrix")
    return x


def coordinates(basis: np.ndarray, vecs: np.ndarray, p: int) -> np.ndarray | None:
    """Coordinates of vecs (columns) in the given column basis, or None."""
    return solve_matrix(basis, vecs, p)


def quotient_projection(sub: np.ndarray, n: int, p: int) -> tuple[np.ndarray, list[int]]:
    """Projection F^n -> F^n/col(sub) in coordinates of non-pivot rows.

    Returns (q, sel): q is (n - rank) x n with q @ sub = 0 and full row
    rank; sel lists coordinates whose standard vectors represent the
    quotient basis, so q[:, sel] is the identity.
    """
    r, pivots = rref(normalize(sub, p).T, p)
    # rows of r span the row space of sub^T = column space of sub
    nonpiv = [i for i in range(n) if i not in pivots]
    q = zeros(len(nonpiv), n)
    for j, t in enumerate(nonpiv):
        q[j, t] = 1
        for i, pc in enumerate(pivots):
            q[j, pc] = (-int(r[i, t])) % p
    return q, nonpiv


def extend_to_basis(sub: np.ndarray, p: int) -> list[int]:
    """Standard-vector indices completing col(sub) to a basis of F^n."""
    n = sub.shape[0]
    cur = image_basis(sub, p)
    picked: list[int] = []
    rk = cur.shape[1]
    for t in range(n):
        e = zeros(n, 1)
        e[t, 0] = 1
        cand = np.hstack([cur, e])
        if rank(cand, p) > rk:
            cur = cand
            rk += 1
            picked.append(t)
        if rk == n:
            break
    return picked


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
