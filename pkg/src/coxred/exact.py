"""Exact linear algebra over any field whose elements support + - * / and ``== 0``.

Matrices are lists of rows.  Nothing here knows about a specific scalar
type; signs are taken through a ``sign()`` method when needed.
"""

from __future__ import annotations

from typing import Sequence


def _zero_like(x):
    return x - x


def _one_like(x):
    z = x - x
    return z + 1


def copy_matrix(m):
    return [list(row) for row in m]


def identity(n: int, one):
    zero = _zero_like(one)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def matvec(a, v):
    return [sum((a[i][t] * v[t] for t in range(1, len(v))), a[i][0] * v[0]) for i in range(len(a))]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matpow(a, k: int):
    one = _one_like(a[0][0])
    out = identity(len(a), one)
    base = a
    while k:
        if k & 1:
            out = matmul(out, base)
        base = matmul(base, base)
        k >>= 1
    return out


def row_echelon(m):
    """Return (echelon form, pivot columns) by Gauss-Jordan elimination."""
    a = copy_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m) -> int:
    if not m:
        return 0
    return len(row_echelon(m)[1])


def determinant(m):
    n = len(m)
    a = copy_matrix(m)
    det = _one_like(a[0][0])
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return _zero_like(det)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def solve(a, b):
    """Solve ``a x = b`` for square invertible ``a`` (b a vector)."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    ech, piv = row_echelon(aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        raise ZeroDivisionError("singular system")
    return [ech[i][n] for i in range(n)]


def inverse(a):
    n = len(a)
    one = _one_like(a[0][0])
    aug = [list(a[i]) + identity(n, one)[i] for i in range(n)]
    ech, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in ech[:n]]


def nullspace(m):
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    cols = len(m[0])
    ech, piv = row_echelon(m)
    zero = _zero_like(m[0][0])
    one = _one_like(m[0][0])
    basis = []
    for free in range(cols):
        if free in piv:
            continue
        v = [zero] * cols
        v[free] = one
        for r, c in enumerate(piv):
            v[c] = -ech[r][free]
        basis.append(v)
    return basis


def signature(m) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric matrix.

    Symmetric elimination by congruence: a nonzero diagonal pivot is used
    directly; when every remaining diagonal entry vanishes but some
    off-diagonal ``a_ij`` does not, row/column ``i`` is replaced by
    ``i + j`` which puts ``2 a_ij`` on the diagonal.
    """
    a = copy_matrix(m)
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                a[i][k] = a[i][k] + a[j][k]
            for k in range(n):
                a[k][i] = a[k][i] + a[k][j]
            piv = i
        d = a[piv][piv]
        s = d.sign() if hasattr(d, "sign") else (d > 0) - (d < 0)
        if s > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        inv = 1 / d
        for i in active:
            if a[i][piv] != 0:
                f = a[i][piv] * inv
                for k in active:
                    a[i][k] = a[i][k] - f * a[piv][k]
        for i in active:
            a[piv][i] = _zero_like(d)
            a[i][piv] = _zero_like(d)
    return pos, neg, n - pos - neg


def is_positive_definite(m) -> bool:
    return signature(m) == (len(m), 0, 0)


def is_positive_semidefinite(m) -> bool:
    return signature(m)[1] == 0


def mat_equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)) and len(a) == len(b)
