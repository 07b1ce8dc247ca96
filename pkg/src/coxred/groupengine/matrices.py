"""Small hashable matrices over F_p, used as elements of finite image groups."""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np


class FpMat:
    """Square matrix over F_p; immutable and hashable."""

    __slots__ = ("p", "n", "data", "_hash")

    def __init__(self, rows, p: int):
        if isinstance(rows, np.ndarray):
            rows = rows.tolist()
        self.p = p
        self.n = len(rows)
        self.data = tuple(tuple(int(x) % p for x in row) for row in rows)
        self._hash = hash((p, self.data))

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    def one(self) -> "FpMat":
        return FpMat.identity(self.n, self.p)

    def __mul__(self, other: "FpMat") -> "FpMat":
        a, b, p, n = self.data, other.data, self.p, self.n
        return FpMat([[sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)], p)

    def __eq__(self, other):
        return isinstance(other, FpMat) and self.p == other.p and self.data == other.data

    def __hash__(self):
        return self._hash

    def det(self) -> int:
        m = [list(r) for r in self.data]
        p, n, det = self.p, self.n, 1
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] % p), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det = det * m[c][c] % p
            inv = pow(m[c][c], p - 2, p)
            for i in range(c + 1, n):
                f = m[i][c] * inv % p
                if f:
                    m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
        return det % p

    def inverse(self) -> "FpMat":
        p, n = self.p, self.n
        aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.data)]
        for c in range(n):
            piv = next((i for i in range(c, n) if aug[i][c] % p), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = pow(aug[c][c], p - 2, p)
            aug[c] = [x * inv % p for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
        return FpMat([r[n:] for r in aug], p)

    def __pow__(self, k: int) -> "FpMat":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self) -> "FpMat":
        return FpMat([[-x for x in r] for r in self.data], self.p)

    def array(self) -> np.ndarray:
        return np.array(self.data, dtype=np.int64)

    def tolist(self) -> list:
        return [list(r) for r in self.data]

    def __repr__(self):
        return f"FpMat({self.tolist()}, p={self.p})"


class ProjMat(FpMat):
    """Matrix modulo sign: the representative has its first nonzero entry
    in the lower half 1..(p-1)/2 of F_p."""

    __slots__ = ()

    def __init__(self, rows, p: int):
        super().__init__(rows, p)
        first = next(x for row in self.data for x in row if x)
        if first > (p - 1) // 2:
            self.data = tuple(tuple(-x % p for x in row) for row in self.data)
            self._hash = hash((p, self.data))

    @classmethod
    def identity(cls, n: int, p: int) -> "ProjMat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    def one(self) -> "ProjMat":
        return ProjMat.identity(self.n, self.p)

    def __mul__(self, other):
        return ProjMat(FpMat.__mul__(self, other).data, self.p)

    def inverse(self):
        return ProjMat(FpMat.inverse(self).data, self.p)


def closure(generators, identity, cap: Optional[int] = None, mul: Callable = None) -> list:
    """All elements generated by ``generators`` in BFS discovery order."""
    mul = mul or (lambda a, b: a * b)
    elements = [identity]
    seen = {identity: 0}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in generators:
                y = mul(x, g)
                if y not in seen:
                    seen[y] = len(elements)
                    elements.append(y)
                    new.append(y)
                    if cap is not None and len(elements) > cap:
                        from coxred.errors import CapExceeded

                        raise CapExceeded(f"group exceeds {cap} elements")
        frontier = new
    return elements
