"""Smith normal form over the integers and abelianization of presentations."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from coxred.groupengine.words import exponent_sums


@dataclass(frozen=True)
class SNFResult:
    factors: tuple  # nonzero invariant factors, d1 | d2 | ...
    free_rank: int

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.factors if d != 1)

    def to_dict(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    def text(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def _sparse_unit_phase(rows: list[dict], ncols: int):
    """Eliminate unit pivots; returns (count of unit factors, leftover rows)."""
    rows = [dict(r) for r in rows if r]
    alive = set(range(len(rows)))
    col_rows: dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    units = 0
    while True:
        best = None
        for i in sorted(alive, key=lambda i: len(rows[i])):
            cands = [c for c, v in rows[i].items() if v in (1, -1)]
            if cands:
                c = min(cands, key=lambda c: (len(col_rows[c]), c))
                best = (i, c)
                break
        if best is None:
            break
        i, c = best
        piv_row = rows[i]
        sign = piv_row[c]
        for j in list(col_rows[c]):
            if j == i:
                continue
            rj = rows[j]
            f = rj[c] * sign
            for cc, v in piv_row.items():
                nv = rj.get(cc, 0) - f * v
                if nv:
                    if cc not in rj:
                        col_rows.setdefault(cc, set()).add(j)
                    rj[cc] = nv
                else:
                    rj.pop(cc, None)
                    col_rows[cc].discard(j)
            if not rj:
                alive.discard(j)
        for cc in piv_row:
            col_rows[cc].discard(i)
        del col_rows[c]
        alive.discard(i)
        rows[i] = {}
        units += 1
    left = [rows[i] for i in sorted(alive) if rows[i]]
    return units, left


def _dense_snf_diagonal(m: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix."""
    m = [list(r) for r in m]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        # smallest nonzero entry of the remaining block as pivot
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] and (piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = m[t][t]
            for i in range(t + 1, nr):
                if m[i][t]:
                    q = m[i][t] // p
                    if q:
                        m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        done = False
                        break
            if not done:
                continue
            p = m[t][t]
            for j in range(t + 1, nc):
                if m[t][j]:
                    q = m[t][j] // p
                    if q:
                        for row in m:
                            row[j] -= q * row[t]
                    if m[t][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        done = False
                        break
            if not done:
                continue
            # divisibility: fold in a row holding an entry not divisible by p
            bad = next((i for i in range(t + 1, nr) for j in range(t + 1, nc) if m[i][j] % p), None)
            if bad is not None:
                m[t] = [a + b for a, b in zip(m[t], m[bad])]
                done = False
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def smith_normal_form(matrix) -> SNFResult:
    """Invariant factors of an integer matrix (list of rows), all of them
    including the unit ones, plus the rank of the cokernel's free part."""
    rows = [list(map(int, r)) for r in matrix]
    ncols = len(rows[0]) if rows else 0
    return smith_normal_form_sparse([{j: v for j, v in enumerate(r) if v} for r in rows], ncols)


def smith_normal_form_sparse(rows: list[dict], ncols: int) -> SNFResult:
    units, left = _sparse_unit_phase(rows, ncols)
    cols = sorted({c for r in left for c in r})
    index = {c: k for k, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in left]
    for i, r in enumerate(left):
        for c, v in r.items():
            dense[i][index[c]] = v
    factors = [1] * units + _dense_snf_diagonal(dense)
    factors = _normalize_chain(factors)
    return SNFResult(tuple(factors), ncols - len(factors))


def _normalize_chain(factors: list[int]) -> list[int]:
    """Rewrite a diagonal into divisibility-chain form (same cokernel)."""
    d = sorted(factors)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def relation_rows(pres) -> list[dict]:
    out = []
    for r in pres.relators:
        row = {}
        for x in r:
            g = abs(x) - 1
            row[g] = row.get(g, 0) + (1 if x > 0 else -1)
        row = {g: v for g, v in row.items() if v}
        if row:
            out.append(row)
    return out


def relation_matrix(pres) -> list[list[int]]:
    return [exponent_sums(r, pres.generator_count) for r in pres.relators]


def abelianization(pres) -> SNFResult:
    """Free rank and nontrivial invariant factors of the abelianized group."""
    res = smith_normal_form_sparse(relation_rows(pres), pres.generator_count)
    return SNFResult(res.torsion, res.free_rank)
