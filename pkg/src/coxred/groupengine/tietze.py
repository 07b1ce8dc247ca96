"""Tietze simplification of presentations.

Moves used: free and cyclic reduction of relators, removal of duplicate
relators (up to rotation and inversion), elimination of a generator that
occurs exactly once in some relator, and replacement of a long subword by
the shorter remainder of a relator that contains it.  ``origin`` of the
result lists, for each surviving generator, its 1-based index in the input.
"""

from __future__ import annotations

from typing import Optional

from coxred.coxdiagram import GroupPresentation
from coxred.errors import CoxredError
from coxred.groupengine.words import canonical, cyclic_reduce, free_reduce, invert

DEFAULT_LENGTH_BUDGET = 2_000_000
SUBSTITUTION_RELATOR_LIMIT = 100


def _tidy(relators) -> list:
    seen = set()
    out = []
    for r in relators:
        w = cyclic_reduce(r)
        if not w:
            continue
        key = canonical(w)
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


def _occurrences(relators, ngen: int):
    total = [0] * (ngen + 1)
    for r in relators:
        for x in r:
            total[abs(x)] += 1
    return total


def _best_elimination(relators, total):
    """(growth, generator, relator index) of the cheapest elimination."""
    best = None
    for k, r in enumerate(relators):
        counts: dict = {}
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        for g, c in counts.items():
            if c != 1:
                continue
            growth = (len(r) - 2) * (total[g] - 1)
            key = (growth, len(r), g, k)
            if best is None or key < best:
                best = key
    return best


def _substitute(word, gen: int, replacement) -> tuple:
    inv = invert(replacement)
    out = []
    for x in word:
        if x == gen:
            out.extend(replacement)
        elif x == -gen:
            out.extend(inv)
        else:
            out.append(x)
    return free_reduce(out)


def _eliminate(relators, g: int, k: int):
    r = relators[k]
    pos = next(i for i, x in enumerate(r) if abs(x) == g)
    a, b = r[:pos], r[pos + 1:]
    # a g^e b = 1  =>  g^e = a^-1 b^-1
    value = free_reduce(invert(a) + invert(b))
    if r[pos] < 0:
        value = invert(value)
    rest = [_substitute(s, g, value) for i, s in enumerate(relators) if i != k]
    return rest, value


def _renumber(relators, alive: list[int]) -> list:
    new = {old: i + 1 for i, old in enumerate(alive)}
    return [tuple(new[x] if x > 0 else -new[-x] for x in r) for r in relators]


def _shorten_by_subwords(relators, max_relator: int = 200) -> tuple[list, bool]:
    """Replace a subword u of some relator by v^-1 where u v is a cyclic
    rotation of a (shorter or equal) relator and len(v) < len(u)."""
    changed = False
    rels = list(relators)
    short = sorted(range(len(rels)), key=lambda i: len(rels[i]))
    for i in short:
        base = rels[i]
        n = len(base)
        if n == 0 or n > max_relator:
            continue
        pieces = {}
        for cand in (base, invert(base)):
            for rot in range(n):
                w = cand[rot:] + cand[:rot]
                for ln in range(n // 2 + 1, n + 1):
                    u = w[:ln]
                    v = w[ln:]
                    pieces.setdefault(u, invert(v))
        keys = sorted(pieces, key=len, reverse=True)
        for j in range(len(rels)):
            if j == i or len(rels[j]) < n // 2 + 1:
                continue
            w = rels[j]
            for u in keys:
                lu = len(u)
                pos = _find(w, u)
                if pos is not None:
                    w = free_reduce(w[:pos] + pieces[u] + w[pos + lu:])
                    changed = True
                    break
            rels[j] = cyclic_reduce(w)
    return rels, changed


def _find(w, u) -> Optional[int]:
    lu = len(u)
    first = u[0]
    for p in range(len(w) - lu + 1):
        if w[p] == first and w[p:p + lu] == u:
            return p
    return None


def tietze_simplify(pres: GroupPresentation, target_generators: int = 0, check: bool = False,
                    length_budget: int = DEFAULT_LENGTH_BUDGET, substitute: bool = True) -> GroupPresentation:
    """Eliminate generators greedily until ``target_generators`` remain or no
    elimination is possible.  With ``check`` the abelianization is compared
    against the input after every individual move."""
    if check:
        from coxred.groupengine.snf import abelianization

        expected = abelianization(pres)

        def verify(ngen, rels):
            got = abelianization(GroupPresentation(ngen, tuple(rels)))
            if got != expected:
                raise CoxredError(f"Tietze move changed the abelianization: {got} vs {expected}")
    else:
        def verify(ngen, rels):
            return None

    relators = _tidy(pres.relators)
    verify(pres.generator_count, relators)
    alive = list(range(1, pres.generator_count + 1))
    while True:
        while len(alive) > target_generators:
            ngen = len(alive)
            total = _occurrences(relators, ngen)
            best = _best_elimination(relators, total)
            if best is None:
                break
            growth, _, g, k = best
            current = sum(len(r) for r in relators)
            if current + growth > length_budget:
                break
            relators, _ = _eliminate(relators, g, k)
            relators = _renumber(relators, [x for x in range(1, ngen + 1) if x != g])
            alive.pop(g - 1)
            relators = _tidy(relators)
            verify(len(alive), relators)
        if not substitute or len(relators) > SUBSTITUTION_RELATOR_LIMIT:
            break
        relators, changed = _shorten_by_subwords(relators)
        relators = _tidy(relators)
        verify(len(alive), relators)
        if not changed:
            break
    return GroupPresentation(len(alive), tuple(relators), origin=tuple(alive))


def tietze_images(simplified: GroupPresentation, images) -> list:
    """Images of the surviving generators, from images of the input ones."""
    return [images[i - 1] for i in simplified.origin]
