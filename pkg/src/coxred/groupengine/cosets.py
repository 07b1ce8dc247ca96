"""Coset tables read off finite images, and Reidemeister-Schreier rewriting.

A homomorphism from a finitely presented group onto a finite group is
given by generator images; the cosets of its kernel are the image
elements, so the coset table is just the right-multiplication graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from coxred.coxdiagram import GroupPresentation
from coxred.errors import CoxredError
from coxred.groupengine.words import evaluate, free_reduce, invert


def column(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


@dataclass(frozen=True)
class CosetTable:
    """rows = cosets, columns g1, g1^-1, g2, g2^-1, ...; row 0 the subgroup."""

    table: tuple

    @property
    def index(self) -> int:
        return len(self.table)

    @property
    def generator_count(self) -> int:
        return len(self.table[0]) // 2 if self.table else 0

    def act(self, coset: int, letter: int) -> int:
        return self.table[coset][column(letter)]

    def trace(self, coset: int, word) -> int:
        for x in word:
            coset = self.table[coset][column(x)]
        return coset


def coset_table_from_permutations(perms) -> CosetTable:
    """Table from the permutation action of each generator on cosets."""
    n = len(perms[0]) if perms else 1
    rows = [[0] * (2 * len(perms)) for _ in range(n)]
    for g, perm in enumerate(perms):
        for c, d in enumerate(perm):
            rows[c][2 * g] = d
            rows[d][2 * g + 1] = c
    return CosetTable(tuple(tuple(r) for r in rows))


def schreier_coset_table(pres: GroupPresentation, images, identity=None,
                         cap: Optional[int] = None) -> CosetTable:
    """Cosets of the kernel of ``generator g -> images[g-1]``.

    Cosets are the image elements in BFS discovery order from the
    identity; every relator is checked to map to the identity.
    """
    images = list(images)
    if len(images) != pres.generator_count:
        raise ValueError("need one image per generator")
    if identity is None:
        if not images:
            return CosetTable(((),))
        identity = images[0].one()
    inverses = [g.inverse() for g in images]
    for r in pres.relators:
        if evaluate(r, images, inverses, identity) != identity:
            raise CoxredError(f"relator {list(r)} does not map to the identity")
    index = {identity: 0}
    elements = [identity]
    perms = [[] for _ in images]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g, m in enumerate(images):
            y = x * m
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
                if cap is not None and len(elements) > cap:
                    raise CoxredError(f"image exceeds {cap} elements")
    for g, m in enumerate(images):
        perms[g] = [index[x * m] for x in elements]
    if not images:
        return CosetTable(((),))
    return coset_table_from_permutations(perms)


@dataclass(frozen=True)
class Transversal:
    words: tuple  # coset -> word in the original generators
    tree: frozenset  # (coset, positive generator) pairs whose Schreier generator is trivial


def schreier_transversal(table: CosetTable) -> Transversal:
    n = table.index
    words: list = [None] * n
    words[0] = ()
    tree = set()
    queue = deque([0])
    ngen = table.generator_count
    letters = [s * g for g in range(1, ngen + 1) for s in (1, -1)]
    while queue:
        c = queue.popleft()
        for x in letters:
            d = table.act(c, x)
            if words[d] is None:
                words[d] = words[c] + (x,)
                tree.add((c, x) if x > 0 else (d, -x))
                queue.append(d)
    return Transversal(tuple(words), frozenset(tree))


def reidemeister_schreier(pres: GroupPresentation, table: CosetTable) -> GroupPresentation:
    """Presentation of the subgroup with the given coset table.

    Generators are the nontrivial Schreier generators s(c, g) = t_c g t_{cg}^-1,
    ordered by (coset, generator); ``origin`` records those pairs.
    Relators are the rewrites of each relator at each coset.
    """
    if table.generator_count != pres.generator_count and table.index > 1:
        raise ValueError("coset table and presentation disagree on generators")
    trans = schreier_transversal(table)
    number = {}
    origin = []
    for c in range(table.index):
        for g in range(1, pres.generator_count + 1):
            if (c, g) not in trans.tree:
                number[(c, g)] = len(origin) + 1
                origin.append((c, g))
    relators = []
    for r in pres.relators:
        for c in range(table.index):
            out = []
            x = c
            for letter in r:
                if letter > 0:
                    s = number.get((x, letter))
                    if s:
                        out.append(s)
                    x = table.act(x, letter)
                else:
                    y = table.act(x, letter)
                    s = number.get((y, -letter))
                    if s:
                        out.append(-s)
                    x = y
            if x != c:
                raise CoxredError("relator does not close up in the coset table")
            w = free_reduce(out)
            if w:
                relators.append(w)
    return GroupPresentation(len(origin), tuple(relators), origin=tuple(origin))


def schreier_generator_word(trans: Transversal, table: CosetTable, coset: int, gen: int) -> tuple:
    """s(c, g) as a word in the original generators."""
    return free_reduce(trans.words[coset] + (gen,) + invert(trans.words[table.act(coset, gen)]))


def rs_images(pres_sub: GroupPresentation, table: CosetTable, images, identity=None) -> list:
    """Images of the Schreier generators under a map of the parent group."""
    trans = schreier_transversal(table)
    images = list(images)
    inverses = [g.inverse() for g in images]
    if identity is None and images:
        identity = images[0].one()
    return [evaluate(schreier_generator_word(trans, table, c, g), images, inverses, identity)
            for c, g in pres_sub.origin]
