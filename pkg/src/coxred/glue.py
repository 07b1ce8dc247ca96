"""Doubling a polyhedron across one of its faces.

The double of P across face i is bounded by the faces e_j (j != i) and
their mirror images r_i(e_j).  Mirror images with a_ij = 0 coincide with
e_j and are omitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from coxred.coxdiagram import (
    SUPPORTED_ANGLES,
    Angle,
    CoxeterDiagram,
    GramValue,
    Infinity,
    angle_entry,
    euler_characteristic,
    gram_matrix,
)
from coxred.errors import NotCoxeter, ZeroEulerCharacteristic
from coxred.numberfield import MultiQuadElement


@dataclass(frozen=True)
class FaceSystem:
    faces: tuple  # ("e", j) or ("r", i, j) for r_i(e_j)
    gram: tuple  # rows of MultiQuadElement

    def face_names(self) -> list[str]:
        return [f"e{f[1]}" if f[0] == "e" else f"r{f[1]}(e{f[2]})" for f in self.faces]

    def entry(self, a, b) -> MultiQuadElement:
        return self.gram[self.faces.index(a)][self.faces.index(b)]


def face_system(d: CoxeterDiagram) -> FaceSystem:
    return FaceSystem(tuple(("e", j) for j in d.nodes), tuple(tuple(r) for r in gram_matrix(d)))


def double(d: CoxeterDiagram, i: int) -> FaceSystem:
    if i not in d.nodes:
        raise ValueError(f"node {i} not in 1..{d.node_count}")
    a = gram_matrix(d)
    A = lambda x, y: a[x - 1][y - 1]
    faces = [("e", j) for j in d.nodes if j != i]
    faces += [("r", i, j) for j in d.nodes if j != i and A(i, j)]

    def pair(f, g):
        if f[0] == "e" and g[0] == "e":
            return A(f[1], g[1])
        if f[0] == "r" and g[0] == "r":
            return A(f[2], g[2])
        if f[0] == "r":
            f, g = g, f
        # B(r_i e_j, e_k) = a_jk - a_ij a_ik
        j, k = g[2], f[1]
        return A(j, k) - A(i, j) * A(i, k)

    gram = tuple(tuple(pair(f, g) for g in faces) for f in faces)
    return FaceSystem(tuple(faces), gram)


def recognize(fs: FaceSystem) -> CoxeterDiagram:
    """Diagram of a face system whose Gram entries are all Coxeter entries."""
    n = len(fs.faces)
    names = fs.face_names()
    two = MultiQuadElement.rational(2)
    by_value = {angle_entry(m): m for m in SUPPORTED_ANGLES}
    edges = {}
    for x in range(n):
        if fs.gram[x][x] != two:
            raise NotCoxeter(f"face {names[x]} has norm {fs.gram[x][x]}", fs.gram[x][x])
        for y in range(x + 1, n):
            v = fs.gram[x][y]
            if not v:
                continue
            if v in by_value:
                edges[(x + 1, y + 1)] = Angle(by_value[v])
            elif v == -two:
                edges[(x + 1, y + 1)] = Infinity()
            elif v < -two:
                edges[(x + 1, y + 1)] = GramValue(v)
            else:
                raise NotCoxeter(f"B({names[x]}, {names[y]}) = {v} is not a Coxeter entry", v)
    return CoxeterDiagram(n, edges)


def index_relation(d_big: CoxeterDiagram, d_small: CoxeterDiagram) -> Fraction:
    """chi(d_big) / chi(d_small); the index of the smaller group in the
    larger covolume sense when one contains the other."""
    big, small = euler_characteristic(d_big), euler_characteristic(d_small)
    if big == 0 or small == 0:
        raise ZeroEulerCharacteristic("Euler characteristic vanishes; ratio undefined")
    return big / small
