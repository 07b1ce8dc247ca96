"""The integral reflection representation over the cycle field k.

Basis vectors are ``v_w = a_{1 i1} a_{i1 i2} ... a_{i(r-1) ir} e_{ir}`` for
words ``w = (i1, ..., ir)`` with the base node 1 prefixed implicitly.  All
bilinear-form values between such vectors are cycle products, which lie in
k even when the individual coefficients do not; so the coefficients are
carried in the biquadratic field and only the form values are coerced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from coxred import exact
from coxred.coxdiagram import CoxeterDiagram, gram_matrix
from coxred.errors import Disconnected, NonIntegralEntry, NotFreeLattice, NotInField, UnsupportedField
from coxred.numberfield import (
    RADICANDS,
    MultiQuadElement,
    QuadraticFieldElement,
    coerce_to_quadratic,
    is_integral,
)

BASE_NODE = 1


def _span_masks(masks: set[int]) -> set[int]:
    span = {0}
    for m in masks:
        span |= {m ^ s for s in span}
    return span


def cycle_generators(d: CoxeterDiagram) -> list[MultiQuadElement]:
    """Squared edge entries plus products around a fundamental cycle basis."""
    g = gram_matrix(d)
    gens = [g[i - 1][j - 1] * g[i - 1][j - 1] for (i, j), _ in d.edges]
    # spanning forest by BFS; each non-tree edge closes one cycle
    parent = {}
    order = []
    for root in d.nodes:
        if root in parent:
            continue
        parent[root] = None
        queue = [root]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for v in d.neighbours(u):
                if v not in parent:
                    parent[v] = u
                    queue.append(v)

    def path_to_root(u):
        path = [u]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path

    tree = {(min(u, p), max(u, p)) for u, p in parent.items() if p is not None}
    for (i, j), _ in d.edges:
        if (i, j) in tree:
            continue
        pi, pj = path_to_root(i), path_to_root(j)
        common = set(pi) & set(pj)
        pi = pi[: next(k for k, x in enumerate(pi) if x in common) + 1]
        pj = pj[: next(k for k, x in enumerate(pj) if x in common) + 1]
        cycle = pi + pj[::-1][1:] + [i]  # i -> lca -> j -> i
        prod = MultiQuadElement.rational(1)
        for u, v in zip(cycle, cycle[1:]):
            prod = prod * g[u - 1][v - 1]
        gens.append(prod)
    return gens


def cycle_field(d: CoxeterDiagram) -> Optional[int]:
    """Radicand D with k = Q(sqrt D), or None when k is the rationals."""
    if not d.is_connected():
        raise Disconnected("the cycle field needs a connected diagram")
    masks = {m for x in cycle_generators(d) for m in x.support() if m}
    span = _span_masks(masks)
    if len(span) == 1:
        return None
    if len(span) > 2:
        rads = sorted(RADICANDS[m] for m in span if m)
        raise UnsupportedField(f"cycle products generate Q(sqrt {rads}) of degree {len(span)}")
    (mask,) = span - {0}
    return RADICANDS[mask]


def spanning_sequence(d: CoxeterDiagram) -> list[tuple[int, ...]]:
    """Words covering every node, from a depth-first walk out of node 1.

    Node 1 itself is reached by stepping to its first neighbour and back,
    so the list starts ``(j,), (j, 1), ...``; a single node gives the empty
    word (the vector e_1).
    """
    if not d.is_connected():
        raise Disconnected("spanning sequence needs a connected diagram")
    if d.node_count == 1:
        return [()]
    first = d.neighbours(BASE_NODE)[0]
    words = [(first,), (first, BASE_NODE)]
    seen = {BASE_NODE, first}

    def walk(word):
        for v in d.neighbours(word[-1]):
            if v not in seen:
                seen.add(v)
                words.append(word + (v,))
                walk(word + (v,))

    walk((first,))
    for v in d.neighbours(BASE_NODE):
        if v not in seen:
            seen.add(v)
            words.append((v,))
            walk((v,))
    return words


def word_coefficient(gram, word) -> MultiQuadElement:
    coef = MultiQuadElement.rational(1)
    prev = BASE_NODE
    for v in word:
        coef = coef * gram[prev - 1][v - 1]
        prev = v
    return coef


def word_end(word) -> int:
    return word[-1] if word else BASE_NODE


def _pairing(gram, w1, w2) -> MultiQuadElement:
    return word_coefficient(gram, w1) * word_coefficient(gram, w2) * gram[word_end(w1) - 1][word_end(w2) - 1]


@dataclass(frozen=True)
class VinbergLattice:
    diagram: CoxeterDiagram
    D: Optional[int]
    basis: tuple[tuple[int, ...], ...]
    gram_k: tuple  # rows of QuadraticFieldElement
    reflections: tuple  # one matrix per node, columns = images of basis vectors
    signature: tuple[int, int, int]
    coefficients: tuple  # MultiQuadElement per basis word (v_w = c_w e_end)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def integral(self) -> bool:
        return all(is_integral(x) for m in (self.gram_k, *self.reflections) for row in m for x in row)

    def e_frame(self) -> Optional[list[list[QuadraticFieldElement]]]:
        """Matrix T with (e-coordinates) = T (basis coordinates), when every
        basis vector is a k-multiple of a distinct e_i; else None."""
        n = self.diagram.node_count
        if self.dim != n:
            return None
        zero = QuadraticFieldElement(0, 0, self.D)
        t = [[zero] * n for _ in range(n)]
        for col, (w, c) in enumerate(zip(self.basis, self.coefficients)):
            try:
                t[word_end(w) - 1][col] = coerce_to_quadratic(c, self.D)
            except NotInField:
                return None
        return t


def _to_k(x: MultiQuadElement, D) -> QuadraticFieldElement:
    try:
        return coerce_to_quadratic(x, D)
    except NotInField as exc:
        raise UnsupportedField(str(exc)) from None


def basis_gram(d: CoxeterDiagram, basis, D=None) -> list[list[QuadraticFieldElement]]:
    g = gram_matrix(d)
    if D is None and d.node_count > 1:
        D = cycle_field(d)
    out = [[_to_k(_pairing(g, w1, w2), D) for w2 in basis] for w1 in basis]
    for row in out:
        for x in row:
            if not is_integral(x):
                raise NonIntegralEntry(f"cycle product {x} is not an algebraic integer")
    return out


def select_basis(d: CoxeterDiagram, words, D) -> list[tuple[int, ...]]:
    """Greedy choice of the first words independent modulo the radical of G.

    Independence is decided on e-coordinates: a Gram submatrix can be
    singular for independent vectors once the form is indefinite.
    """
    g = gram_matrix(d)
    n = d.node_count
    rows = exact.nullspace(g)
    target = n - len(rows)
    chosen: list = []
    for w in words:
        v = [MultiQuadElement()] * n
        v[word_end(w) - 1] = word_coefficient(g, w)
        if exact.rank(rows + [v]) == len(rows) + 1:
            rows.append(v)
            chosen.append(w)
        if len(chosen) == target:
            break
    return chosen


def _coordinates(gram_k, g, basis, target_coef, target_end, D):
    """Coordinates in ``basis`` of the vector ``target_coef * e_target_end``."""
    rhs = [
        _to_k(target_coef * word_coefficient(g, w) * g[target_end - 1][word_end(w) - 1], D)
        for w in basis
    ]
    return exact.solve(gram_k, rhs)


def reflection_matrices(d: CoxeterDiagram, basis, D=None, gram_k=None):
    """Matrices of r_1..r_m on the basis; r_i(v_w) = v_w - v_{w i}."""
    g = gram_matrix(d)
    if D is None and d.node_count > 1:
        D = cycle_field(d)
    if gram_k is None:
        gram_k = basis_gram(d, basis, D)
    n = len(basis)
    mats = []
    for i in d.nodes:
        cols = []
        for k, w in enumerate(basis):
            end = word_end(w)
            coef = word_coefficient(g, w) * g[end - 1][i - 1]
            if coef:
                x = _coordinates(gram_k, g, basis, coef, i, D)
            else:
                x = [QuadraticFieldElement(0, 0, D)] * n
            col = [(QuadraticFieldElement(1, 0, D) if t == k else QuadraticFieldElement(0, 0, D)) - x[t]
                   for t in range(n)]
            cols.append(col)
        mats.append(exact.transpose(cols))
    for m in mats:
        for row in m:
            for x in row:
                if not is_integral(x):
                    raise NotFreeLattice(f"reflection coordinate {x} is not integral")
    # every length-one word must lie in the O-span of the basis as well
    for j in d.neighbours(BASE_NODE):
        x = _coordinates(gram_k, g, basis, g[BASE_NODE - 1][j - 1], j, D)
        if not all(is_integral(c) for c in x):
            raise NotFreeLattice(f"v_{j} has non-integral coordinates {x}")
    return mats


def signature(lattice_or_gram) -> tuple[int, int, int]:
    gram = lattice_or_gram.gram_k if isinstance(lattice_or_gram, VinbergLattice) else lattice_or_gram
    return exact.signature([list(r) for r in gram])


def build_lattice(d: CoxeterDiagram) -> VinbergLattice:
    D = cycle_field(d) if d.node_count > 1 else None
    words = spanning_sequence(d)
    basis = select_basis(d, words, D) if d.node_count > 1 else words
    gram_k = basis_gram(d, basis, D)
    mats = reflection_matrices(d, basis, D, gram_k)
    g = gram_matrix(d)
    coefs = tuple(word_coefficient(g, w) for w in basis)
    return VinbergLattice(
        diagram=d,
        D=D,
        basis=tuple(basis),
        gram_k=tuple(tuple(r) for r in gram_k),
        reflections=tuple(tuple(tuple(r) for r in m) for m in mats),
        signature=signature(gram_k),
        coefficients=coefs,
    )


def lattice_summary(lat: VinbergLattice) -> dict:
    def triple(x: QuadraticFieldElement):
        return [str(x.a), str(x.b), lat.D]

    return {
        "basis_words": [list(w) for w in lat.basis],
        "integral": lat.integral(),
        "gram": [[triple(x) for x in row] for row in lat.gram_k],
        "reflections": [[[triple(x) for x in row] for row in m] for m in lat.reflections],
    }

