"""Reduction of the integral representation modulo a prime ideal.

Matrices here are lists of rows of :class:`ResidueElement`.  The radical
of the reduced form is split off by a coordinate complement and the
quotient carries the induced (regular) representation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from coxred import exact
from coxred.errors import CoxredError
from coxred.numberfield import PrimeIdealData, ResidueElement, ResidueField, residue
from coxred.vinberg import VinbergLattice

ISOTROPIC_SEARCH_CAP = 2_000_000


@dataclass(frozen=True)
class FormClass:
    dim: int
    witt_index: int
    epsilon: Optional[str]  # "+" / "-" for even dim
    discriminant: Optional[str]  # "square" / "nonsquare" for odd dim
    hyperbolic_pairs: tuple = ()

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "witt_index": self.witt_index,
            "epsilon": self.epsilon,
            "discriminant": self.discriminant,
            "name": self.name,
        }

    @property
    def name(self) -> str:
        if self.epsilon is None:
            return f"O_{self.dim}"
        return f"O_{self.dim}^{self.epsilon}"


@dataclass(frozen=True)
class Quotient:
    dim: int
    form: tuple
    generators: tuple
    complement: tuple  # coordinate indices spanning W
    change: tuple  # columns: complement vectors then radical vectors


@dataclass(frozen=True)
class FiniteRepresentation:
    field: ResidueField
    dim: int
    form: tuple
    generators: tuple
    radical_basis: tuple
    quotient: Quotient

    @property
    def q(self) -> int:
        return self.field.q


def _mat(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def _lists(m) -> list:
    return [list(r) for r in m]


def _build(field, form, gens) -> FiniteRepresentation:
    rad = radical_of(form)
    dim = len(form)
    quo = _quotient(field, form, gens, rad)
    return FiniteRepresentation(field, dim, _mat(form), tuple(_mat(g) for g in gens), tuple(tuple(v) for v in rad), quo)


def check_orthogonal(form, g) -> bool:
    return exact.mat_equal(exact.matmul(exact.transpose(g), exact.matmul(form, g)), form)


def reduce(lattice: VinbergLattice, P: PrimeIdealData) -> FiniteRepresentation:
    """Entrywise residues of the lattice form and reflections."""
    form = [[residue(x, P) for x in row] for row in lattice.gram_k]
    gens = [[[residue(x, P) for x in row] for row in m] for m in lattice.reflections]
    for g in gens:
        if not check_orthogonal(form, g):
            raise CoxredError("reduced generator fails to preserve the reduced form")
    return _build(P.field, form, gens)


def from_matrices(field: ResidueField, form, generators) -> FiniteRepresentation:
    """Representation from explicit integer-coded matrices."""
    conv = lambda m: [[x if isinstance(x, ResidueElement) else ResidueElement(field, field.join(x)) for x in row] for row in m]
    return _build(field, conv(form), [conv(g) for g in generators])


def rebase(rep: FiniteRepresentation, t) -> FiniteRepresentation:
    """Change coordinates by ``x_new = t x_old`` (t invertible over F_q)."""
    t = _lists(t)
    ti = exact.inverse(t)
    form = exact.matmul(exact.transpose(ti), exact.matmul(_lists(rep.form), ti))
    gens = [exact.matmul(t, exact.matmul(_lists(g), ti)) for g in rep.generators]
    return _build(rep.field, form, gens)


def e_frame_representation(lattice: VinbergLattice, P: PrimeIdealData) -> FiniteRepresentation:
    """The reduction written in the e_i coordinates (when each basis vector
    is a unit multiple of some e_i modulo P)."""
    t = lattice.e_frame()
    if t is None:
        raise CoxredError("basis vectors are not k-multiples of distinct e_i")
    tr = [[residue(x, P) for x in row] for row in t]
    if exact.determinant(tr) == 0:
        raise CoxredError("basis coefficients are not units modulo the prime")
    return rebase(reduce(lattice, P), tr)


def radical_of(form) -> list:
    """Kernel of the form, as reduced echelon rows (leading entry 1)."""
    null = exact.nullspace(_lists(form))
    if not null:
        return []
    ech, pivots = exact.row_echelon(null)
    return [list(r) for r in ech[: len(pivots)]]


def radical(rep: FiniteRepresentation) -> list:
    return [list(v) for v in rep.radical_basis]


def _quotient(field, form, gens, rad) -> Quotient:
    dim = len(form)
    one = ResidueElement(field, 1)
    zero = ResidueElement(field, 0)
    if not rad:
        return Quotient(dim, _mat(form), tuple(_mat(g) for g in gens), tuple(range(dim)), _mat(exact.identity(dim, one)))
    ech, pivots = exact.row_echelon([list(v) for v in rad])
    complement = [j for j in range(dim) if j not in pivots]
    cols = [[one if i == j else zero for i in range(dim)] for j in complement] + [list(r) for r in ech[: len(pivots)]]
    b = exact.transpose(cols)
    bi = exact.inverse(b)
    k = len(complement)
    new_form = exact.matmul(exact.transpose(b), exact.matmul(_lists(form), b))
    form_w = [row[:k] for row in new_form[:k]]
    gens_w = []
    for g in gens:
        m = exact.matmul(bi, exact.matmul(_lists(g), b))
        gens_w.append([row[:k] for row in m[:k]])
    return Quotient(k, _mat(form_w), tuple(_mat(g) for g in gens_w), tuple(complement), _mat(b))


def quotient_rep(rep: FiniteRepresentation) -> tuple[int, tuple, tuple]:
    q = rep.quotient
    return q.dim, q.form, q.generators


def quotient_coordinates(rep: FiniteRepresentation, vector) -> list:
    """Coordinates in W of the class of ``vector`` modulo the radical."""
    b = _lists(rep.quotient.change)
    y = exact.solve(b, list(vector))
    return y[: rep.quotient.dim]


# ---------------------------------------------------------------------------
# classification of regular forms over F_q, q odd


def _bil(form, x, y):
    return sum((x[i] * form[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j]),
               x[0] - x[0])


def _projective_vectors(field: ResidueField, n: int):
    zero = ResidueElement(field, 0)
    one = ResidueElement(field, 1)
    els = field.elements()
    for lead in range(n):
        for tail in itertools.product(els, repeat=n - lead - 1):
            yield [zero] * lead + [one] + list(tail)


def _orthogonal_complement(form, basis, sub):
    """Vectors (in ambient coordinates) spanning sub^perp inside span(basis)."""
    # solve for coefficients c with B(sum c_k basis_k, s) = 0 for each s in sub
    rows = [[_bil(form, b, s) for b in basis] for s in sub]
    coeffs = exact.nullspace(rows)
    return [[sum((c[k] * basis[k][i] for k in range(len(basis))), c[0] - c[0]) for i in range(len(basis[0]))]
            for c in coeffs]


def classify_form(form, field: Optional[ResidueField] = None, cap: int = ISOTROPIC_SEARCH_CAP) -> FormClass:
    """Witt index and type of a nondegenerate symmetric bilinear form.

    ``form`` is the Gram matrix B, with quadratic form q(x) = B(x, x)/2.
    Hyperbolic pairs (g, h) are returned with q(g) = q(h) = 0, B(g, h) = 1.
    """
    form = _lists(form)
    n = len(form)
    if field is None:
        field = form[0][0].field
    if field.p == 2:
        raise CoxredError("quadratic forms in characteristic 2 are not classified")
    if exact.determinant(form) == 0:
        raise CoxredError("form is degenerate")
    one = ResidueElement(field, 1)
    zero = ResidueElement(field, 0)
    basis = [[one if i == j else zero for i in range(n)] for j in range(n)]
    pairs = []
    while len(basis) >= 2:
        # every form in three or more variables over a finite field has a
        # nontrivial zero, so three basis vectors always suffice
        m = min(len(basis), 3)
        if field.q ** (m - 1) > cap:
            raise CoxredError(f"isotropic search over F_{field.q}^{m} exceeds the cap")
        iso = None
        for c in _projective_vectors(field, m):
            v = [sum((c[k] * basis[k][i] for k in range(m)), zero) for i in range(n)]
            if _bil(form, v, v) == 0:
                iso = v
                break
        if iso is None:
            break
        partner = next(b for b in basis if _bil(form, iso, b) != 0)
        partner = [x / _bil(form, iso, partner) for x in partner]
        half = _bil(form, partner, partner) / ResidueElement(field, field.join(2))
        partner = [y - half * x for x, y in zip(iso, partner)]
        pairs.append((tuple(iso), tuple(partner)))
        basis = _orthogonal_complement(form, basis, [iso, partner])
    witt = len(pairs)
    if n % 2 == 0:
        return FormClass(n, witt, "+" if 2 * witt == n else "-", None, tuple(pairs))
    det = exact.determinant(form)
    # discriminant of q = B/2 in odd dimension
    disc = det / ResidueElement(field, field.join(2)) ** n
    kind = "square" if field.is_square(disc.code) else "nonsquare"
    return FormClass(n, witt, None, kind, tuple(pairs))


def orthogonal_group_order(dim: int, q: int, epsilon: Optional[str] = None) -> int:
    """|O^epsilon_dim(q)| for odd q."""
    if q % 2 == 0:
        raise ValueError("only odd q")
    if dim == 0:
        return 1
    m = dim // 2
    prod = 1
    if dim % 2:
        for i in range(1, m + 1):
            prod *= q ** (2 * i) - 1
        return 2 * q ** (m * m) * prod
    if epsilon not in ("+", "-"):
        raise ValueError("even dimension needs epsilon '+' or '-'")
    for i in range(1, m):
        prod *= q ** (2 * i) - 1
    sgn = 1 if epsilon == "+" else -1
    return 2 * q ** (m * (m - 1)) * (q ** m - sgn) * prod


# ---------------------------------------------------------------------------
# conversion for the enumeration engine


def to_prime_field_arrays(field: ResidueField, matrices) -> list[np.ndarray]:
    """Integer arrays over F_p; F_{p^2} matrices are blown up to 2n x 2n
    through the regular representation on the basis (1, t)."""
    out = []
    for m in matrices:
        n = len(m)
        if field.degree == 1:
            out.append(np.array([[x.code for x in row] for row in m], dtype=np.int64))
            continue
        a = np.zeros((2 * n, 2 * n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                a[2 * i:2 * i + 2, 2 * j:2 * j + 2] = field.embed_matrix(m[i][j].code)
        out.append(a)
    return out


def form_text(rep_form, names=None) -> Optional[str]:
    """Quadratic form q(x) = B(x, x)/2 as a polynomial string, with
    coefficients written as balanced residues over a prime field.  None in
    characteristic 2, where B does not determine q."""
    n = len(rep_form)
    field = rep_form[0][0].field
    if field.p == 2:
        return None
    names = names or [f"x{i + 1}" for i in range(n)]
    half = ResidueElement(field, field.join(2)) ** -1
    terms = []
    for i in range(n):
        c = rep_form[i][i] * half
        if c:
            terms.append((c, f"{names[i]}^2"))
        for j in range(i + 1, n):
            c = rep_form[i][j]
            if c:
                terms.append((c, f"{names[i]}*{names[j]}"))
    if not terms:
        return "0"
    out = []
    for k, (c, t) in enumerate(terms):
        if field.degree == 1:
            v = c.balanced()
            sign = "-" if v < 0 else "+"
            body = t if abs(v) == 1 else f"{abs(v)}*{t}"
        else:
            text = c.text()
            sign = "+"
            body = t if text == "1" else (f"{text}*{t}" if text.isdigit() else f"({text})*{t}")
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)
