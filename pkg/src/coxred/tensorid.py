"""Tensor-square model of the 4-dimensional split orthogonal group.

U = V (x) V for V = F_p^2 with the symplectic form f(x, y) = x1 y2 - x2 y1,
carrying g(v1 (x) v2, w1 (x) w2) = f(v1, w1) f(v2, w2).  Pairs (sigma, tau)
in SL(2, p) x SL(2, p) act by sigma (x) tau, and the swap of tensor factors
rho is an isometry of determinant -1.  Tensor basis order:
n1(x)n1, n1(x)n2, n2(x)n1, n2(x)n2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from coxred import exact
from coxred.errors import CoxredError, DecompositionFailure
from coxred.finred import FiniteRepresentation, quotient_coordinates
from coxred.groupengine.matrices import FpMat, ProjMat
from coxred.numberfield import ResidueElement

TENSOR_FORM = ((0, 0, 0, 1), (0, 0, -1, 0), (0, -1, 0, 0), (1, 0, 0, 0))

# Hyperbolic pairs (g1, h1), (g2, h2) in the e-basis of the Davis reduction mod sqrt 5
DAVIS_PAIRS = (
    ((1, -1, 0, 0, 0), (-1, 1, 1, 0, 0)),
    ((1, 0, 0, 0, 2), (-1, 0, 0, 0, 2)),
)


def _det2(m) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@dataclass(frozen=True)
class MatrixPair:
    """(sigma, tau) modulo simultaneous negation; sigma's first nonzero
    entry is kept in the lower half of F_p."""

    sigma: tuple
    tau: tuple
    p: int = 5

    @classmethod
    def make(cls, sigma, tau, p: int = 5) -> "MatrixPair":
        s = [[int(x) % p for x in row] for row in sigma]
        t = [[int(x) % p for x in row] for row in tau]
        if _det2(s) % p != 1 or _det2(t) % p != 1:
            raise ValueError("pair entries must have determinant 1")
        first = next(x for row in s for x in row if x)
        if first > (p - 1) // 2:
            s = [[-x % p for x in row] for row in s]
            t = [[-x % p for x in row] for row in t]
        return cls(tuple(map(tuple, s)), tuple(map(tuple, t)), p)

    def __mul__(self, other: "MatrixPair") -> "MatrixPair":
        s = (FpMat(self.sigma, self.p) * FpMat(other.sigma, self.p)).data
        t = (FpMat(self.tau, self.p) * FpMat(other.tau, self.p)).data
        return MatrixPair.make(s, t, self.p)

    def to_dict(self) -> dict:
        return {"sigma": [list(r) for r in self.sigma], "tau": [list(r) for r in self.tau]}


def tensor_form(p: int = 5) -> FpMat:
    return FpMat(TENSOR_FORM, p)


def tensor_action(pair: MatrixPair) -> FpMat:
    return FpMat(np.kron(np.array(pair.sigma), np.array(pair.tau)), pair.p)


def swap_rho(p: int = 5) -> FpMat:
    return FpMat([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], p)


def preserves_tensor_form(m: FpMat) -> bool:
    g = tensor_form(m.p)
    mt = FpMat([list(r) for r in zip(*m.data)], m.p)
    return mt * g * m == g


def decompose(m: FpMat) -> Optional[MatrixPair]:
    """The pair (sigma, tau) with sigma (x) tau = m, or None when m is not
    such a Kronecker product of determinant-1 factors."""
    p = m.p
    a = m.data
    blocks = {(c, r): [[a[2 * c + i][2 * r + j] for j in range(2)] for i in range(2)]
              for c in range(2) for r in range(2)}
    ref = next(((c, r) for c in range(2) for r in range(2) if any(x for row in blocks[c, r] for x in row)), None)
    if ref is None:
        return None
    tau = blocks[ref]
    i0, j0 = next((i, j) for i in range(2) for j in range(2) if tau[i][j])
    inv = pow(tau[i0][j0], p - 2, p)
    sigma = [[0, 0], [0, 0]]
    for (c, r), b in blocks.items():
        s = b[i0][j0] * inv % p
        if any((b[i][j] - s * tau[i][j]) % p for i in range(2) for j in range(2)):
            return None
        sigma[c][r] = s
    ds, dt = _det2(sigma) % p, _det2(tau) % p
    if ds == 0 or ds * dt % p != 1:
        return None
    # scale sigma by mu and tau by 1/mu with mu^2 = 1/det(sigma)
    target = pow(ds, p - 2, p)
    mu = next((x for x in range(1, p) if x * x % p == target), None)
    if mu is None:
        return None
    mu_inv = pow(mu, p - 2, p)
    return MatrixPair.make([[x * mu for x in row] for row in sigma], [[x * mu_inv for x in row] for row in tau], p)


def sl2_elements(p: int = 5) -> list[tuple]:
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        out.append(((a, b), (c, d)))
    return out


def omega_elements(p: int = 5) -> set:
    """All sigma (x) tau for sigma, tau in SL(2, p)."""
    sl = sl2_elements(p)
    return {FpMat(np.kron(np.array(s), np.array(t)), p) for s in sl for t in sl}


@dataclass(frozen=True)
class TensorFrame:
    """Identification of U with the quotient W of a reduction.

    ``matrix`` has columns the W-coordinates of g1, g2, -h2, h1, so
    W-coordinates = matrix * U-coordinates.
    """

    p: int
    matrix: FpMat
    pairs: tuple  # W-coordinates of (g1, h1), (g2, h2)

    def to_u(self, m_w: FpMat) -> FpMat:
        return self.matrix.inverse() * m_w * self.matrix

    def to_w(self, m_u: FpMat) -> FpMat:
        return self.matrix * m_u * self.matrix.inverse()


def _codes(vec) -> list[int]:
    return [x.code if isinstance(x, ResidueElement) else int(x) for x in vec]


def frame_from_pairs(p: int, form_w, pairs) -> TensorFrame:
    """Frame from hyperbolic pairs given in W-coordinates; checks isometry."""
    (g1, h1), (g2, h2) = [(_codes(g), _codes(h)) for g, h in pairs]
    cols = [g1, g2, [-x for x in h2], h1]
    s = FpMat([list(r) for r in zip(*cols)], p)
    form = FpMat([_codes(r) for r in form_w], p)
    st = FpMat([list(r) for r in zip(*s.data)], p)
    if st * form * s != tensor_form(p):
        raise DecompositionFailure("hyperbolic pairs do not give an isometry onto the tensor form")
    return TensorFrame(p, s, ((tuple(g1), tuple(h1)), (tuple(g2), tuple(h2))))


def davis_frame(rep: FiniteRepresentation) -> TensorFrame:
    """Frame for the Davis reduction, from its explicit hyperbolic pairs."""
    field = rep.field
    if field.degree != 1 or rep.quotient.dim != 4:
        raise CoxredError("the Davis frame needs a 4-dimensional quotient over a prime field")
    el = lambda v: [ResidueElement(field, x % field.p) for x in v]
    pairs = [(quotient_coordinates(rep, el(g)), quotient_coordinates(rep, el(h))) for g, h in DAVIS_PAIRS]
    return frame_from_pairs(field.p, rep.quotient.form, pairs)


def generic_frame(rep: FiniteRepresentation) -> TensorFrame:
    """Frame from the hyperbolic pairs found by the form classifier."""
    from coxred.finred import classify_form

    field = rep.field
    if field.degree != 1 or rep.quotient.dim != 4:
        raise CoxredError("tensor identification needs a 4-dimensional quotient over a prime field")
    cls = classify_form(rep.quotient.form, field)
    if cls.epsilon != "+":
        raise CoxredError(f"quotient form is {cls.name}, not of plus type")
    return frame_from_pairs(field.p, rep.quotient.form, cls.hyperbolic_pairs)


def quotient_matrices(rep: FiniteRepresentation) -> list[FpMat]:
    return [FpMat([[x.code for x in row] for row in g], rep.field.p) for g in rep.quotient.generators]


def first_factor(m: FpMat) -> ProjMat:
    """sigma modulo sign, a PSL(2, p) element."""
    pair = decompose(m)
    if pair is None:
        raise DecompositionFailure(f"{m.tolist()} is not in Omega")
    return ProjMat(pair.sigma, m.p)


def second_factor(m: FpMat) -> FpMat:
    """tau, normalized so that sigma = +I; defined when sigma = +-I."""
    pair = decompose(m)
    if pair is None:
        raise DecompositionFailure(f"{m.tolist()} is not in Omega")
    p = m.p
    ident = ((1, 0), (0, 1))
    neg = ((p - 1, 0), (0, p - 1))
    if pair.sigma == ident:
        return FpMat(pair.tau, p)
    if pair.sigma == neg:
        return -FpMat(pair.tau, p)
    raise DecompositionFailure("first factor is not central")


def quotient_homs(images_u):
    """The PSL-valued and SL-valued factor maps applied to the given images.

    Returns (first factor images, second factor map).  Every image must
    decompose; the second map is returned as a function because it is only
    defined on elements with trivial first factor.
    """
    firsts = [first_factor(m) for m in images_u]
    return firsts, second_factor
