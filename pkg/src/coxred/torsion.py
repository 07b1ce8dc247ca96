"""Torsion-freeness of the kernel of a reduction.

Two criteria: an arithmetic one (the ideal generator avoids 2, and 3 when 3
ramifies) and a geometric one comparing each vertex stabiliser with its
image.  Ideal vertices are refined into the finite stabilisers of the
vertices of their link.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from coxred import exact
from coxred.coxdiagram import CoxeterDiagram, affine_type, finite_type, gram_matrix
from coxred.errors import CapExceeded, CoxredError, NotPID
from coxred.finred import FiniteRepresentation, to_prime_field_arrays
from coxred.groupengine import enumerate_group
from coxred.numberfield import PrimeIdealData, divides, field_discriminant, qfe

FINITE = "finite"
IDEAL = "ideal-refined"


def minkowski_torsion_free(P: PrimeIdealData, D: Optional[int] = None) -> bool:
    """True guarantees a torsion-free kernel; False is inconclusive."""
    D = P.D if D is None else D
    if D is None:
        return P.p != 2
    alpha = P.require_generator()
    if divides(alpha, qfe(2, 0, D)):
        return False
    if field_discriminant(D) % 3 == 0 and divides(alpha, qfe(3, 0, D)):
        return False
    return True


@dataclass(frozen=True)
class VertexGroup:
    kind: str
    vertex: tuple  # node subset of the vertex
    subsets: tuple  # finite node subsets whose stabilisers are compared
    orders: tuple  # abstract order of each subset

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertex": list(self.vertex), "subsets": [list(s) for s in self.subsets]}


def _ideal_refinement(d: CoxeterDiagram, subset: tuple) -> Optional[list[tuple]]:
    """Finite subsets obtained by dropping one node from every affine
    component of ``subset``; None when some component is neither finite
    nor affine."""
    sub = d.induced(subset)
    comps = sub.components()
    affine_flags = affine_type(sub)
    finite_nodes, choices = [], []
    for comp, is_aff in zip(comps, affine_flags):
        original = tuple(subset[k - 1] for k in comp)
        if is_aff:
            choices.append([tuple(x for x in original if x != drop) for drop in original])
        elif finite_type(d.induced(original)) is not None:
            finite_nodes.extend(original)
        else:
            return None
    if not choices:
        return None
    out = []
    for pick in itertools.product(*choices):
        s = tuple(sorted(finite_nodes + [x for part in pick for x in part]))
        if finite_type(d.induced(s)) is None:
            return None
        out.append(s)
    return sorted(out)


def vertex_groups(d: CoxeterDiagram) -> list[VertexGroup]:
    """Finite vertices are corank-1 finite subdiagrams; corank-1 subdiagrams
    with affine components are ideal vertices.  A diagram that is itself
    affine is one ideal vertex."""
    gram = gram_matrix(d)
    pos, neg, zero = exact.signature(gram)
    if neg == 0 and zero > 0:
        candidates = [tuple(d.nodes)]
    else:
        candidates = list(itertools.combinations(d.nodes, d.node_count - 1))
    out = []
    for s in candidates:
        rep = finite_type(d.induced(s))
        if rep is not None and len(candidates) > 1:
            out.append(VertexGroup(FINITE, s, (s,), (rep.total_order,)))
            continue
        refined = _ideal_refinement(d, s)
        if refined:
            orders = tuple(finite_type(d.induced(r)).total_order for r in refined)
            out.append(VertexGroup(IDEAL, s, tuple(refined), orders))
    return out


@dataclass(frozen=True)
class TorsionVerdict:
    verdict: str
    minkowski: Optional[bool]
    certificate: tuple  # dicts: vertex, kind, subset, abstract_order, image_order

    def to_dict(self) -> dict:
        return {"minkowski": self.minkowski, "verdict": self.verdict, "certificate": list(self.certificate)}


def image_order(rep: FiniteRepresentation, subset) -> int:
    """Order of the group generated by the quotient images of the nodes in
    ``subset`` (1-based)."""
    gens = [rep.quotient.generators[i - 1] for i in subset]
    if not gens:
        return 1
    return enumerate_group(to_prime_field_arrays(rep.field, gens), rep.field.p).order


def _bounded_image_order(rep, subset, bound: int) -> int:
    gens = [rep.quotient.generators[i - 1] for i in subset]
    try:
        return enumerate_group(to_prime_field_arrays(rep.field, gens), rep.field.p, cap=bound + 1).order
    except CapExceeded:
        raise CoxredError(f"image of a finite stabiliser exceeds its order {bound}") from None


def check_torsion_free(d: CoxeterDiagram, rep: FiniteRepresentation,
                       P: Optional[PrimeIdealData] = None) -> TorsionVerdict:
    minkowski = None
    if P is not None:
        try:
            minkowski = minkowski_torsion_free(P)
        except NotPID:
            minkowski = None
    cert = []
    all_equal = True
    for vg in vertex_groups(d):
        for s, order in zip(vg.subsets, vg.orders):
            img = _bounded_image_order(rep, s, order)
            all_equal &= img == order
            cert.append({"vertex": list(vg.vertex), "kind": vg.kind, "subset": list(s),
                         "abstract_order": order, "image_order": img})
    if minkowski and not all_equal:
        raise CoxredError("arithmetic and geometric torsion criteria disagree")
    # the certificate decides whenever it has entries; the arithmetic
    # guarantee is reported alongside it in ``minkowski``
    if not all_equal:
        verdict = "has_torsion"
    elif not cert and minkowski:
        verdict = "guaranteed_by_minkowski"
    else:
        verdict = "torsion_free"
    return TorsionVerdict(verdict, minkowski, tuple(cert))
