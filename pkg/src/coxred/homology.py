"""First homology of the kernel of a reduction, by staged rewriting.

The kernel of the reflection group onto its image is reached through three
normal subgroups, each the kernel of a map onto a small finite group:
the sign map, the first tensor factor modulo sign, then the second tensor
factor.  Each stage is Reidemeister-Schreier on a coset table read off the
finite image, followed by Tietze simplification.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from coxred.coxdiagram import CoxeterDiagram, GroupPresentation, coxeter_presentation
from coxred.errors import CoxredError, DecompositionFailure
from coxred.finred import FiniteRepresentation
from coxred.groupengine import (
    FpMat,
    SNFResult,
    abelianization,
    reidemeister_schreier,
    rs_images,
    schreier_coset_table,
    tietze_images,
    tietze_simplify,
)
from coxred import tensorid

log = logging.getLogger(__name__)

DIRECT_RELATOR_BUDGET = 200_000


@dataclass
class Stage:
    name: str
    index: int
    generators: int
    relators: int
    simplified_generators: int
    simplified_relators: int
    seconds: float


@dataclass
class HomologyResult:
    h1: SNFResult
    stages: list = field(default_factory=list)
    even_pairs: list = field(default_factory=list)

    @property
    def total_index(self) -> int:
        out = 1
        for s in self.stages:
            out *= s.index
        return out

    def to_dict(self) -> dict:
        return {
            "h1_rank": self.h1.free_rank,
            "h1_torsion": list(self.h1.torsion),
            "index": self.total_index,
            "stages": [
                {k: v for k, v in s.__dict__.items() if k != "seconds"} for s in self.stages
            ],
            "even_generator_pairs": self.even_pairs,
        }


def _stage(name, pres, images_small, images_carried, simplify=True, cap=None):
    t0 = time.time()
    table = schreier_coset_table(pres, images_small, cap=cap)
    sub = reidemeister_schreier(pres, table)
    carried = rs_images(sub, table, images_carried) if images_carried is not None else None
    out = sub
    if simplify:
        out = tietze_simplify(sub)
        if carried is not None:
            carried = tietze_images(out, carried)
    st = Stage(name, table.index, sub.generator_count, len(sub.relators),
               out.generator_count, len(out.relators), time.time() - t0)
    log.info("stage %s: index %d, %d gens / %d rels -> %d gens / %d rels (%.1fs)", name, st.index,
             st.generators, st.relators, st.simplified_generators, st.simplified_relators, st.seconds)
    return out, carried, st


def sign_images(n: int, p: int) -> list[FpMat]:
    return [FpMat([[p - 1]], p)] * n


def two_step_homology(pres: GroupPresentation, images_u: list[FpMat]) -> HomologyResult:
    """H_1 of the kernel of ``generator -> images_u`` (matrices on the tensor
    square U), via the sign, PSL and SL stages."""
    p = images_u[0].p
    stages = []
    plus, carried, st = _stage("sign", pres, sign_images(pres.generator_count, p), images_u)
    stages.append(st)
    if any(tensorid.decompose(m) is None for m in carried):
        raise DecompositionFailure("an even element does not decompose as a tensor product")
    firsts = [tensorid.first_factor(m) for m in carried]
    k1, carried, st = _stage("first-factor", plus, firsts, carried)
    stages.append(st)
    seconds = [tensorid.second_factor(m) for m in carried]
    final, _, st = _stage("second-factor", k1, seconds, None, simplify=False)
    stages.append(st)
    t0 = time.time()
    h1 = abelianization(final)
    log.info("abelianization %s (%.1fs)", h1.text(), time.time() - t0)
    return HomologyResult(h1, stages)


def direct_homology(pres: GroupPresentation, images, identity=None,
                    relator_budget: int = DIRECT_RELATOR_BUDGET) -> HomologyResult:
    """H_1 of the kernel by a single rewriting step; refused when the
    rewritten presentation would exceed ``relator_budget`` relators."""
    t0 = time.time()
    try:
        table = schreier_coset_table(pres, images, identity=identity, cap=relator_budget)
    except CoxredError:
        raise CoxredError(f"direct rewriting refused: the image has more than {relator_budget} "
                          "elements (relator budget)") from None
    if table.index * len(pres.relators) > relator_budget:
        raise CoxredError(f"direct rewriting at index {table.index} exceeds the relator budget")
    sub = reidemeister_schreier(pres, table)
    st = Stage("direct", table.index, sub.generator_count, len(sub.relators),
               sub.generator_count, len(sub.relators), time.time() - t0)
    return HomologyResult(abelianization(sub), [st])


def even_generator_pairs(images_u: list[FpMat]) -> list[dict]:
    """Pairs for r_n r_i, i = n-1, ..., 1 (the last node paired with each other)."""
    last = images_u[-1]
    out = []
    for i in range(len(images_u) - 2, -1, -1):
        pair = tensorid.decompose(last * images_u[i])
        out.append({"word": [len(images_u), i + 1], "pair": pair.to_dict() if pair else None})
    return out


def kernel_homology(d: CoxeterDiagram, rep: FiniteRepresentation, davis: bool = False,
                    relator_budget: int = DIRECT_RELATOR_BUDGET) -> HomologyResult:
    """Homology of the kernel of the reduction ``rep`` of the group of ``d``.

    With a 4-dimensional plus-type quotient over a prime field the staged
    route is used; otherwise a single rewriting step within the budget.
    """
    pres = coxeter_presentation(d)
    mats = tensorid.quotient_matrices(rep)
    if rep.field.degree == 1 and rep.quotient.dim == 4 and rep.field.p != 2:
        try:
            frame = tensorid.davis_frame(rep) if davis else tensorid.generic_frame(rep)
        except CoxredError:
            frame = None
        if frame is not None:
            images_u = [frame.to_u(m) for m in mats]
            res = two_step_homology(pres, images_u)
            res.even_pairs = even_generator_pairs(images_u)
            return res
    ident = FpMat.identity(rep.quotient.dim, rep.field.p) if rep.field.degree == 1 else None
    if ident is None:
        from coxred.finred import to_prime_field_arrays

        arrs = to_prime_field_arrays(rep.field, rep.quotient.generators)
        mats = [FpMat(a, rep.field.p) for a in arrs]
        ident = FpMat.identity(len(arrs[0]), rep.field.p)
    return direct_homology(pres, mats, ident, relator_budget)
