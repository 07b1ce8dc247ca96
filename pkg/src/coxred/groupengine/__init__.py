"""Finite group plumbing: enumeration, coset tables, rewriting, homology."""

from coxred.groupengine.cosets import (
    CosetTable,
    coset_table_from_permutations,
    reidemeister_schreier,
    rs_images,
    schreier_coset_table,
    schreier_transversal,
)
from coxred.groupengine.enumeration import (
    DEFAULT_CAP,
    ElementTable,
    enumerate_group,
    group_order,
    lifted_kernel,
    lifted_order,
    subgroup_order,
)
from coxred.groupengine.matrices import FpMat, ProjMat, closure
from coxred.groupengine.snf import SNFResult, abelianization, smith_normal_form
from coxred.groupengine.tietze import tietze_images, tietze_simplify
from coxred.groupengine.words import canonical, cyclic_reduce, free_reduce, invert

__all__ = [
    "CosetTable", "DEFAULT_CAP", "ElementTable", "FpMat", "ProjMat", "SNFResult",
    "abelianization", "canonical", "closure", "coset_table_from_permutations", "cyclic_reduce",
    "enumerate_group", "free_reduce", "group_order", "invert", "lifted_kernel", "lifted_order", "reidemeister_schreier",
    "rs_images", "schreier_coset_table", "schreier_transversal", "smith_normal_form",
    "subgroup_order", "tietze_images", "tietze_simplify",
]
