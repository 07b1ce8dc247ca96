import pytest

from coxred import finred, tensorid
from coxred.coxdiagram import coxeter_presentation, finite_type, parse_diagram
from coxred.errors import CoxredError
from coxred.groupengine import (
    FpMat,
    abelianization,
    closure,
    coset_table_from_permutations,
    reidemeister_schreier,
    rs_images,
    schreier_coset_table,
    tietze_images,
    tietze_simplify,
)
from coxred.homology import direct_homology, even_generator_pairs, kernel_homology, sign_images
from coxred.numberfield import splitting
from coxred.tensorid import MatrixPair, tensor_action
from coxred.vinberg import build_lattice

# pipeline output for the Davis frame, frozen at build time
FROZEN_PAIRS = [
    ([5, 4], ((1, 1), (0, 1)), ((1, 4), (0, 1))),
    ([5, 3], ((0, 1), (4, 0)), ((0, 4), (1, 0))),
    ([5, 2], ((2, 4), (0, 3)), ((3, 1), (0, 2))),
    ([5, 1], ((2, 0), (0, 3)), ((3, 0), (0, 2))),
]


@pytest.fixture(scope="module")
def u_images(rep5):
    frame = tensorid.davis_frame(rep5)
    return [frame.to_u(m) for m in tensorid.quotient_matrices(rep5)]


def test_even_generator_pairs(u_images):
    pairs = even_generator_pairs(u_images)
    got = [(p["word"], tuple(map(tuple, p["pair"]["sigma"])), tuple(map(tuple, p["pair"]["tau"]))) for p in pairs]
    assert got == FROZEN_PAIRS


def test_even_pairs_reassemble(u_images):
    last = u_images[-1]
    for word, s, t in FROZEN_PAIRS:
        assert tensor_action(MatrixPair.make(s, t)) == last * u_images[word[1] - 1]


def test_delta3_staged_homology(delta3, rep5):
    res = kernel_homology(delta3, rep5, davis=True)
    assert res.h1.free_rank == 24 and res.h1.torsion == ()
    assert [s.index for s in res.stages] == [2, 60, 120]
    assert res.total_index == 14400


def test_generic_frame_gives_same_homology(delta3, rep5):
    assert kernel_homology(delta3, rep5).h1 == kernel_homology(delta3, rep5, davis=True).h1


@pytest.mark.parametrize("text", ["[3,3,5]", "[3,5]", "[3,3,3]"])
def test_finite_groups_embed(text):
    """A finite group mapping injectively has trivial kernel."""
    d = parse_diagram(text)
    p, D = (5, 5) if "5" in text else (3, None)
    rep = finred.reduce(build_lattice(d), splitting(p, D))
    gens = finred.to_prime_field_arrays(rep.field, rep.quotient.generators)
    from coxred.groupengine import enumerate_group

    if enumerate_group(gens, p).order != finite_type(d).total_order:
        pytest.skip("reduction is not injective")
    res = kernel_homology(d, rep)
    assert res.h1.free_rank == 0 and res.h1.torsion == ()


def test_affine_kernel_is_translations():
    d = parse_diagram("[4,4]")
    rep = finred.reduce(build_lattice(d), splitting(3, None))
    res = kernel_homology(d, rep)
    assert res.stages[0].name == "direct" and res.stages[0].index == 8
    assert res.h1.free_rank == 2 and res.h1.torsion == ()


def test_direct_budget_refusal(delta3, rep5):
    mats = tensorid.quotient_matrices(rep5)
    with pytest.raises(CoxredError):
        direct_homology(coxeter_presentation(delta3), mats, FpMat.identity(4, 5), relator_budget=1000)


def _coset_permutations(group, subgroup, gens):
    """Right action of ``gens`` on the right cosets of ``subgroup``."""
    label = {}
    reps = []
    for g in group:
        if g in label:
            continue
        k = len(reps)
        reps.append(g)
        for h in subgroup:
            label[h * g] = k
    return [[label[r * s] for r in reps] for s in gens]


def test_staged_matches_one_shot_rewriting(delta3, u_images):
    """Kernel of the sign and first-factor maps, two ways: two rewriting
    stages, and one rewriting over cosets of the matching stabiliser."""
    pres = coxeter_presentation(delta3)
    # staged
    table = schreier_coset_table(pres, sign_images(5, 5))
    plus = reidemeister_schreier(pres, table)
    carried = rs_images(plus, table, u_images)
    plus_s = tietze_simplify(plus)
    carried = tietze_images(plus_s, carried)
    firsts = [tensorid.first_factor(m) for m in carried]
    table2 = schreier_coset_table(plus_s, firsts)
    staged = abelianization(reidemeister_schreier(plus_s, table2))
    # one shot
    group = closure(u_images, FpMat.identity(4, 5))
    ident, neg = ((1, 0), (0, 1)), ((4, 0), (0, 4))
    sub = []
    for m in group:
        pair = tensorid.decompose(m)
        if pair is not None and pair.sigma in (ident, neg):
            sub.append(m)
    assert len(sub) == 120
    perms = _coset_permutations(group, sub, u_images)
    one_shot = abelianization(reidemeister_schreier(pres, coset_table_from_permutations(perms)))
    assert len(perms[0]) == 120
    assert staged == one_shot
