import itertools
import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxred import finred
from coxred.coxdiagram import GroupPresentation, coxeter_presentation, parse_diagram
from coxred.errors import CoxredError
from coxred.groupengine import (
    FpMat,
    abelianization,
    coset_table_from_permutations,
    enumerate_group,
    free_reduce,
    lifted_order,
    reidemeister_schreier,
    rs_images,
    schreier_coset_table,
    smith_normal_form,
    subgroup_order,
    tietze_simplify,
)


@pytest.fixture(scope="module")
def w_table(rep5):
    gens = finred.to_prime_field_arrays(rep5.field, rep5.quotient.generators)
    return enumerate_group(gens, 5)


# -- enumeration ---------------------------------------------------------------------

def test_delta3_image_order(w_table):
    assert w_table.order == 14400


def test_enumeration_of_nothing():
    assert enumerate_group([], 5).order == 1


@pytest.mark.parametrize("subset, order", [
    ((0, 1, 2, 3), 14400),
    ((1, 2, 3, 4), 14400),
    ((0, 1, 3, 4), 100),
    ((2,), 2),
    ((0, 2), 4),
    ((0, 1, 2, 3, 4), 14400),
])
def test_subgroup_orders(w_table, subset, order):
    assert subgroup_order(w_table, subset) == order


def test_enumeration_is_deterministic(rep5):
    gens = finred.to_prime_field_arrays(rep5.field, rep5.quotient.generators)
    a = enumerate_group(gens, 5)
    b = enumerate_group(gens, 5)
    assert np.array_equal(a.elements, b.elements)
    assert a.index == b.index
    assert np.array_equal(a.mult, b.mult)


def test_multiplication_table_is_right_multiplication(w_table, rep5):
    gens = finred.to_prime_field_arrays(rep5.field, rep5.quotient.generators)
    rng = random.Random(1)
    for _ in range(50):
        i = rng.randrange(w_table.order)
        g = rng.randrange(len(gens))
        prod = w_table.elements[i] @ np.array(gens[g]) % 5
        assert w_table.index_of(prod) == w_table.mult[i, g]


def test_cap_is_enforced(rep5):
    gens = finred.to_prime_field_arrays(rep5.field, rep5.quotient.generators)
    with pytest.raises(CoxredError):
        enumerate_group(gens, 5, cap=1000)


def _random_invertible(rng, n, p):
    while True:
        m = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)])
        if FpMat(m.tolist(), p).det():
            return m


def _affine(a, b, p):
    n = len(a)
    m = np.zeros((n + 1, n + 1), dtype=np.int64)
    m[:n, :n] = a
    m[:n, n] = b
    m[n, n] = 1
    return m % p


@pytest.mark.parametrize("seed", range(6))
def test_lifted_order_matches_direct_enumeration(seed):
    """Affine maps over F_3 project onto their linear parts."""
    rng = random.Random(seed)
    p = 3
    lin = [_random_invertible(rng, 2, p) for _ in range(2)]
    if seed % 2:
        lin.append(np.eye(2, dtype=np.int64))  # a pure translation
    full = [_affine(a, [rng.randrange(p) for _ in range(2)], p) for a in lin]
    q, k = lifted_order(lin, full, p)
    assert q == enumerate_group(lin, p).order
    assert q * k == enumerate_group(full, p).order


# -- Smith normal form ---------------------------------------------------------------

def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).factors == (1, 6)
    assert smith_normal_form([[2, 4], [6, 8]]).factors == (2, 4)
    res = smith_normal_form([[0, 0, 0]])
    assert res.factors == () and res.free_rank == 3


def _det(m):
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _det(minor)
    return total


def _minor_gcd(m, k):
    g = 0
    for rows in itertools.combinations(range(len(m)), k):
        for cols in itertools.combinations(range(len(m[0])), k):
            g = gcd(g, _det([[m[r][c] for c in cols] for r in rows]))
    return g


def test_snf_matches_minor_gcds():
    rng = random.Random(100)
    for _ in range(100):
        shape = (rng.randint(1, 4), rng.randint(1, 4))
        zero_row = rng.random() < 0.2
        m = [[0 if zero_row and i == 0 else rng.randint(-9, 9) for _ in range(shape[1])]
             for i in range(shape[0])]
        res = smith_normal_form(m)
        r = len(res.factors)
        assert res.free_rank == shape[1] - r
        prod = 1
        for k in range(1, min(shape) + 1):
            if k <= r:
                prod *= res.factors[k - 1]
                assert _minor_gcd(m, k) == prod, m
            else:
                assert _minor_gcd(m, k) == 0, m
        for a, b in zip(res.factors, res.factors[1:]):
            assert b % a == 0


def test_abelianization_examples():
    res = abelianization(GroupPresentation(1, ((1, 1),)))
    assert res.torsion == (2,) and res.free_rank == 0
    genus2 = GroupPresentation(4, ((1, 2, -1, -2, 3, 4, -3, -4),))
    assert abelianization(genus2).free_rank == 4
    assert abelianization(genus2).torsion == ()
    assert abelianization(GroupPresentation(2)).free_rank == 2


def test_abelianization_of_coxeter_group(delta3):
    # five involutions, all joined by odd labels: Z/2
    res = abelianization(coxeter_presentation(delta3))
    assert res.torsion == (2,) and res.free_rank == 0
    res = abelianization(coxeter_presentation(parse_diagram("[4]")))
    assert res.torsion == (2, 2)


def test_snf_text():
    assert abelianization(GroupPresentation(3, ((1, 1, 1), (2, 2)))).text() == "Z + Z/6"


# -- Tietze --------------------------------------------------------------------------

def test_tietze_eliminates_a_generator():
    out = tietze_simplify(GroupPresentation(2, ((1, 2),)), check=True)
    assert out.generator_count == 1
    assert abelianization(out).free_rank == 1


def test_tietze_keeps_target():
    pres = GroupPresentation(3, ((1, 2), (2, 3)))
    out = tietze_simplify(pres, target_generators=2)
    assert out.generator_count == 2


@st.composite
def presentations(draw):
    n = draw(st.integers(1, 4))
    letters = st.sampled_from([s * g for g in range(1, n + 1) for s in (1, -1)])
    rels = draw(st.lists(st.lists(letters, min_size=1, max_size=8), max_size=5))
    return GroupPresentation(n, tuple(tuple(r) for r in rels))


@settings(max_examples=150, deadline=None)
@given(presentations())
def test_tietze_preserves_abelianization(pres):
    out = tietze_simplify(pres, check=True)
    assert abelianization(out) == abelianization(pres)
    assert out.generator_count <= pres.generator_count


# -- coset tables and Reidemeister-Schreier ------------------------------------------

def test_coset_table_sign_and_trivial(delta3):
    pres = coxeter_presentation(delta3)
    minus = FpMat([[4]], 5)
    assert schreier_coset_table(pres, [minus] * 5).index == 2
    one = FpMat([[1]], 5)
    table = schreier_coset_table(pres, [one] * 5, identity=one)
    assert table.index == 1
    sub = reidemeister_schreier(pres, table)
    assert sub.generator_count == 5
    assert abelianization(sub) == abelianization(pres)


def _compose(a, b):
    """a then b, matching the right action on cosets."""
    return tuple(b[x] for x in a)


def _inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _closure(gens):
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _compose(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def _orbit_action(gens, base, act):
    """Permutations of the orbit of ``base`` under point permutations ``gens``."""
    orbit = [base]
    where = {base: 0}
    k = 0
    while k < len(orbit):
        for g in gens:
            y = act(orbit[k], g)
            if y not in where:
                where[y] = len(orbit)
                orbit.append(y)
        k += 1
    return [tuple(where[act(x, g)] for x in orbit) for g in gens]


def _brute_abelianized_stabilizer(gens, coset_perms):
    """Torsion counts of H/[H,H] for H = stabilizer of coset 0, from a
    faithful action glued to the coset action."""
    n = len(gens[0])
    joined = [g + tuple(n + c for c in cp) for g, cp in zip(gens, coset_perms)]
    group = _closure(joined)
    h = [g for g in group if g[n] == n]
    comm = _closure([_compose(_compose(_inverse(a), _inverse(b)), _compose(a, b)) for a in h for b in h])
    size = len(h) // len(comm)

    def count(m):
        total = 0
        for x in h:
            y = tuple(range(len(x)))
            for _ in range(m):
                y = _compose(y, x)
            total += y in comm
        return total // len(comm)

    return size, count


def _pentagon():
    s1 = tuple((-i) % 5 for i in range(5))
    s2 = tuple((1 - i) % 5 for i in range(5))
    return [s1, s2]


def _s4():
    return [(1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2)]


def _on_points(x, g):
    return g[x]


def _on_sets(x, g):
    return frozenset(g[i] for i in x)


def _on_tuples(x, g):
    return tuple(g[i] for i in x)


def _on_pairings(x, g):
    return frozenset(frozenset(g[i] for i in pair) for pair in x)


def _on_group(x, g):
    return _compose(x, g)


def _cases():
    pent = _pentagon()
    s4 = _s4()
    ident5 = tuple(range(5))
    ident4 = tuple(range(4))
    sign = lambda gens: [(1, 0)] * len(gens)
    return {
        "I2(5) trivial": ("[5]", pent, [(0,)] * 2),
        "I2(5) sign": ("[5]", pent, sign(pent)),
        "I2(5) vertices": ("[5]", pent, _orbit_action(pent, 0, _on_points)),
        "I2(5) edges": ("[5]", pent, _orbit_action(pent, frozenset({0, 1}), _on_sets)),
        "I2(5) regular": ("[5]", pent, _orbit_action(pent, ident5, _on_group)),
        "A3 sign": ("[3,3]", s4, sign(s4)),
        "A3 points": ("[3,3]", s4, _orbit_action(s4, 0, _on_points)),
        "A3 pairs": ("[3,3]", s4, _orbit_action(s4, frozenset({0, 1}), _on_sets)),
        "A3 ordered pairs": ("[3,3]", s4, _orbit_action(s4, (0, 1), _on_tuples)),
        "A3 pairings": ("[3,3]", s4, _orbit_action(
            s4, frozenset({frozenset({0, 1}), frozenset({2, 3})}), _on_pairings)),
        "A3 regular": ("[3,3]", s4, _orbit_action(s4, ident4, _on_group)),
    }


@pytest.mark.parametrize("name", sorted(_cases()))
def test_reidemeister_schreier_against_brute_force(name):
    text, gens, coset_perms = _cases()[name]
    pres = coxeter_presentation(parse_diagram(text))
    table = coset_table_from_permutations(coset_perms)
    assert table.index <= 24
    sub = reidemeister_schreier(pres, table)
    res = abelianization(sub)
    size, count = _brute_abelianized_stabilizer(gens, coset_perms)
    assert res.free_rank == 0
    prod = 1
    for d in res.torsion:
        prod *= d
    assert prod == size
    for m in range(2, size + 1):
        if size % m == 0:
            expected = 1
            for d in res.torsion:
                expected *= gcd(m, d)
            assert count(m) == expected, (name, m)


def test_rs_images_generate_the_even_subgroup(rep5, delta3):
    pres = coxeter_presentation(delta3)
    minus = FpMat([[4]], 5)
    table = schreier_coset_table(pres, [minus] * 5)
    sub = reidemeister_schreier(pres, table)
    gens = [FpMat(np.array(g).tolist(), 5)
            for g in finred.to_prime_field_arrays(rep5.field, rep5.quotient.generators)]
    images = rs_images(sub, table, gens)
    assert all(m.det() == 1 for m in images)
    assert enumerate_group([m.array() for m in images], 5).order == 7200
    # each subgroup relator maps to the identity
    ident = FpMat.identity(4, 5)
    for r in sub.relators:
        out = ident
        for x in r:
            out = out * (images[x - 1] if x > 0 else images[-x - 1].inverse())
        assert out == ident


def test_free_reduce():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
