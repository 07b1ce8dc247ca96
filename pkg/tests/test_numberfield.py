import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxred.errors import NotInField, NotIntegral, NotPID
from coxred.numberfield import (
    MultiQuadElement,
    QuadraticFieldElement,
    coerce_to_quadratic,
    divides,
    field_discriminant,
    format_multiquad,
    format_quadratic,
    is_integral,
    is_prime,
    omega,
    parse_multiquad,
    parse_quadratic,
    qfe,
    residue,
    splitting,
)

half = Fraction(1, 2)


# -- coerce_to_quadratic ------------------------------------------------------

def test_coerce_golden_square():
    x = MultiQuadElement.rational(Fraction(3, 2)) + MultiQuadElement.sqrt(5, half)
    y = coerce_to_quadratic(x, 5)
    assert (y.a, y.b, y.D) == (Fraction(3, 2), half, 5)
    assert y.to_multiquad() == x


def test_coerce_rational():
    y = coerce_to_quadratic(MultiQuadElement.rational(2), 5)
    assert (y.a, y.b) == (2, 0)


def test_coerce_rejects_foreign_radical():
    with pytest.raises(NotInField):
        coerce_to_quadratic(MultiQuadElement.sqrt(2), 5)


def test_coerce_to_rational_field():
    assert coerce_to_quadratic(MultiQuadElement.rational(7), None) == qfe(7)
    with pytest.raises(NotInField):
        coerce_to_quadratic(MultiQuadElement.sqrt(3), None)


@settings(max_examples=200)
@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50), st.sampled_from([2, 3, 5, 6, 10, 15, 30]))
def test_coerce_round_trip(a, b, D):
    x = MultiQuadElement.rational(a) + MultiQuadElement.sqrt(D, b)
    assert coerce_to_quadratic(x, D).to_multiquad() == x


def test_multiquad_products_stay_in_basis():
    r2, r3, r5 = (MultiQuadElement.sqrt(n) for n in (2, 3, 5))
    assert r2 * r3 == MultiQuadElement.sqrt(6)
    assert r2 * r3 * r5 * r5 == MultiQuadElement.sqrt(6, 5)
    assert (r2 * r3 * r5) * (r2 * r3 * r5) == MultiQuadElement.rational(30)
    x = MultiQuadElement.rational(1) + r2 + r3 + r5
    assert x * x.inverse() == MultiQuadElement.rational(1)


# -- integrality and divisibility ---------------------------------------------

@pytest.mark.parametrize("x, expected", [
    (qfe(half, half, 5), True),
    (qfe(half, 0, 5), False),
    (qfe(0, 1, 5), True),
    (qfe(half, half, 3), False),
    (qfe(3, -7, 2), True),
])
def test_is_integral(x, expected):
    assert is_integral(x) is expected


@pytest.mark.parametrize("alpha, beta, expected", [
    (qfe(0, 1, 5), qfe(2, 0, 5), False),
    (qfe(0, 1, 5), qfe(5, 0, 5), True),
    (qfe(Fraction(3, 2), half, 5), qfe(1, 0, 5), True),
    (qfe(0, 1, 2), qfe(2, 0, 2), True),
])
def test_divides(alpha, beta, expected):
    assert divides(alpha, beta) is expected


def test_golden_unit_norm():
    assert qfe(Fraction(3, 2), half, 5).norm() == 1


# -- splitting -------------------------------------------------------------------

def test_split_examples():
    P = splitting(5, 5)
    assert (P.kind, P.residue_q, P.generator) == ("ramified", 5, qfe(0, 1, 5))
    P = splitting(11, 5)
    assert (P.kind, P.residue_q) == ("split", 11)
    assert abs(P.generator.norm()) == 11
    P = splitting(2, 5)
    assert (P.kind, P.residue_q) == ("inert", 4)


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


@pytest.mark.parametrize("D", [2, 3, 5])
def test_splitting_exhaustive(D):
    disc = field_discriminant(D)
    for p in range(2, 101):
        if not is_prime(p):
            continue
        P = splitting(p, D)
        assert P.kind in ("ramified", "split", "inert")
        assert (P.kind == "ramified") == (disc % p == 0)
        if P.kind == "ramified":
            continue
        # oracle: count roots of the minimal polynomial of omega mod p
        c1, c0 = (-1, (1 - D) // 4) if D % 4 == 1 else (0, -D)
        roots = sum(1 for x in range(p) if (x * x + c1 * x + c0) % p == 0)
        assert P.kind == ("split" if roots == 2 else "inert")
        assert P.residue_q == (p if roots == 2 else p * p)
        if p > 2:
            assert (P.kind == "split") == (_legendre(D, p) == 1)
        if P.generator is not None and P.kind == "split":
            assert abs(P.generator.norm()) == p


def test_non_pid_generator_refused():
    P = splitting(2, 10)
    assert P.kind == "ramified"
    with pytest.raises(NotPID):
        P.require_generator()


# -- residue maps ----------------------------------------------------------------

def test_residue_examples():
    P = splitting(5, 5)
    golden = qfe(half, half, 5)
    assert residue(golden, P).code == 3
    assert residue(qfe(0, 1, 5), P).code == 0
    P2 = splitting(2, 5)
    r = residue(golden, P2)
    assert P2.field.modulus == (1, 1)  # t^2 + t + 1
    assert P2.field.split(r.code) == (0, 1)  # the class of t


def test_residue_rejects_non_integral():
    with pytest.raises(NotIntegral):
        residue(qfe(half, 0, 5), splitting(5, 5))


def _random_integral(rng, D):
    w = omega(D)
    return qfe(rng.randint(-60, 60), 0, D) + w * qfe(rng.randint(-60, 60), 0, D)


@pytest.mark.parametrize("D, p", [(5, 5), (5, 11), (5, 2), (5, 7), (2, 2), (2, 7), (2, 5), (3, 3), (3, 11), (3, 2)])
def test_residue_is_ring_homomorphism(D, p):
    rng = random.Random(1000 * D + p)
    P = splitting(p, D)
    one = qfe(1, 0, D)
    assert residue(one, P) == 1
    for _ in range(100):
        x, y = _random_integral(rng, D), _random_integral(rng, D)
        assert residue(x + y, P) == residue(x, P) + residue(y, P)
        assert residue(x * y, P) == residue(x, P) * residue(y, P)


def test_residue_kills_generator():
    for D in (2, 3, 5):
        for p in (2, 3, 5, 7, 11, 13):
            P = splitting(p, D)
            if P.generator is not None:
                assert residue(P.generator, P) == 0


# -- real embedding signs --------------------------------------------------------

def test_sign_matches_high_precision():
    getcontext().prec = 80
    rng = random.Random(7)
    for _ in range(1000):
        D = rng.choice([2, 3, 5, 6, 7, 13])
        b = Fraction(rng.randint(-400, 400), rng.randint(1, 30))
        # bias a toward -b*sqrt(D) so near-cancellations are exercised
        approx = -b * Fraction(int(Decimal(D).sqrt() * 10 ** 6), 10 ** 6)
        a = approx + Fraction(rng.randint(-50, 50), rng.randint(1, 10 ** 6))
        x = qfe(a, b, D)
        value = Decimal(a.numerator) / Decimal(a.denominator) + \
            Decimal(b.numerator) / Decimal(b.denominator) * Decimal(D).sqrt()
        expected = (value > 0) - (value < 0)
        assert x.sign() == expected


def test_multiquad_sign_matches_float():
    rng = random.Random(3)
    for _ in range(300):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(8)]
        x = MultiQuadElement(coeffs)
        f = float(x)
        if abs(f) > 1e-9:
            assert x.sign() == (1 if f > 0 else -1)


# -- text grammar ----------------------------------------------------------------

@pytest.mark.parametrize("text", ["0", "3/2", "-1/2 - 1/2*sqrt(5)", "1/2*sqrt(5)", "2 + 3*sqrt(2) - 1/4*sqrt(30)"])
def test_multiquad_text_round_trip(text):
    x = parse_multiquad(text)
    assert parse_multiquad(format_multiquad(x)) == x


def test_quadratic_text():
    x = qfe(Fraction(3, 2), half, 5)
    assert format_quadratic(x) == "3/2 + 1/2*sqrt(5)"
    assert parse_quadratic("3/2 + 1/2*sqrt(5)", 5) == x


def test_quadratic_inverse():
    x = qfe(3, 2, 7)
    assert x * x.inverse() == qfe(1, 0, 7)
    assert isinstance(x / 2, QuadraticFieldElement)
