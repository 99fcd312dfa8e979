import random
from fractions import Fraction

import pytest

from solvlie.field import (
    GF,
    QQ,
    FieldError,
    artin_schreier_solvable,
    exists_scaling,
    field_from_text,
    is_square,
    poly_is_irreducible,
    power_free_part,
    sqrt_element,
    t2_minus_t_has_root,
    DEFAULT_MODULI,
)

FIELDS = [QQ(), GF(2), GF(3), GF(5), GF(7), GF(4), GF(8), GF(9), GF(16), GF(25)]


def sample_elements(spec, rng, count=24):
    if spec.is_rational:
        return [
            spec.element(Fraction(rng.randint(-30, 30), rng.randint(1, 12)))
            for _ in range(count)
        ]
    pool = list(spec.elements())
    return [rng.choice(pool) for _ in range(count)]


@pytest.mark.parametrize("spec", FIELDS, ids=str)
def test_field_axioms(spec):
    rng = random.Random(20240517)
    xs = sample_elements(spec, rng)
    for a, b, c in zip(xs, xs[1:], xs[2:]):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == spec.zero
        if not a.is_zero():
            assert a * a.inverse() == spec.one


@pytest.mark.parametrize("spec", FIELDS, ids=str)
def test_text_round_trip(spec):
    rng = random.Random(99)
    for x in sample_elements(spec, rng, 10):
        assert spec.parse(str(x)) == x


def test_default_moduli_are_irreducible():
    for (p, m), coeffs in DEFAULT_MODULI.items():
        assert len(coeffs) == m + 1 and coeffs[-1] == 1
        assert poly_is_irreducible(coeffs, p)


def test_spec_rejects_reducible_modulus():
    with pytest.raises(FieldError):
        GF(4, (1, 0, 1))  # t^2 + 1 = (t+1)^2 over F_2


def test_field_from_text():
    assert field_from_text("Q") == QQ()
    assert field_from_text("F7") == GF(7)
    assert field_from_text("F4") == GF(4)
    assert field_from_text("F4:t^2+t+1") == GF(4)
    assert str(GF(4)) == "F4:t^2+t+1"


def test_is_square_examples():
    f7 = GF(7)
    assert is_square(f7.zero)  # 0 = 0^2
    # brute force: squares mod 7 are {0, 1, 2, 4}
    squares = {(x * x).value for x in f7.elements()}
    assert squares == {0, 1, 2, 4}
    assert not is_square(f7.element(3))
    # every element of a characteristic-2 field is a square
    for x in GF(4).elements():
        assert is_square(x)
        assert sqrt_element(x) is not None


@pytest.mark.parametrize("q", [3, 5, 7, 9, 25])
def test_square_count_odd(q):
    spec = GF(q)
    n = sum(1 for x in spec.elements() if is_square(x))
    assert n == (q + 1) // 2


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_square_count_char2(q):
    spec = GF(q)
    assert sum(1 for x in spec.elements() if is_square(x)) == q


def test_exists_scaling_examples():
    f7 = GF(7)
    assert exists_scaling(f7.element(5), f7.element(5), 4)  # alpha = 1
    # brute force: cubes mod 7 are {0, 1, 6}
    cubes = {(x**3).value for x in f7.elements()}
    assert cubes == {0, 1, 6}
    assert not exists_scaling(f7.element(2), f7.one, 3)
    assert exists_scaling(f7.element(6), f7.one, 3)
    q = QQ()
    assert exists_scaling(q.element(8), q.one, 3)  # alpha = 2
    assert exists_scaling(q.element(-8), q.one, 3)  # alpha = -2
    assert not exists_scaling(q.element(-4), q.one, 2)
    assert exists_scaling(q.element(Fraction(9, 4)), q.one, 2)
    assert not exists_scaling(q.element(2), q.one, 2)
    assert exists_scaling(q.zero, q.zero, 2)
    assert not exists_scaling(q.one, q.zero, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_exists_scaling_matches_brute_force(q):
    spec = GF(q)
    pool = list(spec.elements())
    for e in (2, 3):
        for a in pool:
            for c in pool:
                expected = any(
                    a == alpha**e * c for alpha in pool if not alpha.is_zero()
                )
                assert exists_scaling(a, c, e) == expected


def test_artin_schreier_examples():
    f2 = GF(2)
    assert artin_schreier_solvable(f2.zero)  # X = 0
    assert not artin_schreier_solvable(f2.one)  # trace of 1 is m = 1
    f4 = GF(4)
    assert artin_schreier_solvable(f4.one)  # m even
    with pytest.raises(FieldError):
        artin_schreier_solvable(GF(3).one)


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_artin_schreier_matches_root_search(q):
    spec = GF(q)
    for u in spec.elements():
        has_root = any((x * x + x + u).is_zero() for x in spec.elements())
        assert artin_schreier_solvable(u) == has_root


@pytest.mark.parametrize("q", [3, 5, 7, 9, 2, 4, 8])
def test_t2_minus_t_root_matches_search(q):
    spec = GF(q)
    for v in spec.elements():
        has_root = any((x * x - x - v).is_zero() for x in spec.elements())
        assert t2_minus_t_has_root(v) == has_root


def test_power_free_part_classes():
    q = QQ()
    assert power_free_part(q.element(Fraction(18, 1)), 2) == q.element(2)
    assert power_free_part(q.element(Fraction(-9, 4)), 2) == q.element(-1)
    assert power_free_part(q.element(Fraction(1, 2)), 2) == q.element(2)
    assert power_free_part(q.element(-27), 3) == q.element(1)
    assert power_free_part(q.element(16), 3) == q.element(2)
    # canonical representative is equivalent to the input
    for val in (Fraction(18), Fraction(-5, 3), Fraction(7, 16)):
        x = q.element(val)
        assert exists_scaling(x, power_free_part(x, 2), 2)
        assert exists_scaling(x, power_free_part(x, 3), 3)
    f7 = GF(7)
    for x in f7.elements():
        rep = power_free_part(x, 2)
        assert exists_scaling(x, rep, 2)
        for y in f7.elements():
            if exists_scaling(x, y, 2):
                assert rep.index() <= y.index()


def test_element_index_round_trip():
    for spec in (GF(5), GF(9), GF(16)):
        for i, x in enumerate(spec.elements()):
            assert x.index() == i
            assert spec.from_index(i) == x


def test_field_mismatch_raises():
    with pytest.raises(FieldError):
        GF(2).one + GF(3).one
    with pytest.raises(FieldError):
        exists_scaling(GF(2).one, GF(3).one, 2)
