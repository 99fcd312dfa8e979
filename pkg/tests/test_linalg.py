import itertools
import random

import pytest

from solvlie.field import GF, QQ
from solvlie.linalg import (
    Matrix,
    RcfResult,
    UniPoly,
    companion_matrix,
    echelon_basis,
    kernel,
    rcf,
    reduce_against_echelon,
    solve_linear,
)


def random_matrix(spec, n, rng, lo=-6, hi=6):
    if spec.is_rational:
        return Matrix(spec, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
    pool = list(spec.elements())
    return Matrix(spec, [[rng.choice(pool) for _ in range(n)] for _ in range(n)])


def random_invertible(spec, n, rng):
    while True:
        m = random_matrix(spec, n, rng)
        if m.is_invertible():
            return m


def charpoly_by_cofactors(a):
    """Independent oracle: det(tI - A) by Leibniz expansion over permutations."""
    spec = a.spec
    n = a.rows
    t = UniPoly.t(spec)
    entries = [
        [
            t - UniPoly.constant(spec, a.entries[i][j])
            if i == j
            else UniPoly.constant(spec, -a.entries[i][j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    total = UniPoly(spec, [])
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = UniPoly.constant(spec, spec.element(sign))
        for i in range(n):
            term = term * entries[i][perm[i]]
        total = total + term
    return total


def test_solve_identity():
    q = QQ()
    a = Matrix.identity(q, 3)
    assert solve_linear(a, [1, 2, 3]) == (q.element(1), q.element(2), q.element(3))


def test_kernel_of_zero_matrix():
    q = QQ()
    a = Matrix.zero(q, 2, 2)
    basis = kernel(a)
    assert len(basis) == 2
    assert basis[0] == (q.one, q.zero)
    assert basis[1] == (q.zero, q.one)


def test_solve_recovers_planted_solution():
    spec = GF(5)
    rng = random.Random(7)
    for _ in range(25):
        a = random_matrix(spec, 4, rng)
        x = tuple(rng.choice(list(spec.elements())) for _ in range(4))
        b = a.apply(x)
        got = solve_linear(a, b)
        assert got is not None
        assert a.apply(got) == b


def test_solve_inconsistent_none():
    q = QQ()
    a = Matrix(q, [[1, 0], [1, 0]])
    assert solve_linear(a, [1, 2]) is None


def test_echelon_reduce_roundtrip():
    spec = GF(3)
    rng = random.Random(11)
    vecs = [tuple(spec.element(rng.randrange(3)) for _ in range(4)) for _ in range(3)]
    basis = echelon_basis(spec, vecs)
    for v in vecs:
        assert all(x.is_zero() for x in reduce_against_echelon(spec, basis, v))


def test_matrix_inverse():
    rng = random.Random(3)
    for spec in (QQ(), GF(5), GF(4)):
        m = random_invertible(spec, 3, rng)
        assert m @ m.inverse() == Matrix.identity(spec, 3)


def test_rcf_zero_matrix():
    q = QQ()
    res = rcf(Matrix.zero(q, 3, 3))
    t = UniPoly.t(q)
    assert res.invariant_factors == (t, t, t)


def test_rcf_scalar_matrix_forced_equal_blocks():
    q = QQ()
    lam = q.element(3)
    a = Matrix.identity(q, 2).scale(lam)
    res = rcf(a)
    f = UniPoly(q, [-3, 1])
    assert res.invariant_factors == (f, f)


def test_rcf_companion_single_factor():
    # columns ((0,1),(a,b)): matrix of t^2 - b t - a
    q = QQ()
    a_val, b_val = 5, 2
    m = Matrix(q, [[0, a_val], [1, b_val]])
    res = rcf(m)
    assert len(res.invariant_factors) == 1
    assert res.invariant_factors[0] == UniPoly(q, [-a_val, -b_val, 1])
    assert companion_matrix(res.invariant_factors[0]) == m


@pytest.mark.parametrize("spec", [QQ(), GF(5), GF(2), GF(4)], ids=str)
def test_rcf_verification_identity(spec):
    rng = random.Random(23)
    for n in (2, 3, 4):
        for _ in range(8):
            a = random_matrix(spec, n, rng)
            res = rcf(a)
            p = res.transform
            assert p.is_invertible()
            assert p @ a @ p.inverse() == res.companion_form()


@pytest.mark.parametrize("spec", [QQ(), GF(5)], ids=str)
def test_rcf_similarity_invariance_small(spec):
    rng = random.Random(31)
    for _ in range(40):
        n = rng.choice([2, 3, 4])
        a = random_matrix(spec, n, rng)
        p = random_invertible(spec, n, rng)
        conj = p @ a @ p.inverse()
        assert rcf(a).invariant_factors == rcf(conj).invariant_factors


@pytest.mark.parametrize("spec", [QQ(), GF(5), GF(3)], ids=str)
def test_rcf_product_is_charpoly(spec):
    rng = random.Random(41)
    for n in (2, 3, 4):
        for _ in range(6):
            a = random_matrix(spec, n, rng)
            prod = UniPoly.constant(spec, spec.one)
            for f in rcf(a).invariant_factors:
                prod = prod * f
            assert prod == charpoly_by_cofactors(a)


def test_companion_block_layout():
    q = QQ()
    f = UniPoly(q, [-2, -3, 1])  # t^2 - 3t - 2
    c = companion_matrix(f)
    assert c == Matrix(q, [[0, 2], [1, 3]])
    res = RcfResult((f,), Matrix.identity(q, 2))
    assert res.companion_form() == c
