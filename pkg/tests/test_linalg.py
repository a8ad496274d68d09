import random
from fractions import Fraction

import pytest

from isopade.errors import NonGenericError, UsageError
from isopade.exact import Poly
from isopade.linalg import (
    adjugate,
    charpoly,
    det,
    det_cofactor,
    det_permutation,
    identity,
    inverse_matrix,
    matmul,
    nullvector,
    poly_det,
    solve,
)


def rand_matrix(rng, n, m=None):
    m = n if m is None else m
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(m)] for _ in range(n)]


def test_identity_det():
    assert det(identity(3)) == 1


def test_two_by_two():
    a, b, c, d = map(Fraction, (3, -2, 5, 7))
    assert det([[a, b], [c, d]]) == a * d - b * c


@pytest.mark.parametrize("seed", range(5))
def test_det_matches_permutation_oracle(seed):
    m = rand_matrix(random.Random(seed), 5)
    assert det(m) == det_permutation(m) == det_cofactor(m)


def test_det_singular():
    assert det([[1, 2], [2, 4]]) == 0


def test_nullvector():
    rng = random.Random(3)
    a = rand_matrix(rng, 3, 4)
    v = nullvector(a)
    assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)
    assert any(v)


def test_nullvector_rank_deficient():
    with pytest.raises(NonGenericError):
        nullvector([[1, 2, 3], [2, 4, 6]])


def test_nullvector_shape():
    with pytest.raises(UsageError):
        nullvector([[1, 2], [3, 4]])


def test_solve_and_inverse():
    rng = random.Random(4)
    a = rand_matrix(rng, 4)
    b = [Fraction(k) for k in range(4)]
    x = solve(a, b)
    assert [sum(r * y for r, y in zip(row, x)) for row in a] == b
    assert matmul(a, inverse_matrix(a)) == identity(4)


def test_adjugate():
    a = rand_matrix(random.Random(5), 3)
    d = det(a)
    assert matmul(a, adjugate(a)) == [[d if r == c else 0 for c in range(3)] for r in range(3)]


def test_poly_det():
    z = Poly([0, 1])
    m = [[Poly([1]), Poly([-1])], [z, 1 - z]]
    assert poly_det(m) == Poly([1])


def test_charpoly():
    # [[2, 1], [0, 3]] has (t - 2)(t - 3)
    assert charpoly([[Fraction(2), Fraction(1)], [Fraction(0), Fraction(3)]]) == Poly([6, -5, 1])
