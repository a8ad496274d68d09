import random

import pytest

from isopade.checks import generic_problem
from isopade.exact import Poly
from isopade.type2 import (
    cross_orders_hold,
    det_rep_column,
    det_rep_p0,
    normalizer_p,
    normalizer_p_delta,
    solve_all_type_ii,
    solve_type_ii,
)

w = Poly([0, 1])


def test_worked_columns(worked):
    assert solve_type_ii(worked, 0).vector == [w - 1, Poly([-1])]
    assert solve_type_ii(worked, 1).vector == [w, w]


def test_worked_bordered_determinant(worked):
    assert det_rep_p0(worked, 0) == w - 1
    assert det_rep_p0(worked, 1) == Poly([1])


def test_frozen_instance(frozen, frozen_cols):
    cols = solve_all_type_ii(frozen)
    for col, expected in zip(cols, frozen_cols):
        assert col.vector == expected


def test_cross_orders(frozen):
    assert all(cross_orders_hold(frozen, c) for c in solve_all_type_ii(frozen))


def test_cross_orders_detect_perturbation(worked):
    col = solve_type_ii(worked, 0)
    col.P[1] = col.P[1] + Poly([0, 1])
    assert not cross_orders_hold(worked, col)


@pytest.mark.parametrize("seed", range(3))
def test_two_construction_paths(seed):
    p = generic_problem(random.Random(seed), 3, 1)
    for j in range(3):
        assert det_rep_column(p, j).P == solve_type_ii(p, j).P


@pytest.mark.parametrize("seed", range(3))
def test_normalizer_delta_form(seed):
    p = generic_problem(random.Random(50 + seed), 3, 2, f0_one=True)
    assert all(normalizer_p(p, j) == normalizer_p_delta(p, j) for j in range(3))


def test_diagonal_degree(frozen):
    m = frozen.n * (frozen.L - 1)
    assert all(c.P[j].degree == m for j, c in enumerate(solve_all_type_ii(frozen)))
