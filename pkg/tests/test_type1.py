import random

import pytest

from isopade.checks import generic_problem
from isopade.errors import NonGenericError, UsageError
from isopade.exact import Poly, TruncatedSeries
from isopade.type1 import (
    TypeIProblem,
    det_rep_q,
    diag_constant_term,
    diag_constant_term_delta,
    normalizer_q,
    normalizer_q_closed,
    normalizer_q_delta,
    remainder_leading,
    remainder_leading_delta,
    solve_all_type_i,
    solve_type_i,
)

w = Poly([0, 1])


def test_worked_row_zero(worked):
    row = solve_type_i(worked, 0)
    assert row.vector == [w, -w]
    assert row.remainder == TruncatedSeries([0, 0, -1, -1, -1], 4)


def test_worked_row_one(worked):
    row = solve_type_i(worked, 1)
    assert row.vector == [Poly([1]), w - 1]
    assert row.remainder.is_zero()


def test_worked_remainder_leading(worked):
    assert remainder_leading(worked, 0) == -1
    assert remainder_leading(worked, 1) == 0


def test_worked_diagonal_constant(worked):
    assert diag_constant_term(worked, 1) == -1
    assert diag_constant_term_delta(worked, 1) == -1


def test_frozen_instance(frozen, frozen_rows):
    rows = solve_all_type_i(frozen)
    for row, expected in zip(rows, frozen_rows):
        assert row.vector == expected


def test_frozen_bordered_determinants(frozen):
    rows = solve_all_type_i(frozen)
    for i in range(3):
        assert normalizer_q(frozen, i) == normalizer_q_closed(frozen, i)
        for j in range(3):
            assert det_rep_q(frozen, i, j) == rows[i].Q[j]


@pytest.mark.parametrize("seed", range(3))
def test_remainders_vanish_below_contact_order(seed):
    p = generic_problem(random.Random(seed), 3, 2, f0_one=True)
    for row in solve_all_type_i(p):
        assert all(row.remainder[k] == 0 for k in range(p.n * p.L))


@pytest.mark.parametrize("seed", range(3))
def test_delta_forms(seed):
    p = generic_problem(random.Random(100 + seed), 3, 2, f0_one=True)
    rows = solve_all_type_i(p)
    assert remainder_leading_delta(p) == rows[0].remainder[p.n * p.L]
    for i in range(3):
        assert normalizer_q(p, i) == normalizer_q_delta(p, i)
    for i in (1, 2):
        assert diag_constant_term_delta(p, i) == rows[i].Q[i][0] == diag_constant_term(p, i)


def test_delta_forms_need_gauge(frozen):
    with pytest.raises(UsageError):
        remainder_leading_delta(frozen)


def test_degenerate_input_is_rejected():
    # with f_1 = f_0 row 1 forces the diagonal entry below degree n
    f = [TruncatedSeries([1, 1, 0, 0, 0], 4), TruncatedSeries([1, 1, 0, 0, 0], 4)]
    with pytest.raises(NonGenericError):
        solve_type_i(TypeIProblem(f, 1), 1)


@pytest.mark.parametrize("kwargs", [
    dict(f=[TruncatedSeries([1], 4)], n=1),
    dict(f=[TruncatedSeries([1], 1), TruncatedSeries([1], 1)], n=1),
    dict(f=[TruncatedSeries([0, 1], 4), TruncatedSeries([1], 4)], n=1),
    dict(f=[TruncatedSeries([1], 4), TruncatedSeries([1], 4)], n=0),
])
def test_problem_validation(kwargs):
    with pytest.raises(UsageError):
        TypeIProblem(**kwargs)
