import random
from fractions import Fraction as F

import pytest

from isopade.checks import (
    compatibility_checks,
    diagonal_shift_checks,
    diagonal_shift_residuals,
    random_hg_params,
    shift_checks,
)
from isopade.errors import NonGenericError, UsageError
from isopade.exact import Poly
from isopade.fuchsian import (
    compatibility_residual,
    deformation_matrix_cleared,
    direct_c_hat,
    direct_canonical,
    eigenvalue_shift_check,
    hypergeometric_system,
    multiplier_for,
    poly_matrix_vanishes,
    residue_jet,
    residue_relations_hold,
    schlesinger_transform,
    transform_certificate,
)
from isopade.hypergeo import HGParams, build_order, c_hat_formulas, hgi_build
from isopade.jets import ParamJet
from isopade.linalg import identity, is_lower_triangular, is_upper_triangular, poly_matrix

M = 5


def params(L=2, N=1, seed=0, order=None):
    p = random_hg_params(random.Random(seed), L, N, 0)
    return p.with_order(order if order is not None else build_order(M))


def transformed(L=2, N=1, n=1, seed=0):
    p = params(L, N, seed, build_order(M) + n * L)
    sys = hypergeometric_system(p)
    R, Rinv = multiplier_for(p, n)
    return p, sys, schlesinger_transform(sys, R, Rinv, n)


def jets(A):
    return [[residue_jet(a) for a in row] for row in A]


def truncated(A, order):
    return [[a.truncate(order) if isinstance(a, ParamJet) else a for a in row] for row in A]


def test_identity_transform():
    sys = hypergeometric_system(params())
    I = poly_matrix(identity(2))
    tr = schlesinger_transform(sys, I, I, 0)
    assert all(jets(a) == jets(b) for a, b in zip(tr.system.residues, sys.residues))


@pytest.mark.parametrize("L", [2, 3])
def test_trace_invariance(L):
    _, sys, tr = transformed(L)
    for A, B in zip(sys.residues, tr.system.residues):
        ta = sum((residue_jet(A[k][k]) for k in range(L)), ParamJet(1))
        tb = sum((residue_jet(B[k][k]) for k in range(L)), ParamJet(1))
        assert (ta - tb).truncate(M - 1).is_zero()


@pytest.mark.parametrize("L, N", [(2, 1), (3, 1), (2, 2)])
def test_residue_relations(L, N):
    sys = hypergeometric_system(params(L, N))
    assert residue_relations_hold(sys)
    assert is_lower_triangular(sys.residue_at_infinity())
    assert is_upper_triangular(sys.residues[-1])


@pytest.mark.parametrize("L", [2, 3])
def test_transformed_triangular_shape(L):
    _, sys, tr = transformed(L)
    upper = truncated(jets(tr.system.residues[-1]), M - 1)
    lower = truncated(jets(tr.system.residue_at_infinity()), M - 1)
    assert is_upper_triangular(upper)
    assert is_lower_triangular(lower)


@pytest.mark.parametrize("L", [2, 3])
def test_transform_certificate_and_shift(L):
    _, sys, tr = transformed(L)
    assert transform_certificate(sys, tr, M - 1)
    assert eigenvalue_shift_check(sys, tr.system, 1)


def test_shift_check_detects_wrong_n():
    _, sys, tr = transformed(2)
    assert not eigenvalue_shift_check(sys, tr.system, 2)


def test_deformation_residue():
    sys = hypergeometric_system(params())
    Bt = deformation_matrix_cleared(sys, 1)
    u = sys.poles()
    others = Poly([-u[0], 1])(u[1]) * Poly([-u[2], 1])(u[1])
    A = sys.residues[1]
    for r in range(2):
        for c in range(2):
            assert Bt[r][c](u[1]) == others * (-A[r][c])


def test_deformation_index_range():
    with pytest.raises(UsageError):
        deformation_matrix_cleared(hypergeometric_system(params()), 2)


@pytest.mark.parametrize("L, N", [(2, 1), (3, 1), (2, 2)])
def test_compatibility(L, N):
    assert all(compatibility_checks(params(L, N, seed=L + N), M if N == 1 else 3).values())


def test_compatibility_negative_control():
    sys = hypergeometric_system(params())
    x = ParamJet.variable(1, 0)
    sys.residues[1] = [[a + (x if r == c == 0 else 0) for c, a in enumerate(row)]
                       for r, row in enumerate(sys.residues[1])]
    assert not poly_matrix_vanishes(compatibility_residual(sys, 1), M - 1)


@pytest.mark.parametrize("L", [2, 3])
def test_c_hat_against_determinants(L):
    p, sys, tr = transformed(L)
    direct = direct_c_hat(sys, tr)
    c0, ci = c_hat_formulas(p, 1)
    assert all((a - b).truncate(M - 1).is_zero() for a, b in zip(direct[0], c0))
    assert all((a - b).truncate(M - 1).is_zero() for a, b in zip(direct[1], ci[0]))


def test_canonical_variables_two_routes():
    p, sys, tr = transformed(2)
    q, qp = direct_canonical(sys, tr)
    sol = hgi_build(p, 1)
    assert (q[0][0] - sol.q[0][0]).truncate(M - 1).is_zero()
    assert (qp[0][0] - sol.extras["qp_hirota"][0][0]).truncate(M - 1).is_zero()


@pytest.mark.parametrize("L, N, n", [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 1)])
def test_diagonal_log_derivative(L, N, n):
    assert all(diagonal_shift_checks(params(L, N, seed=7), n, 4).values())


def test_diagonal_log_derivative_negative_control():
    res = diagonal_shift_residuals(params(2, 1, seed=7), 1, 4, flip=True)
    assert not all(r.truncate(3).is_zero() for r in res)


def test_resonant_exponents_refused():
    # alpha_1 = 1 gives integer exponent difference e_1 - e_0 = alpha_1
    with pytest.raises(NonGenericError):
        hypergeometric_system(HGParams([1], [F(1, 3)], [F(7, 3)], 4))


def test_shift_checks_n2():
    assert all(shift_checks(params(2, 1, seed=3), 2, 4).values())
