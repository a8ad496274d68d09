from fractions import Fraction

import pytest

from isopade.errors import SingularInputError
from isopade.jets import LocalFraction, ParamJet, hirota_d, partial


def X(i, nvars=2, order=8):
    return ParamJet.variable(nvars, i, order)


def test_power_rule():
    f = X(0) ** 2 * X(1)
    assert partial(f, 0) == 2 * X(0) * X(1)


def test_partial_of_constant():
    assert partial(ParamJet.constant(2, 5), 0).is_zero()
    assert partial(Fraction(3), 1) == 0


def test_partial_matches_difference_quotient():
    # f(x + t e_2) - f(x) is a polynomial in t; its linear coefficient is d_2 f
    f = ParamJet(2, 10, {(4, 0): 3, (1, 3): -2, (2, 2): Fraction(1, 5), (0, 1): 7, (1, 1): 1})
    df = partial(f, 1)
    for pt in [(Fraction(1, 2), Fraction(-3)), (Fraction(2), Fraction(1, 7)), (Fraction(-1), Fraction(4, 3))]:
        x1, x2 = pt
        vals = [f.evaluate((x1, x2 + t)) for t in range(5)]
        # Newton forward differences give the t-polynomial; read off its t coefficient
        diffs, table = [], vals
        while table:
            diffs.append(table[0])
            table = [b - a for a, b in zip(table, table[1:])]
        # t-coefficient of sum_k diffs[k] * binom(t, k)
        lin = Fraction(0)
        for k in range(1, len(diffs)):
            lin += diffs[k] * Fraction((-1) ** (k - 1), k)
        assert df.evaluate(pt) == lin


def test_hirota_antisymmetry():
    f = 1 + X(0) + 3 * X(0) * X(1)
    g = 2 - X(1) + X(0) ** 3
    assert hirota_d(0, f, f).is_zero()
    assert hirota_d(0, f, g) == -hirota_d(0, g, f)


def test_hirota_example():
    x1 = X(0, 1)
    assert hirota_d(0, x1, x1 ** 2) == -(x1 ** 2)


def test_truncated_inverse():
    f = ParamJet(2, 6, {(0, 0): 2, (1, 0): 1, (0, 2): -3})
    assert (f * f.inverse()) == ParamJet.constant(2, 1)


def test_inverse_of_nonunit():
    with pytest.raises(SingularInputError):
        X(0).inverse()


def test_precision_tracking():
    f = X(0, 1, 5)
    g = ParamJet(1, 3, {(0,): 1, (1,): 1})
    assert (f * g).order == 4  # valuation 1 of f lifts the product order
    assert (g * g).order == 3
    assert partial(f, 0).order == 4


def test_local_fraction_equivalence():
    nv = 2
    x1, x2 = ParamJet.variable(nv, 0), ParamJet.variable(nv, 1)
    a = LocalFraction(x1 * x2, {("x", 0): 1})
    assert a == LocalFraction(x2)
    b = LocalFraction(x1 - x2, {("d", 0, 1): 1})
    assert b.reduce().den == {} and b.to_jet() == ParamJet.constant(nv, 1)
    # x_2 - x_1 is stored as -(x_1 - x_2)
    c = LocalFraction(ParamJet.constant(nv, 1), {("d", 1, 0): 1})
    assert c * (x1 - x2) == -1


def test_local_fraction_partial_quotient_rule():
    nv = 1
    x = ParamJet.variable(nv, 0, 8)
    u = LocalFraction(1 + x, {("x", 0): 2})  # (1 + x)/x^2
    # d/dx = -2/x^3 - 1/x^2 = -(2 + x)/x^3
    assert partial(u, 0) == LocalFraction(-(2 + x), {("x", 0): 3})


def test_unit_factor_folding():
    nv = 1
    x = ParamJet.variable(nv, 0)
    u = LocalFraction(ParamJet.constant(nv, 1, 6), units=(x - 1,))
    assert (u * (x - 1)).to_jet() == ParamJet.constant(nv, 1)
    assert u.numerator.order == 6


def test_local_fraction_inverse():
    nv = 2
    x1 = ParamJet.variable(nv, 0, 6)
    a = LocalFraction(x1 * (3 + x1), {("d", 0, 1): 1})
    assert (a * a.inverse()) == 1


def test_reciprocal_variable():
    r = LocalFraction.reciprocal_variable(2, 1)
    assert r * ParamJet.variable(2, 1) == 1
