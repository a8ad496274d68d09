"""Simultaneous Pade approximation (type II).

Column ``j`` is ``(w P_0, .., w P_{j-1}, P_j, .., P_{L-1})`` with
``deg P_i <= m - 1 + [i == j]``, ``m = n(L-1)``, such that every cross
difference ``f_a P~_b - f_b P~_a`` vanishes to order ``w^{nL}`` (one more
when both ``a, b < j``).  The series are first divided by ``f_0``; the
cross conditions do not see that common factor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonGenericError, UsageError
from .exact import Poly, TruncatedSeries, inverse, is_unit, is_zero, poly_section, series_reciprocal
from .linalg import nullvector
from .toeplitz import MomentTable, rect_toeplitz, standard_delta
from .type1 import TypeIProblem, _bordered_det


@dataclass
class TypeIIColumn:
    j: int
    P: list  # P_0 .. P_{L-1} as Poly

    @property
    def vector(self):
        """The column ``(w P_0, .., w P_{j-1}, P_j, ..)``."""
        return [p.shift(1) if i < self.j else p for i, p in enumerate(self.P)]


def gauge_series(p: TypeIProblem):
    """``(1, f_1/f_0, .., f_{L-1}/f_0)``."""
    inv = series_reciprocal(p.f[0])
    out = [TruncatedSeries([1], p.order, p.f[0].var)]
    out.extend(fi * inv for fi in p.f[1:])
    return out


def _gauge_table(p):
    return MomentTable(gauge_series(p))


def _vstack(blocks):
    out = []
    for b in blocks:
        out.extend(b)
    return out


def system_matrix_p0(p: TypeIProblem, j: int):
    """Linear conditions on the coefficients of ``P_0^(j)``."""
    L, n = p.L, p.n
    m = n * (L - 1)
    tab = _gauge_table(p)
    if not 0 <= j < L:
        raise UsageError(f"column index {j} out of range 0..{L - 1}")
    if j == 0:
        return _vstack(rect_toeplitz(tab, i, m, n, m + 1) for i in range(1, L))
    blocks = []
    for i in range(1, L):
        if i < j:
            blocks.append(rect_toeplitz(tab, i, m, n, m))
        elif i == j:
            blocks.append(rect_toeplitz(tab, i, m, n - 1, m))
        else:
            blocks.append(rect_toeplitz(tab, i, m - 1, n, m))
    return _vstack(blocks)


def _assemble(p, j, P0):
    L, n = p.L, p.n
    m = n * (L - 1)
    g = gauge_series(p)
    P = [P0]
    for i in range(1, L):
        prod = TruncatedSeries.from_poly(P0, p.order, g[i].var) * g[i]
        if j == 0 or i < j:
            P.append(poly_section(prod, 0, m - 1))
        elif i == j:
            P.append(poly_section(prod, 0, m - 1).shift(1))
        else:
            P.append(poly_section(prod, 0, m - 2).shift(1))
    return P


def _monic_scale(p, j, coeffs):
    """The quantity that must equal 1 for a monic diagonal."""
    m = p.n * (p.L - 1)
    if j == 0:
        return coeffs[m]
    row = [_gauge_table(p)(j, m - 1 - c) for c in range(m)]
    acc = 0
    for a, b in zip(row, coeffs):
        acc = acc + a * b
    return acc


def solve_type_ii(p: TypeIProblem, j: int) -> TypeIIColumn:
    m = p.n * (p.L - 1)
    if p.order < p.n * p.L + 1:
        raise UsageError("series order too small for the type II conditions")
    a = system_matrix_p0(p, j)
    if not a:
        coeffs = [1]
    else:
        coeffs = nullvector(a)
    lead = _monic_scale(p, j, coeffs)
    if is_zero(lead) or not is_unit(lead):
        raise NonGenericError(f"diagonal polynomial of column {j} has degree < {m}")
    scale = inverse(lead)
    P0 = Poly(c * scale for c in coeffs)
    return TypeIIColumn(j, _assemble(p, j, P0))


def solve_all_type_ii(p: TypeIProblem):
    return [solve_type_ii(p, j) for j in range(p.L)]


def cross_orders_hold(p: TypeIProblem, col: TypeIIColumn) -> bool:
    """Check every cross difference against its required contact order."""
    v = col.vector
    L, nL = p.L, p.n * p.L
    for a in range(L):
        for b in range(a + 1, L):
            d = p.f[a] * TruncatedSeries.from_poly(v[b], p.order) - p.f[b] * TruncatedSeries.from_poly(v[a], p.order)
            need = nL + 1 if (a < col.j and b < col.j) else nL
            if not d.is_big_o(need):
                return False
    return True


def normalizer_p(p: TypeIProblem, j: int):
    """``NP^(j)`` as the bordered determinant defining the monic normalization."""
    m = p.n * (p.L - 1)
    body = system_matrix_p0(p, j)
    if j == 0:
        top = [0] * m + [1]
    else:
        tab = _gauge_table(p)
        top = [tab(j, m - 1 - c) for c in range(m)]
    return _bordered_det(top, body)[0]


def normalizer_p_delta(p: TypeIProblem, j: int):
    """``(-1)^{m(m-n)/2 + n(L-1)} Delta^(L)`` for j = 0, ``(-1)^{m(m-n)/2 + n(j-1)} Delta^(j)`` otherwise."""
    L, n = p.L, p.n
    m = n * (L - 1)
    tab = _gauge_table(p)
    if j == 0:
        d, e = standard_delta(tab, L, n), m * (m - n) // 2 + n * (L - 1)
    else:
        d, e = standard_delta(tab, j, n), m * (m - n) // 2 + n * (j - 1)
    return -d if e % 2 else d


def det_rep_p0(p: TypeIProblem, j: int) -> Poly:
    """``P_0^(j)`` as a bordered determinant over ``NP^(j)``."""
    m = p.n * (p.L - 1)
    body = system_matrix_p0(p, j)
    width = m + 1 if j == 0 else m
    top = [Poly.monomial(k) for k in range(width)]
    num = _bordered_det(top, body)
    npj = normalizer_p(p, j)
    if is_zero(npj):
        raise NonGenericError(f"normalizer NP^({j}) vanishes")
    return num * inverse(npj)


def det_rep_column(p: TypeIProblem, j: int) -> TypeIIColumn:
    """The whole column from the determinantal ``P_0^(j)`` and the section formulas."""
    return TypeIIColumn(j, _assemble(p, j, det_rep_p0(p, j)))

