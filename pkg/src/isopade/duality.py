"""Duality between the two approximation problems and the multiplier ``R(z)``.

Stacking the type I rows over the type II columns gives ``w^{nL}`` times a
constant diagonal; with monic diagonals it is exactly ``w^{nL} I``.
Reversing the rows gives ``R(z) = z^n Q~(1/z)``, with polynomial inverse
``z^m P~(1/z)``, ``m = n(L-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation, UsageError
from .exact import Poly, TruncatedSeries, is_zero
from .linalg import (
    adjugate,
    is_upper_triangular,
    matmul,
    poly_det,
    poly_matrix,
    poly_matrix_coefficient,
)
from .type1 import TypeIProblem, solve_all_type_i
from .type2 import solve_all_type_ii


def pairing_matrix(rows, cols):
    """``M_ij = Q~^(i) . P~^(j)`` as polynomials in ``w``."""
    qm = [r.vector for r in rows]
    pm = [[c.vector[i] for c in cols] for i in range(len(cols))]
    return matmul(qm, pm)


def degree_bounds_hold(M, n):
    L = len(M)
    for i in range(L):
        for j in range(L):
            bound = n * L if i <= j else n * L - 1
            if M[i][j].degree > bound:
                return False
    return True


def verify_duality(rows, cols, n: int):
    """Return the diagonal ``D`` with ``M = w^{nL} D``; raise if ``M`` has another shape."""
    L = len(rows)
    if len(cols) != L:
        raise UsageError("need as many columns as rows")
    M = pairing_matrix(rows, cols)
    if not degree_bounds_hold(M, n):
        raise InvariantViolation("pairing matrix exceeds its degree bounds")
    nL = n * L
    D = []
    for i in range(L):
        for j in range(L):
            p = M[i][j]
            if any(not is_zero(p[k]) for k in range(p.degree + 1) if k != nL):
                raise InvariantViolation(f"entry ({i},{j}) is not a multiple of w^{nL}")
            if i != j and not is_zero(p[nL]):
                raise InvariantViolation(f"off-diagonal entry ({i},{j}) is nonzero")
        D.append(M[i][i][nL])
    return D


@dataclass
class SchlesingerMultiplier:
    R: list      # L x L Poly in z
    Rinv: list   # L x L Poly in z
    n: int

    @property
    def L(self):
        return len(self.R)


def build_R(rows, n: int):
    """``R(z) = z^n Q~(1/z)`` row by row."""
    try:
        return [[q.reversed(n) for q in r.vector] for r in rows]
    except UsageError as exc:
        raise InvariantViolation(f"row entry too long for reversal: {exc}") from None


def build_Rinv(cols, n: int):
    """``z^m P~(1/z)`` with the columns of the type II solution."""
    L = len(cols)
    m = n * (L - 1)
    try:
        return [[cols[j].vector[i].reversed(m) for j in range(L)] for i in range(L)]
    except UsageError as exc:
        raise InvariantViolation(f"column entry too long for reversal: {exc}") from None


def build_multiplier(p: TypeIProblem) -> SchlesingerMultiplier:
    rows = solve_all_type_i(p)
    cols = solve_all_type_ii(p)
    return SchlesingerMultiplier(build_R(rows, p.n), build_Rinv(cols, p.n), p.n)


def det_R(R):
    return poly_det(R)


def product_is_identity(A, B):
    prod = matmul(poly_matrix(A), poly_matrix(B))
    L = len(prod)
    return all(prod[i][j] == (Poly([1]) if i == j else Poly()) for i in range(L) for j in range(L))


def constant_term_unit_upper(R):
    c0 = poly_matrix_coefficient(R, 0)
    return is_upper_triangular(c0) and all(c0[i][i] == 1 for i in range(len(c0)))


def adjugate_inverse(R):
    """``R^{-1}`` via the adjugate; valid because ``det R = 1``."""
    d = det_R(R)
    if d != Poly([1]):
        raise InvariantViolation(f"det R = {d}, expected 1")
    return adjugate(poly_matrix(R))


@dataclass
class ShiftReport:
    contact_ok: bool
    shape_ok: bool

    @property
    def ok(self):
        return self.contact_ok and self.shape_ok


def exponent_shift_check(rows, f, n: int) -> ShiftReport:
    """Certify the exponent shift ``(n(L-1), -n, .., -n)`` at infinity.

    With ``w = 1/z``, ``w^n R(1/w) f = Q~ f`` must vanish to order ``nL``
    (so ``R f = O(w^{n(L-1)})``), and ``w^n R(1/w) = Q~(w)`` must be lower
    triangular at ``w = 0`` with a zero in the corner.
    """
    L = len(rows)
    order = f[0].order
    contact = True
    for r in rows:
        acc = TruncatedSeries([0], order, f[0].var)
        for q, fj in zip(r.vector, f):
            acc = acc + TruncatedSeries.from_poly(q, order, fj.var) * fj
        if not acc.is_big_o(n * L):
            contact = False
    q0 = [[q[0] for q in r.vector] for r in rows]
    shape = is_zero(q0[0][0]) and all(is_zero(q0[i][j]) for i in range(L) for j in range(i + 1, L))
    return ShiftReport(contact, shape)


def require_shift(rows, f, n: int) -> ShiftReport:
    report = exponent_shift_check(rows, f, n)
    if not report.ok:
        raise InvariantViolation(f"exponent shift check failed: {report}")
    return report


def full_check(p: TypeIProblem):
    """Run duality, determinant and inverse checks on one instance."""
    rows = solve_all_type_i(p)
    cols = solve_all_type_ii(p)
    D = verify_duality(rows, cols, p.n)
    R = build_R(rows, p.n)
    Rinv = build_Rinv(cols, p.n)
    return {
        "D": D,
        "R": R,
        "Rinv": Rinv,
        "detR": det_R(R),
        "inverse_ok": product_is_identity(R, Rinv),
        "adjugate_ok": adjugate_inverse(R) == poly_matrix(Rinv),
        "unit_upper_ok": constant_term_unit_upper(R),
        "shift": exponent_shift_check(rows, p.f, p.n),
    }
