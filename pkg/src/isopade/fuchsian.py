"""Fuchsian systems with poles ``u_0 = 1``, ``u_i = 1/x_i``, ``u_{N+1} = 0``
and infinity, their Schlesinger transforms and deformation equations.

Residue entries are jets in ``x_1 .. x_N`` or :class:`LocalFraction`.
Identities in ``z`` are checked after multiplying by powers of
``D(z) = prod_i (z - u_i)``, so every comparison is between polynomials
in ``z`` with local-fraction coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .duality import build_R, build_Rinv
from .errors import InvariantViolation, NonGenericError, UsageError
from .exact import Poly, is_zero
from .hypergeo import ExponentData, HGParams, HGMomentTable, MomentFamily, exponents_from_params
from .jets import LocalFraction, ParamJet, partial
from .linalg import charpoly, is_lower_triangular, matmul, zeros
from .type1 import TypeIProblem, solve_all_type_i
from .type2 import solve_all_type_ii


def _lf(a, nvars):
    return LocalFraction.lift(a, nvars)


def outer(b, c):
    return [[bi * cj for cj in c] for bi in b]


def infinity_residue_upper(e, residues):
    """``A_{N+1}``: diagonal ``e``, strictly upper part ``-sum_i (A_i)_{kl}``, zero below."""
    L = len(e)
    out = [[Fraction(0)] * L for _ in range(L)]
    for k in range(L):
        out[k][k] = Fraction(e[k])
        for l in range(k + 1, L):
            acc = 0
            for A in residues:
                acc = acc - A[k][l]
            out[k][l] = acc
    return out


@dataclass
class FuchsianSystem:
    """``dY/dz = sum_{i=0}^{N+1} A_i/(z - u_i) Y``."""

    L: int
    N: int
    residues: list          # A_0 .. A_{N+1}
    exponents: ExponentData = None
    extras: dict = field(default_factory=dict)

    def poles(self):
        out = [_lf(1, self.N)]
        out += [LocalFraction.reciprocal_variable(self.N, i) for i in range(self.N)]
        out.append(_lf(0, self.N))
        return out

    def residue_at_infinity(self):
        """``A_{N+2} = -sum_i A_i``."""
        L = self.L
        out = [[0] * L for _ in range(L)]
        for A in self.residues:
            for r in range(L):
                for c in range(L):
                    out[r][c] = out[r][c] - A[r][c]
        return out

    def cleared(self):
        """``D(z) A(z)`` as a matrix of polynomials in ``z``."""
        lins = [Poly([-u, 1]) for u in self.poles()]
        out = zeros(self.L, self.L, Poly())
        for j, A in enumerate(self.residues):
            others = _prod(lins, skip=j)
            for r in range(self.L):
                for c in range(self.L):
                    if not is_zero(A[r][c]):
                        out[r][c] = out[r][c] + others * A[r][c]
        return out


def _prod(polys, skip=None, power=1):
    out = Poly([1])
    for idx, p in enumerate(polys):
        if idx != skip:
            for _ in range(power):
                out = out * p
    return out


def _scale_poly_matrix(M, c):
    return [[p * c for p in row] for row in M]


def _add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _lower_part(A):
    """Lower triangle including the diagonal."""
    L = len(A)
    return [[A[r][c] if c <= r else 0 for c in range(L)] for r in range(L)]


# ---------------------------------------------------------------------------
# systems attached to the hypergeometric solution


def hypergeometric_system(p: HGParams) -> FuchsianSystem:
    """Residues ``A_i = b^(i) c^(i)`` of the system carrying the hypergeometric solution."""
    L, N = p.L, p.N
    ex = exponents_from_params(p)
    if not ex.non_resonant():
        raise NonGenericError("integer difference among the exponents at 0 or infinity")
    fam = MomentFamily(p)
    h00 = fam.table()(0, 0)
    b0 = [ParamJet(N)] + [h00 * ex.kappa[k] for k in range(1, L)]
    minus_inv = -h00.inverse()
    c0 = [ParamJet.constant(N, 1)] + [minus_inv] * (L - 1)
    residues = [outer(b0, c0)]
    bs, cs = [b0], [c0]
    for i in range(N):
        up = fam.shifted(i, +1)
        th = ex.theta[i + 1]
        b = [ParamJet.constant(N, -th)] + [up(k, 0) * (-th) for k in range(1, L)]
        c = [ParamJet.constant(N, 1)] + [ParamJet(N)] * (L - 1)
        residues.append(outer(b, c))
        bs.append(b)
        cs.append(c)
    residues.append(infinity_residue_upper(ex.e, residues))
    return FuchsianSystem(L, N, residues, ex, {"b": bs, "c": cs, "params": p})


def residue_relations_hold(sys: FuchsianSystem) -> bool:
    """``tr A_i = -theta_i`` and ``A_{N+2}`` lower triangular with diagonal ``kappa - e``."""
    ex = sys.exponents
    L = sys.L
    for i in range(sys.N + 1):
        A = sys.residues[i]
        tr = sum((A[k][k] for k in range(L)), ParamJet(sys.N))
        if not (tr == -ex.theta[i]):
            return False
    Ainf = sys.residue_at_infinity()
    if not is_lower_triangular(Ainf):
        return False
    return all(Ainf[k][k] == ex.kappa[k] - ex.e[k] for k in range(L))


# ---------------------------------------------------------------------------
# deformation equations


def deformation_matrix_cleared(sys: FuchsianSystem, i: int):
    """``D(z) B_i(z)`` with ``B_i = A_i/(u_i - z) - (A_i)_LT / u_i`` (1-based ``i``)."""
    if not 1 <= i <= sys.N:
        raise UsageError(f"deformation index {i} out of range 1..{sys.N}")
    lins = [Poly([-u, 1]) for u in sys.poles()]
    D = _prod(lins)
    others = _prod(lins, skip=i)
    A = sys.residues[i]
    xi = ParamJet.variable(sys.N, i - 1)
    low = _lower_part(A)
    L = sys.L
    out = zeros(L, L, Poly())
    for r in range(L):
        for c in range(L):
            out[r][c] = others * (-A[r][c]) - D * (low[r][c] * xi)
    return out


def d_du(a, i, nvars):
    """``d/du_i = -x_i^2 d/dx_i`` (1-based ``i``)."""
    xi = ParamJet.variable(nvars, i - 1)
    return -(xi * xi) * partial(a, i - 1) if not is_zero(a) else a


def compatibility_residual(sys: FuchsianSystem, i: int):
    """``D(z)^2 (dA/du_i - dB_i/dz + [A, B_i])`` as a matrix of polynomials in ``z``.

    The double-pole terms ``A_i/(z - u_i)^2`` from both derivatives cancel
    identically and are left out.
    """
    L, N = sys.L, sys.N
    lins = [Poly([-u, 1]) for u in sys.poles()]
    At = sys.cleared()
    Bt = deformation_matrix_cleared(sys, i)
    out = _sub(matmul(At, Bt), matmul(Bt, At))
    for j, A in enumerate(sys.residues):
        weight = lins[j] * _prod(lins, skip=j, power=2)
        for r in range(L):
            for c in range(L):
                d = d_du(A[r][c], i, N)
                if not is_zero(d):
                    out[r][c] = out[r][c] + weight * d
    return out


def _coeffs(p):
    return p.coeffs if isinstance(p, Poly) else (p,)


def _numerator(c):
    if isinstance(c, LocalFraction):
        return c.numerator
    return c


def coefficient_vanishes(c, order) -> bool:
    """``c`` (scalar, jet or local fraction) cleared of its denominator is zero through ``order``."""
    num = _numerator(c)
    if isinstance(num, ParamJet):
        return num.order >= order and num.truncate(order).is_zero()
    return num == 0


def poly_matrix_vanishes(M, order) -> bool:
    """Every coefficient, cleared of its denominator, is zero through degree ``order``."""
    return all(coefficient_vanishes(c, order) for row in M for p in row for c in _coeffs(p))


# ---------------------------------------------------------------------------
# Schlesinger transformation


@dataclass
class Transform:
    system: FuchsianSystem
    R: list
    Rinv: list
    n: int


def multiplier_for(p: HGParams, n: int):
    """``R`` and ``R^{-1}`` from the approximation problems for ``(1, f_1, .., f_{L-1})``."""
    tab = HGMomentTable(p)
    order = n * p.L + 1
    f = [tab.series(k, order) for k in range(p.L)]
    prob = TypeIProblem(f, n)
    rows = solve_all_type_i(prob)
    cols = solve_all_type_ii(prob)
    return build_R(rows, n), build_Rinv(cols, n)


def _eval_matrix(M, z):
    return [[p(z) for p in row] for row in M]


def schlesinger_transform(sys: FuchsianSystem, R, Rinv, n: int) -> Transform:
    """``A_i -> R(u_i) A_i R^{-1}(u_i)``."""
    N = sys.N
    new = []
    for u, A in zip(sys.poles(), sys.residues):
        Ru = _eval_matrix(R, u)
        Ri = _eval_matrix(Rinv, u)
        new.append(matmul(matmul(Ru, A), Ri))
    ex = sys.exponents
    L = sys.L
    shifted = None
    if ex is not None:
        kappa = (ex.kappa[0] + n * (L - 1),) + tuple(k - n for k in ex.kappa[1:])
        shifted = ExponentData(ex.e, kappa, ex.theta)
    out = FuchsianSystem(L, N, new, shifted, {"source": sys})
    return Transform(out, R, Rinv, n)


def transform_certificate(sys: FuchsianSystem, tr: Transform, order: int) -> bool:
    """``D (R A R^{-1} + R' R^{-1})`` equals ``D sum_i A^_i/(z - u_i)`` exactly."""
    D = _prod([Poly([-u, 1]) for u in sys.poles()])
    lhs = matmul(matmul(tr.R, sys.cleared()), tr.Rinv)
    dR = [[q.deriv() for q in row] for row in tr.R]
    lhs = _add(lhs, _scale_poly_matrix(matmul(dR, tr.Rinv), D))
    rhs = tr.system.cleared()
    return poly_matrix_vanishes(_sub(lhs, rhs), order)


def residue_jet(a):
    """A residue entry as a jet, cancelling removable poles."""
    if isinstance(a, LocalFraction):
        return a.to_jet()
    return a


def eigenvalue_shift_check(before: FuchsianSystem, after: FuchsianSystem, n: int) -> bool:
    """Characteristic polynomial of ``A^_{N+2}`` at ``x = 0`` against the shifted exponents."""
    L = before.L
    shift = [n * (L - 1)] + [-n] * (L - 1)

    def at_zero(M):
        out = []
        for row in M:
            r = []
            for a in row:
                a = residue_jet(a)
                r.append(a.constant_term() if hasattr(a, "constant_term") else Fraction(a))
            out.append(r)
        return out

    A0 = at_zero(before.residue_at_infinity())
    A1 = at_zero(after.residue_at_infinity())
    if not is_lower_triangular(A0):
        raise NonGenericError("infinity residue is not triangular; eigenvalues not explicit")
    t = Poly([0, 1])
    expected = Poly([1])
    for k in range(L):
        expected = expected * (t - (A0[k][k] + shift[k]))
    return charpoly(A1) == expected


def require(ok: bool, what: str):
    if not ok:
        raise InvariantViolation(what)


# ---------------------------------------------------------------------------
# residue vectors and canonical variables after the transformation


def _row_times(vec, M, nvars):
    L = len(M)
    out = []
    for k in range(L):
        acc = _lf(0, nvars)
        for a in range(L):
            if not is_zero(vec[a]) and not is_zero(M[a][k]):
                acc = acc + vec[a] * M[a][k]
        out.append(acc)
    return out


def direct_c_hat(sys: FuchsianSystem, tr: Transform):
    """``c^(i) R^{-1}(u_i)`` normalized to a leading 1, for ``i = 0..N``.

    Returns ``c[i][k-1]`` for ``k = 1..L-1`` as jets.
    """
    N = sys.N
    out = []
    for i, u in enumerate(sys.poles()[: N + 1]):
        Ri = _eval_matrix(tr.Rinv, u)
        v = _row_times(sys.extras["c"][i], Ri, N)
        if not v[0].is_unit():
            raise NonGenericError(f"leading component of the transformed c^({i}) vanishes")
        out.append([residue_jet(v[k] / v[0]) for k in range(1, sys.L)])
    return out


def direct_canonical(sys: FuchsianSystem, tr: Transform):
    """``q = c^(i)_k / c^(0)_k`` and ``qp = -(A^_i)_{kk}`` from the transformed system."""
    c = direct_c_hat(sys, tr)
    N, L = sys.N, sys.L
    q, qp = [], []
    for i in range(1, N + 1):
        Ahat = tr.system.residues[i]
        qi, hi = [], []
        for k in range(1, L):
            den = c[0][k - 1]
            if not den.is_unit():
                raise NonGenericError("transformed c^(0) has a vanishing component")
            qi.append(c[i][k - 1] * den.inverse())
            hi.append(-residue_jet(Ahat[k][k]))
        q.append(qi)
        qp.append(hi)
    return q, qp
