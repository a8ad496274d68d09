"""Vector continued fraction of Stieltjes type.

One step cycles the vector ``f`` and removes constant terms:

    f'_0 = f_{L-1},   f'_r = (f_{r-1} - (a^{r-1}/a^r) f_r) / w,

with ``a^r = f_r(0)``.  In matrix form ``f' = T f``, ``T = M / w`` where
``M`` is a constant-plus-linear polynomial matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BreakdownError, InvariantViolation, SingularInputError, UsageError
from .exact import Poly, TruncatedSeries, inverse, is_zero, series_reciprocal
from .linalg import identity, matmul, poly_det, poly_matrix


def reciprocal_iota(phi):
    """``(phi_2/phi_1, .., phi_{L-1}/phi_1, 1/phi_1)``."""
    if not phi:
        raise UsageError("empty vector")
    if is_zero(phi[0][0]):
        raise SingularInputError("phi_1 has zero constant term")
    inv = series_reciprocal(phi[0])
    return [p * inv for p in phi[1:]] + [inv]


def inhomogeneous(f):
    """``phi_i = f_i / f_0`` for ``i = 1 .. L-1``."""
    inv = series_reciprocal(f[0])
    return [fi * inv for fi in f[1:]]


@dataclass
class VcfState:
    f: list
    step: int = 0

    @property
    def L(self):
        return len(self.f)

    @property
    def a(self):
        return [s[0] for s in self.f]


def step_matrix(a):
    """``M = w T`` for constant terms ``a`` (list of Poly rows)."""
    L = len(a)
    M = [[Poly() for _ in range(L)] for _ in range(L)]
    M[0][L - 1] = Poly.monomial(1)
    for r in range(1, L):
        M[r][r - 1] = Poly([1])
        M[r][r] = Poly([-Fraction(a[r - 1]) / a[r]])
    return M


def step_matrix_inverse(a):
    """``T^{-1}``, a polynomial matrix: ``f_i = (a^i/a^{L-1}) f'_0 + w sum_{j>=i} (a^i/a^j) f'_{j+1}``."""
    L = len(a)
    out = [[Poly() for _ in range(L)] for _ in range(L)]
    for i in range(L):
        out[i][0] = Poly([Fraction(a[i]) / a[L - 1]])
        for j in range(i, L - 1):
            out[i][j + 1] = Poly.monomial(1, Fraction(a[i]) / a[j])
    return out


def _check_admissible(state):
    for idx, c in enumerate(state.a):
        if is_zero(c):
            raise BreakdownError(f"constant term of f_{idx} vanishes at step {state.step}", state.step, idx)


def vcf_step(state: VcfState):
    """Return ``(M, next_state)`` with ``T = M / w``."""
    _check_admissible(state)
    if state.f[0].order < 1:
        raise UsageError("series exhausted: truncation order too small for another step")
    a = state.a
    L = state.L
    new = [state.f[L - 1].truncate(state.f[0].order - 1)]
    for r in range(1, L):
        diff = state.f[r - 1] - state.f[r] * (Fraction(a[r - 1]) / a[r])
        if not is_zero(diff[0]):
            raise InvariantViolation("elimination left a constant term")
        new.append(TruncatedSeries(diff.coeffs[1:], diff.order - 1, diff.var))
    return step_matrix(a), VcfState(new, state.step + 1)


@dataclass
class Expansion:
    matrices: list = field(default_factory=list)   # M[k] = w T[k]
    constants: list = field(default_factory=list)  # a[k]
    states: list = field(default_factory=list)


def expand(f, steps: int) -> Expansion:
    state = VcfState(list(f))
    out = Expansion(states=[state])
    for _ in range(steps):
        out.constants.append(state.a)
        M, state = vcf_step(state)
        out.matrices.append(M)
        out.states.append(state)
    return out


def step_det_ok(a) -> bool:
    """``det T = (-w)^{1-L}``, i.e. ``det M = (-1)^{L-1} w``."""
    L = len(a)
    sign = -1 if (L - 1) % 2 else 1
    return poly_det(step_matrix(a)) == Poly.monomial(1, sign)


def step_inverse_ok(a) -> bool:
    L = len(a)
    prod = matmul(step_matrix(a), step_matrix_inverse(a))
    w = Poly.monomial(1)
    return all(prod[i][j] == (w if i == j else Poly()) for i in range(L) for j in range(L))


@dataclass
class Convergent:
    numerators: list   # Poly per component
    denominator: Poly

    def series(self, order: int, var: str = "w"):
        den = TruncatedSeries.from_poly(self.denominator, order, var)
        inv = series_reciprocal(den)
        return [TruncatedSeries.from_poly(p, order, var) * inv for p in self.numerators]


def convergent(f, k: int) -> Convergent:
    """``Pi_k`` from ``T[0]^{-1} .. T[k-1]^{-1} e_0``."""
    if k < 1:
        raise UsageError("convergent index must be >= 1")
    exp = expand(f, k)
    L = len(f)
    vec = [[Poly([1])]] + [[Poly()] for _ in range(L - 1)]
    for a in reversed(exp.constants):
        vec = matmul(step_matrix_inverse(a), vec)
    den = vec[0][0]
    if is_zero(den[0]):
        raise SingularInputError("convergent denominator vanishes at w = 0")
    return Convergent([v[0] for v in vec[1:]], den)


def contact_order_ok(f, k: int) -> bool:
    """``phi - Pi_k = O(w^k)`` coefficientwise."""
    phi = inhomogeneous(f)
    order = phi[0].order
    if order < k - 1:
        raise UsageError("series too short to certify the contact order")
    approx = convergent(f, k).series(order, phi[0].var)
    return all((p - q).is_big_o(min(k, order + 1)) for p, q in zip(phi, approx))


def step_product(exp: Expansion, count: int):
    """``M[count-1] .. M[0] = w^count T[count-1] .. T[0]``."""
    L = len(exp.matrices[0])
    prod = poly_matrix(identity(L))
    for M in exp.matrices[:count]:
        prod = matmul(M, prod)
    return prod


@dataclass
class EquivalenceReport:
    raw_monic: bool
    shape_ok: bool
    matches: bool
    rescaled: list

    @property
    def ok(self):
        return self.shape_ok and self.matches


def _shape_ok(P):
    L = len(P)
    for i in range(L):
        for j in range(L):
            p = P[i][j]
            if i == j and p.degree != 1:
                return False
            if j > i and (p.degree > 1 or not is_zero(p[0])):
                return False
            if j < i and p.degree > 0:
                return False
    return True


def schlesinger_equivalence(f) -> EquivalenceReport:
    """Compare ``w^L T[L-1] .. T[0]`` with the order-one type I matrix."""
    from .type1 import TypeIProblem, solve_all_type_i

    L = len(f)
    exp = expand(f, L)
    P = step_product(exp, L)
    raw_monic = all(P[i][i].degree == 1 and P[i][i][1] == 1 for i in range(L))
    rescaled = []
    for i, row in enumerate(P):
        lead = P[i][i][1]
        if is_zero(lead):
            raise InvariantViolation(f"diagonal entry {i} of the step product is not linear")
        s = inverse(lead)
        rescaled.append([p * s for p in row])
    rows = solve_all_type_i(TypeIProblem(f, 1))
    Q = [r.vector for r in rows]
    matches = all(rescaled[i][j] == Q[i][j] for i in range(L) for j in range(L))
    return EquivalenceReport(raw_monic, _shape_ok(rescaled), matches, rescaled)
