"""The polynomial Hamiltonians of the Schlesinger system in canonical variables.

Variables are ``q_k^(i), p_k^(i)`` for ``i = 1..N``, ``k = 1..L-1``.  The
remaining quantities are eliminated through

    q_0^(i) = q_l^(0) = 1,  x_0 = 1,
    p_0^(i) = theta_i - sum_{k>=1} q_k^(i) p_k^(i),
    p_l^(0) = kappa_l - sum_{i>=1} q_l^(i) p_l^(i).

Coefficients live in :class:`LocalFraction` (poles at ``x_i`` and
``x_i - x_j``); ``1/(x_i - 1)`` is folded in as a unit to the working order.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UsageError
from .exact import is_zero
from .jets import LocalFraction, ParamJet, partial


class CanonPoly:
    """Polynomial in the canonical variables: ``{exponent tuple: coefficient}``."""

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            if not is_zero(c):
                self.terms[e] = c

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, v):
        e = [0] * nvars
        e[v] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def __add__(self, other):
        if not isinstance(other, CanonPoly):
            other = CanonPoly.constant(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return CanonPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return CanonPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CanonPoly):
            return CanonPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return CanonPoly(self.nvars, out)

    __rmul__ = __mul__

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def diff(self, v: int) -> "CanonPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[v]
            if k:
                e2 = list(e)
                e2[v] -= 1
                out[tuple(e2)] = c * k
        return CanonPoly(self.nvars, out)

    def evaluate(self, values):
        """Substitute ``values`` (one per variable); coefficients stay as they are."""
        acc = 0
        for e, c in self.terms.items():
            term = c
            for v, k in enumerate(e):
                if k:
                    term = term * values[v] ** k
            acc = term + acc
        return acc


class Layout:
    """Variable numbering: ``q(i, k)`` then ``p(i, k)``, ``i = 1..N``, ``k = 1..L-1``."""

    def __init__(self, L: int, N: int):
        if L < 2 or N < 1:
            raise UsageError("need L >= 2 and N >= 1")
        self.L, self.N = L, N
        self.half = N * (L - 1)
        self.nvars = 2 * self.half

    def q(self, i, k):
        return (i - 1) * (self.L - 1) + (k - 1)

    def p(self, i, k):
        return self.half + self.q(i, k)

    def flatten(self, q, p):
        """Values ``q[i-1][k-1]``, ``p[i-1][k-1]`` as one list in variable order."""
        out = [None] * self.nvars
        for i in range(1, self.N + 1):
            for k in range(1, self.L):
                out[self.q(i, k)] = q[i - 1][k - 1]
                out[self.p(i, k)] = p[i - 1][k - 1]
        return out


def _unit_reciprocal(nvars, i, order):
    """``1/(x_i - 1)`` (0-based ``i``) as a jet of the given order."""
    u = ParamJet.variable(nvars, i) - 1
    return LocalFraction(ParamJet.constant(nvars, 1, order), units=(u,))


class Hamiltonians:
    """``H_1 .. H_N`` for fixed exponents and a working jet order."""

    def __init__(self, L, N, e, kappa, theta, order):
        self.layout = lay = Layout(L, N)
        self.L, self.N, self.order = L, N, order
        self.e = [Fraction(v) for v in e]
        self.kappa = [Fraction(v) for v in kappa]
        self.theta = [Fraction(v) for v in theta]  # theta_0 .. theta_N
        nv = lay.nvars

        def var(v):
            return CanonPoly.variable(nv, v)

        one = CanonPoly.constant(nv, Fraction(1))
        Q = {}
        P = {}
        for i in range(1, N + 1):
            Q[i, 0] = one
            for k in range(1, L):
                Q[i, k] = var(lay.q(i, k))
                P[i, k] = var(lay.p(i, k))
            P[i, 0] = self.theta[i] - sum((Q[i, k] * P[i, k] for k in range(1, L)), CanonPoly(nv))
        for l in range(L):
            Q[0, l] = one
            P[0, l] = self.kappa[l] - sum((Q[i, l] * P[i, l] for i in range(1, N + 1)), CanonPoly(nv))
        self.Q, self.P = Q, P
        self.H = [self._build(i) for i in range(1, N + 1)]

    def _coupling(self, i, j):
        """``x_j / (x_i - x_j)`` with ``x_0 = 1``."""
        n = self.N
        if j == 0:
            return _unit_reciprocal(n, i - 1, self.order)
        xj = ParamJet.variable(n, j - 1)
        return LocalFraction(xj, {("d", i - 1, j - 1): 1})

    def _build(self, i):
        L, N, Q, P = self.L, self.N, self.Q, self.P
        nv = self.layout.nvars
        poly = CanonPoly(nv)
        for k in range(L):
            poly = poly + Q[i, k] * P[i, k] * self.e[k]
        for j in range(N + 1):
            for k in range(L):
                for l in range(k + 1, L):
                    poly = poly + Q[i, k] * P[j, k] * Q[j, l] * P[i, l]
        for j in range(N + 1):
            if j == i:
                continue
            inner = CanonPoly(nv)
            for k in range(L):
                for l in range(L):
                    inner = inner + Q[i, k] * P[j, k] * Q[j, l] * P[i, l]
            poly = poly + inner * self._coupling(i, j)
        inv_x = LocalFraction.reciprocal_variable(N, i - 1)
        return poly * inv_x


def hamilton_residuals(ham: Hamiltonians, q, p):
    """All residuals ``d q/d x_j - dH_j/dp`` and ``d p/d x_j + dH_j/dq``.

    ``q, p`` are nested lists ``[i-1][k-1]`` of jets or local fractions.
    Returns a dict keyed by ``(kind, j, i, k)``.
    """
    lay = ham.layout
    vals = [LocalFraction.lift(v, ham.N) for v in lay.flatten(q, p)]
    out = {}
    for j in range(1, ham.N + 1):
        H = ham.H[j - 1]
        for i in range(1, ham.N + 1):
            for k in range(1, ham.L):
                vq, vp = lay.q(i, k), lay.p(i, k)
                dq = partial(vals[vq], j - 1)
                dp = partial(vals[vp], j - 1)
                rq = dq - H.diff(vp).evaluate(vals)
                rp = dp + H.diff(vq).evaluate(vals)
                out[("q", j, i, k)] = LocalFraction.lift(rq, ham.N)
                out[("p", j, i, k)] = LocalFraction.lift(rp, ham.N)
    return out


def cleared(r: LocalFraction) -> ParamJet:
    """Residual numerator after multiplying by its denominator product."""
    return r.numerator


def vanishes_to(r: LocalFraction, order: int) -> bool:
    """The cleared residual is zero through total degree ``order``."""
    num = cleared(r)
    return num.order >= order and num.truncate(order).is_zero()


class ResidualReport:
    """Hamilton residuals of one solution, certified through ``checked_order``."""

    def __init__(self, residuals: dict, checked_order: int):
        self.residuals = residuals
        self.checked_order = checked_order

    @property
    def zero(self) -> bool:
        return all(vanishes_to(r, self.checked_order) for r in self.residuals.values())

    def failures(self):
        return [k for k, r in self.residuals.items() if not vanishes_to(r, self.checked_order)]
