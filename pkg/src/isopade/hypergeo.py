"""Hypergeometric moments, block-Toeplitz determinants and the special
solutions of the Hamiltonian system built from them.

Moments are stored divided by the common Gamma prefactor
``prod_l Gamma(alpha_l) Gamma(gamma_l - alpha_l) / Gamma(gamma_l)``; every
identity used here is homogeneous in the moments, so that constant drops
out and everything stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import factorial

from .errors import NonGenericError, ParameterError, UsageError
from .exact import TruncatedSeries
from .hamiltonian import Hamiltonians, ResidualReport, hamilton_residuals
from .jets import ParamJet, hirota_d, monomials
from .linalg import det
from .toeplitz import MomentTable, block_toeplitz_delta, standard_index


def pochhammer(a, k: int) -> Fraction:
    if k < 0:
        raise UsageError("Pochhammer index must be >= 0")
    out = Fraction(1)
    a = Fraction(a)
    for i in range(k):
        out *= a + i
    return out


@dataclass(frozen=True)
class HGParams:
    alpha: tuple   # alpha_1 .. alpha_{L-1}
    beta: tuple    # beta_1 .. beta_N
    gamma: tuple   # gamma_1 .. gamma_{L-1}
    order: int = 6  # jet order M

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(Fraction(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(Fraction(b) for b in self.beta))
        object.__setattr__(self, "gamma", tuple(Fraction(g) for g in self.gamma))
        if len(self.alpha) != len(self.gamma) or not self.alpha:
            raise UsageError("alpha and gamma need the same length >= 1")
        if not self.beta:
            raise UsageError("need at least one beta")
        if self.order < 0:
            raise UsageError("jet order must be >= 0")

    @property
    def L(self):
        return len(self.alpha) + 1

    @property
    def N(self):
        return len(self.beta)

    def shift_beta(self, i: int, delta: int) -> "HGParams":
        """``beta_i -> beta_i + delta`` (0-based ``i``); ``delta = -1`` is the down-shift."""
        b = list(self.beta)
        b[i] += delta
        return replace(self, beta=tuple(b))

    def with_order(self, order: int) -> "HGParams":
        return replace(self, order=order)


# ---------------------------------------------------------------------------
# exponent data <-> hypergeometric parameters


@dataclass(frozen=True)
class ExponentData:
    e: tuple       # e_0 .. e_{L-1}
    kappa: tuple   # kappa_0 .. kappa_{L-1}
    theta: tuple   # theta_0 .. theta_N

    def __post_init__(self):
        for name in ("e", "kappa", "theta"):
            object.__setattr__(self, name, tuple(Fraction(v) for v in getattr(self, name)))

    @property
    def L(self):
        return len(self.e)

    @property
    def N(self):
        return len(self.theta) - 1

    def fuchs_ok(self) -> bool:
        return sum(self.kappa) == sum(self.theta)

    def normalization_ok(self) -> bool:
        return sum(self.e) == Fraction(self.L - 1, 2)

    def infinity_exponents(self):
        return tuple(k - e for k, e in zip(self.kappa, self.e))

    def non_resonant(self) -> bool:
        """No nonzero integer differences among the exponents at 0 and at infinity."""
        for ex in (self.e, self.infinity_exponents()):
            for a in range(len(ex)):
                for b in range(a + 1, len(ex)):
                    d = ex[a] - ex[b]
                    if d.denominator == 1:
                        return False
        return True


def exponents_from_params(p: HGParams, n: int = 0, gamma_sign: int = -1) -> ExponentData:
    """Exponent data matched to ``p``.

    ``alpha_k = e_k - e_0``, ``beta_i = -theta_i`` and, for the transformed
    solution with shift ``n``, ``gamma_k = e_k - e_0 - kappa_k + gamma_sign * n``
    where ``kappa`` are the exponents after the transformation.  With
    ``n = 0`` this is the untransformed correspondence.  The default
    ``gamma_sign = -1`` is the one under which the transformed solution
    solves the Hamiltonian system (the transformation lowers ``kappa_k`` by
    ``n``); ``+1`` is kept for comparison.
    """
    L = p.L
    e0 = (Fraction(L - 1, 2) - sum(p.alpha)) / L
    e = (e0,) + tuple(e0 + a for a in p.alpha)
    theta_i = tuple(-b for b in p.beta)
    kappa_rest = tuple(a - g + gamma_sign * n for a, g in zip(p.alpha, p.gamma))
    kappa0 = sum(theta_i) + n * (L - 1)
    theta0 = kappa0 + sum(kappa_rest) - sum(theta_i)
    return ExponentData(e, (kappa0,) + kappa_rest, (theta0,) + theta_i)


# ---------------------------------------------------------------------------
# series and moments


def f_ln_series(p: HGParams, alpha_shift=None, gamma_shift=None) -> ParamJet:
    """``F_{L,N}`` with ``alpha_l + alpha_shift[l]``, ``gamma_l + gamma_shift[l]``, to order M."""
    L1, N, M = p.L - 1, p.N, p.order
    a = [p.alpha[l] + (alpha_shift[l] if alpha_shift else 0) for l in range(L1)]
    g = [p.gamma[l] + (gamma_shift[l] if gamma_shift else 0) for l in range(L1)]
    # common factor prod_l (a_l)_d / (g_l)_d by total degree d
    common = [Fraction(1)]
    for d in range(1, M + 1):
        c = common[-1]
        for al, gl in zip(a, g):
            if gl + d - 1 == 0:
                raise ParameterError(f"gamma parameter {gl} hits a pole of the series")
            c = c * (al + d - 1) / (gl + d - 1)
        common.append(c)
    per_var = []
    for b in p.beta:
        row = [Fraction(1)]
        for k in range(1, M + 1):
            row.append(row[-1] * (b + k - 1) / k)
        per_var.append(row)
    terms = {}
    for exps in monomials(N, M):
        c = common[sum(exps)]
        if c == 0:
            continue
        for i, k in enumerate(exps):
            c *= per_var[i][k]
        if c:
            terms[exps] = c
    return ParamJet(N, M, terms)


def moment_shifts(L: int, k: int, j: int):
    """Shifts ``(s, t)`` of alpha and gamma for the moment ``h^k_j``."""
    s = [j + 1 if l < k else j for l in range(1, L)]
    t = [j + 1 if l <= k else j for l in range(1, L)]
    return s, t


def moment_prefactor(p: HGParams, k: int, j: int) -> Fraction:
    s, t = moment_shifts(p.L, k, j)
    out = Fraction(1)
    for idx in range(p.L - 1):
        l = idx + 1
        a, g = p.alpha[idx], p.gamma[idx]
        den = pochhammer(g, t[idx])
        if den == 0:
            raise ParameterError(f"(gamma_{l})_{t[idx]} vanishes")
        out *= pochhammer(a, s[idx]) / den
        if l == k:
            out *= g - a
    return out


def normalized_moment(p: HGParams, k: int, j: int) -> ParamJet:
    """``h^k_j`` divided by the Gamma prefactor."""
    if not 0 <= k < p.L:
        raise UsageError(f"moment index k = {k} out of range")
    if j < 0:
        raise UsageError("moment index j must be >= 0")
    s, t = moment_shifts(p.L, k, j)
    return f_ln_series(p, s, t) * moment_prefactor(p, k, j)


class HGMomentTable(MomentTable):
    """Moments ``h^k_j`` computed on demand and cached."""

    def __init__(self, p: HGParams):
        self.p = p
        self._cache = {}
        self.seqs = [[] for _ in range(p.L)]

    @property
    def L(self):
        return self.p.L

    def depth(self, i):
        return float("inf")

    def __call__(self, i, j):
        if not 0 <= i < self.p.L:
            raise UsageError(f"sequence index {i} out of range")
        if j < 0:
            return 0
        key = (i, j)
        if key not in self._cache:
            self._cache[key] = normalized_moment(self.p, i, j)
        return self._cache[key]

    def series(self, k: int, order: int) -> TruncatedSeries:
        """``f_k(w) = sum_j h^k_j w^j``; ``f_0`` is taken to be 1."""
        if k == 0:
            return TruncatedSeries([ParamJet.constant(self.p.N, 1)], order)
        return TruncatedSeries([self(k, j) for j in range(order + 1)], order)


class MomentFamily:
    """Moment tables for ``p`` and its beta-shifts, sharing caches."""

    def __init__(self, p: HGParams):
        self.p = p
        self._tables = {}

    def table(self, shift=None) -> HGMomentTable:
        shift = tuple(shift) if shift else (0,) * self.p.N
        if shift not in self._tables:
            q = self.p
            for i, d in enumerate(shift):
                if d:
                    q = q.shift_beta(i, d)
            self._tables[shift] = HGMomentTable(q)
        return self._tables[shift]

    def shifted(self, i: int, delta: int) -> HGMomentTable:
        s = [0] * self.p.N
        s[i] = delta
        return self.table(s)

    def delta(self, k, nvec, i=None, d=0):
        """``Delta^(k)(n)``, optionally with beta_i shifted by ``d``."""
        tab = self.table() if i is None else self.shifted(i, d)
        return block_toeplitz_delta(tab, k, list(nvec))


def delta_from_moments(p: HGParams, k: int, nvec) -> ParamJet:
    return block_toeplitz_delta(HGMomentTable(p), k, list(nvec))


def moment_degree(nvec) -> int:
    """Each ``Delta(n)`` is homogeneous of degree ``|n|`` in the moments."""
    return sum(nvec)


# ---------------------------------------------------------------------------
# special solutions


@dataclass
class HLNSolution:
    """Canonical variables ``q[i][k], p[i][k]`` (0-based ``i``, ``k = 1..L-1`` at index ``k-1``)."""

    L: int
    N: int
    q: list
    p: list
    exponents: ExponentData
    source: str
    shift: int = 0
    order: int = 0
    extras: dict = field(default_factory=dict)


def _ev(nvec, k, delta):
    out = list(nvec)
    out[k] += delta
    return out


def hgsol_build(p: HGParams, sign: int = 1) -> HLNSolution:
    """``q = 0``, ``p_k^(i) = -theta_i l_i^{-1}(h^k_0) / h^0_0`` (``sign = 1``).

    ``sign = -1`` flips the relative sign of the integral and the up-shifted
    moment; it exists only so the two conventions can be compared.
    """
    fam = MomentFamily(p)
    h00 = fam.table()(0, 0)
    inv = h00.inverse()
    ex = exponents_from_params(p)
    zero = ParamJet(p.N)
    q = [[zero for _ in range(p.L - 1)] for _ in range(p.N)]
    pv = []
    for i in range(p.N):
        theta = ex.theta[i + 1]
        up = fam.shifted(i, +1)
        pv.append([up(k, 0) * inv * (-theta * sign) for k in range(1, p.L)])
    return HLNSolution(p.L, p.N, q, pv, ex, "hypergeometric", 0, p.order)


def _unit_inverse(x, what):
    if not x.is_unit():
        raise NonGenericError(f"{what} has zero constant term")
    return x.inverse()


def hgi_build(p: HGParams, n: int, gamma_sign: int = -1) -> HLNSolution:
    """Transformed solution from block-Toeplitz determinants of the moments."""
    if n < 1:
        raise UsageError("shift n must be a positive integer")
    L, N = p.L, p.N
    fam = MomentFamily(p)
    nv = standard_index(L, n)
    ex = exponents_from_params(p, n, gamma_sign)
    D = {k: fam.delta(k, nv) for k in range(L + 1)}
    Dinv = {k: _unit_inverse(D[k], f"Delta^({k})") for k in range(1, L + 1)}
    d0_e0 = fam.delta(0, _ev(nv, 0, 1))
    q, pv, qp_h, qp_alt = [], [], [], []
    for i in range(N):
        xi = ParamJet.variable(N, i)
        theta = ex.theta[i + 1]
        l_d0 = fam.delta(0, nv, i, -1)
        qi, pi, hi, ai = [], [], [], []
        for k in range(1, L):
            num_u = d0_e0 * fam.delta(k + 1, _ev(nv, k, -1), i, -1)
            den_u = fam.delta(k + 1, _ev(_ev(nv, 0, 1), k, -1)) * l_d0
            U = num_u * _unit_inverse(den_u, "q denominator")
            V = hirota_d(i, D[k], D[k + 1]) * Dinv[k] * Dinv[k + 1]
            V_alt = (fam.delta(k, _ev(nv, k, 1), i, +1) * fam.delta(k + 1, _ev(nv, k, -1), i, -1)
                     * Dinv[k] * Dinv[k + 1] * (-theta))
            qi.append(-(xi * U))
            pi.append(V * _unit_inverse(U, "q/x"))
            hi.append(-(xi * V))
            ai.append(-(xi * V_alt))
        q.append(qi)
        pv.append(pi)
        qp_h.append(hi)
        qp_alt.append(ai)
    sol = HLNSolution(L, N, q, pv, ex, "transformed", n, p.order)
    sol.extras = {"qp_hirota": qp_h, "qp_alt": qp_alt, "family": fam, "deltas": D}
    return sol


def c_hat_formulas(p: HGParams, n: int):
    """``c^(0)_k`` and ``c^(i)_k`` of the transformed residues from determinants.

    Returns ``(c0, ci)`` with ``c0[k-1]`` and ``ci[i][k-1]`` for ``k = 1..L-1``.
    """
    L, N = p.L, p.N
    fam = MomentFamily(p)
    nv = standard_index(L, n)
    DL = fam.delta(L, nv)
    d0_e0 = fam.delta(0, _ev(nv, 0, 1))
    c0 = []
    for k in range(1, L):
        num = DL * fam.delta(k + 1, _ev(_ev(nv, 0, 1), k, -1))
        den = fam.delta(k, nv) * d0_e0
        v = num * _unit_inverse(den, "c0 denominator")
        c0.append(-v if (n * k + 1) % 2 else v)
    ci = []
    for i in range(N):
        xi = ParamJet.variable(N, i)
        l_d0 = fam.delta(0, nv, i, -1)
        row = []
        for k in range(1, L):
            num = DL * fam.delta(k + 1, _ev(nv, k, -1), i, -1) * xi
            den = fam.delta(k, nv) * l_d0
            v = num * _unit_inverse(den, "ci denominator")
            row.append(-v if (n * k) % 2 else v)
        ci.append(row)
    return c0, ci


def hamiltonian(ex: ExponentData, N: int, order: int) -> Hamiltonians:
    """``H_1 .. H_N`` for the exponent data ``ex``; ``order`` bounds the unit expansions."""
    return Hamiltonians(ex.L, N, ex.e, ex.kappa, ex.theta, order)


def hamilton_residual(sol: HLNSolution, checked_order: int) -> ResidualReport:
    """Residuals of Hamilton's equations on ``sol``, certified through ``checked_order``."""
    ham = hamiltonian(sol.exponents, sol.N, sol.order)
    return ResidualReport(hamilton_residuals(ham, sol.q, sol.p), checked_order)


def build_order(M: int) -> int:
    """Working jet order that leaves every residual certified through ``M - 1``."""
    return M + 2


def moment_series(p: HGParams, order: int):
    """``(1, f_1, .., f_{L-1})`` with jet coefficients."""
    tab = HGMomentTable(p)
    return [tab.series(k, order) for k in range(p.L)]



# ---------------------------------------------------------------------------
# discrete-measure oracle for the block-Toeplitz determinant


def measure_moments(measures, depth: int):
    """``h^a_j = sum_s w s^j`` for each measure, ``j = 0..depth``."""
    out = []
    for mu in measures:
        row = []
        for j in range(depth + 1):
            row.append(sum((Fraction(w) * Fraction(s) ** j for s, w in mu), Fraction(0)))
        out.append(row)
    return out


def _tuples(measures, nvec):
    """All assignments of support points to the variables ``s_{a,b}`` with their weights."""
    slots = [a for a, na in enumerate(nvec) for _ in range(na)]
    supports = [list(measures[a]) for a in slots]

    def rec(pos, pts, weight):
        if pos == len(slots):
            yield pts, weight
            return
        for s, w in supports[pos]:
            yield from rec(pos + 1, pts + [Fraction(s)], weight * Fraction(w))

    yield from rec(0, [], Fraction(1))


def _block_points(pts, nvec):
    out, pos = [], 0
    for na in nvec:
        out.append(pts[pos:pos + na])
        pos += na
    return out


def _full_vandermonde(pts):
    """``prod_{later > earlier} (s_later - s_earlier)`` in the block-major order."""
    out = Fraction(1)
    for a in range(len(pts)):
        for c in range(a):
            out *= pts[a] - pts[c]
    return out


def _leading_s(blocks, k):
    out = Fraction(1)
    for a in range(k):
        for s in blocks[a]:
            out *= s
    return out


def oracle_symmetrized(measures, k: int, nvec) -> Fraction:
    """``prod 1/n_a!`` times the sum of the symmetrized Vandermonde integrand."""
    nvec = list(nvec)
    _check_measures(measures, nvec, k)
    total = Fraction(0)
    for pts, weight in _tuples(measures, nvec):
        blocks = _block_points(pts, nvec)
        term = _leading_s(blocks, k) * _full_vandermonde(pts)
        for blk in blocks:
            for b in range(len(blk)):
                for c in range(b + 1, len(blk)):
                    term *= blk[b] - blk[c]
        total += term * weight
    for na in nvec:
        total /= factorial(na)
    return total


def oracle_unsymmetrized(measures, k: int, nvec) -> Fraction:
    """Integral of the power determinant times ``prod s_{a,j}^{n_a - j}``, before symmetrizing."""
    nvec = list(nvec)
    _check_measures(measures, nvec, k)
    size = sum(nvec)
    total = Fraction(0)
    for pts, weight in _tuples(measures, nvec):
        blocks = _block_points(pts, nvec)
        mat = [[s ** i for s in pts] for i in range(size)]
        term = det(mat) * _leading_s(blocks, k) if size else Fraction(1)
        for blk, na in zip(blocks, nvec):
            for j, s in enumerate(blk, start=1):
                term *= s ** (na - j)
        total += term * weight
    return total


def _check_measures(measures, nvec, k):
    if len(measures) != len(nvec):
        raise UsageError("need one measure per index entry")
    if not 0 <= k <= len(nvec):
        raise UsageError(f"k = {k} out of range")
    if any(na < 0 for na in nvec):
        raise UsageError("index vector entries must be nonnegative")
    for mu, na in zip(measures, nvec):
        if na and not mu:
            raise UsageError("empty measure for a nonzero block")


@dataclass
class OracleReport:
    delta: Fraction
    symmetrized: Fraction
    unsymmetrized: Fraction
    degenerate: bool

    @property
    def ok(self):
        return self.delta == self.symmetrized == self.unsymmetrized


def vandermonde_oracle(measures, k: int, nvec) -> OracleReport:
    """Compare the block-Toeplitz determinant of the measure moments with both sums.

    A measure with fewer distinct points than its block needs makes both
    sides vanish; that is flagged as degenerate rather than raised.
    """
    nvec = list(nvec)
    depth = 2 * sum(nvec) + 1
    table = MomentTable(measure_moments(measures, depth))
    delta = Fraction(block_toeplitz_delta(table, k, nvec))
    degenerate = any(len({Fraction(s) for s, w in mu if w}) < na for mu, na in zip(measures, nvec))
    return OracleReport(delta, oracle_symmetrized(measures, k, nvec),
                        oracle_unsymmetrized(measures, k, nvec), degenerate)
