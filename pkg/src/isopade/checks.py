"""Randomized instances and the invariant checks run by ``verify-all`` and the test suite.

Every check returns a dict of named booleans so a failure says which
identity broke.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .duality import (
    adjugate_inverse,
    build_R,
    build_Rinv,
    constant_term_unit_upper,
    det_R,
    exponent_shift_check,
    product_is_identity,
    verify_duality,
)
from .errors import NonGenericError, ParameterError, SingularInputError
from .exact import Poly, TruncatedSeries
from .fuchsian import (
    compatibility_residual,
    direct_c_hat,
    eigenvalue_shift_check,
    hypergeometric_system,
    multiplier_for,
    poly_matrix_vanishes,
    residue_jet,
    residue_relations_hold,
    schlesinger_transform,
    transform_certificate,
)
from .hypergeo import (
    HGParams,
    MomentFamily,
    build_order,
    c_hat_formulas,
    hamilton_residual,
    hgi_build,
    hgsol_build,
    vandermonde_oracle,
)
from .jets import ParamJet, partial
from .linalg import poly_matrix
from .toeplitz import standard_index
from .type1 import (
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
)
from .type2 import cross_orders_hold, det_rep_column, normalizer_p, normalizer_p_delta, solve_all_type_ii
from .vcf import (
    contact_order_ok,
    expand,
    inhomogeneous,
    reciprocal_iota,
    schlesinger_equivalence,
    step_det_ok,
    step_inverse_ok,
)

# ---------------------------------------------------------------------------
# random instances


def random_rational(rng: random.Random, span=9, den=9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_nonzero(rng, span=9, den=9) -> Fraction:
    while True:
        x = random_rational(rng, span, den)
        if x:
            return x


def random_series(rng, L: int, order: int, f0_one=False):
    out = []
    for k in range(L):
        if k == 0 and f0_one:
            out.append(TruncatedSeries([1], order))
            continue
        coeffs = [random_nonzero(rng)] + [random_rational(rng) for _ in range(order)]
        out.append(TruncatedSeries(coeffs, order))
    return out


def worked_example(order: int):
    """``f = (1, 1/(1-w))``."""
    return [TruncatedSeries([1], order), TruncatedSeries.geometric(1, order)]


def generic_problem(rng, L, n, order=None, f0_one=False, attempts=20):
    """A random problem whose type I and II systems have full rank."""
    order = order if order is not None else n * L + n + 1
    for _ in range(attempts):
        p = TypeIProblem(random_series(rng, L, order, f0_one), n)
        try:
            solve_all_type_i(p)
            solve_all_type_ii(p)
        except NonGenericError:
            continue
        return p
    raise NonGenericError("no generic instance found")


def random_hg_params(rng, L, N, order):
    """Rational parameters away from the integers."""
    def pick():
        while True:
            x = Fraction(rng.randint(1, 40), rng.randint(2, 13))
            if x.denominator > 1:
                return x
    alpha = [pick() for _ in range(L - 1)]
    gamma = [a + pick() for a in alpha]
    beta = [pick() for _ in range(N)]
    return HGParams(alpha, beta, gamma, order)


# ---------------------------------------------------------------------------
# approximation problems and duality


def duality_checks(p: TypeIProblem) -> dict:
    L, n = p.L, p.n
    m = n * (L - 1)
    rows = solve_all_type_i(p)
    cols = solve_all_type_ii(p)
    D = verify_duality(rows, cols, n)
    R = build_R(rows, n)
    Rinv = build_Rinv(cols, n)
    return {
        "duality_identity": all(d == 1 for d in D),
        "det_R_one": det_R(R) == Poly([1]),
        "R_Rinv_identity": product_is_identity(R, Rinv),
        "adjugate_matches": adjugate_inverse(R) == poly_matrix(Rinv),
        "R0_unit_upper": constant_term_unit_upper(R),
        "exponent_shift": exponent_shift_check(rows, p.f, n).ok,
        "deg_Q_diag": all(rows[i].Q[i].degree == n for i in range(L)),
        "deg_P_diag": all(cols[j].P[j].degree == m for j in range(L)),
        "Q00_zero_constant": rows[0].Q[0][0] == 0,
        "type_I_remainders": all(r.remainder.is_big_o(n * L) for r in rows),
        "type_II_cross_orders": all(cross_orders_hold(p, c) for c in cols),
    }


def determinantal_checks(p: TypeIProblem) -> dict:
    """Bordered-determinant and block-Toeplitz formulas against the kernel solutions."""
    L, n = p.L, p.n
    rows = solve_all_type_i(p)
    cols = solve_all_type_ii(p)
    out = {}
    out["Q_bordered"] = all(det_rep_q(p, i, j) == rows[i].Q[j] for i in range(L) for j in range(L))
    out["NQ_closed"] = all(normalizer_q(p, i) == normalizer_q_closed(p, i) for i in range(L))
    out["rho_leading"] = all(remainder_leading(p, i) == rows[i].remainder[n * L] for i in range(L))
    out["Q_diag_constant"] = all(diag_constant_term(p, i) == rows[i].Q[i][0] for i in range(1, L))
    out["P_bordered"] = all(det_rep_column(p, j).P == cols[j].P for j in range(L))
    if all(c == (1 if k == 0 else 0) for k, c in enumerate(p.f[0].coeffs)):
        out["NQ_delta"] = all(normalizer_q(p, i) == normalizer_q_delta(p, i) for i in range(L))
        out["rho0_delta"] = remainder_leading_delta(p) == rows[0].remainder[n * L]
        out["Q_diag_delta"] = all(diag_constant_term_delta(p, i) == rows[i].Q[i][0] for i in range(1, L))
        out["NP_delta"] = all(normalizer_p(p, j) == normalizer_p_delta(p, j) for j in range(L))
    return out


# ---------------------------------------------------------------------------
# vector continued fraction


def vcf_checks(f, max_k=6) -> dict:
    L = len(f)
    phi = inhomogeneous(f)
    cyc = phi
    for _ in range(L):
        cyc = reciprocal_iota(cyc)
    exp = expand(f, max_k)
    return {
        "iota_cycle": all(a == b for a, b in zip(cyc, phi)),
        "step_det": all(step_det_ok(a) for a in exp.constants),
        "step_inverse": all(step_inverse_ok(a) for a in exp.constants),
        "contact_orders": all(contact_order_ok(f, k) for k in range(1, max_k + 1)),
        "schlesinger_equivalence": schlesinger_equivalence(f).ok,
    }


# ---------------------------------------------------------------------------
# hypergeometric side


def contiguity_checks(p: HGParams, depth: int) -> dict:
    fam = MomentFamily(p)
    t = fam.table()
    first = all(
        sum((t(k, j) for k in range(1, p.L)), ParamJet(p.N)) == t(0, j) - t(0, j + 1)
        for j in range(depth)
    )
    second = True
    for i in range(p.N):
        x = ParamJet.variable(p.N, i)
        low = fam.shifted(i, -1)
        for k in range(p.L):
            for j in range(depth):
                if not (t(k, j) - x * t(k, j + 1) == low(k, j)):
                    second = False
    return {"sum_relation": first, "shift_relation": second}


def random_measures(rng, L, points=4):
    out = []
    for _ in range(L):
        support = set()
        while len(support) < points:
            support.add(random_rational(rng, 6, 4))
        out.append([(s, Fraction(rng.randint(1, 9), rng.randint(1, 5))) for s in sorted(support)])
    return out


def oracle_check(rng, L, size) -> dict:
    while True:
        nvec = [rng.randint(0, size) for _ in range(L)]
        if 0 < sum(nvec) <= size:
            break
    k = rng.randint(0, L)
    r = vandermonde_oracle(random_measures(rng, L, max(4, max(nvec))), k, nvec)
    return {"delta_equals_sums": r.ok and not r.degenerate}


def hgsol_checks(p: HGParams, M: int) -> dict:
    sol = hgsol_build(p.with_order(build_order(M)))
    rep = hamilton_residual(sol, M - 1)
    return {
        "q_zero": all(q.is_zero() for row in sol.q for q in row),
        "hamilton_residuals": rep.zero,
    }


def hgi_checks(p: HGParams, n: int, M: int) -> dict:
    q = p.with_order(build_order(M) + n * p.L)
    sol = hgi_build(q, n)
    rep = hamilton_residual(sol, M - 1)
    agree = all(
        a == b for ra, rb in zip(sol.extras["qp_hirota"], sol.extras["qp_alt"]) for a, b in zip(ra, rb)
    )
    sys = hypergeometric_system(q)
    R, Rinv = multiplier_for(q, n)
    tr = schlesinger_transform(sys, R, Rinv, n)
    direct = direct_c_hat(sys, tr)
    c0, ci = c_hat_formulas(q, n)
    c_ok = all(a == b for a, b in zip(direct[0], c0))
    c_ok = c_ok and all(a == b for i in range(q.N) for a, b in zip(direct[i + 1], ci[i]))
    return {"qp_forms_agree": agree, "hamilton_residuals": rep.zero, "c_hat_formulas": c_ok}


def compatibility_checks(p: HGParams, M: int) -> dict:
    sys = hypergeometric_system(p.with_order(build_order(M)))
    return {
        "residue_relations": residue_relations_hold(sys),
        "compatibility": all(
            poly_matrix_vanishes(compatibility_residual(sys, i), M - 1) for i in range(1, p.N + 1)
        ),
    }


def shift_checks(p: HGParams, n: int, M: int) -> dict:
    q = p.with_order(build_order(M) + n * p.L)
    sys = hypergeometric_system(q)
    R, Rinv = multiplier_for(q, n)
    tr = schlesinger_transform(sys, R, Rinv, n)
    return {
        "transform_certificate": transform_certificate(sys, tr, M - 1),
        "eigenvalue_shift": eigenvalue_shift_check(sys, tr.system, n),
    }


def diagonal_shift_residuals(p: HGParams, n: int, M: int, flip=False):
    """``(A^_i)_kk - (A_i)_kk - x_i d_i log(Delta-ratio_k)`` for every finite ``i`` and ``k``.

    The ratios are ``Delta^(L)/Delta^(1)`` for ``k = 0`` and ``Delta^(k)/Delta^(k+1)``
    otherwise.  ``flip`` inverts every ratio, for negative controls.
    """
    q = p.with_order(build_order(M) + n * p.L)
    sys = hypergeometric_system(q)
    R, Rinv = multiplier_for(q, n)
    tr = schlesinger_transform(sys, R, Rinv, n)
    fam = MomentFamily(q)
    nv = standard_index(q.L, n)
    D = {k: fam.delta(k, nv) for k in range(1, q.L + 1)}
    out = []
    for i in range(1, q.N + 1):
        xi = ParamJet.variable(q.N, i - 1)
        for k in range(q.L):
            num, den = (D[q.L], D[1]) if k == 0 else (D[k], D[k + 1])
            if flip:
                num, den = den, num
            log_d = partial(num, i - 1) * num.inverse() - partial(den, i - 1) * den.inverse()
            diff = residue_jet(tr.system.residues[i][k][k]) - residue_jet(sys.residues[i][k][k])
            out.append(diff - xi * log_d)
    return out


def diagonal_shift_checks(p: HGParams, n: int, M: int) -> dict:
    res = diagonal_shift_residuals(p, n, M)
    return {"diagonal_log_derivative": all(r.order >= M - 1 and r.truncate(M - 1).is_zero() for r in res)}


def retry_generic(fn, rng, *args, attempts=10):
    """Call ``fn(rng, ...)`` until it is not rejected as non-generic."""
    last = None
    for _ in range(attempts):
        try:
            return fn(rng, *args)
        except (NonGenericError, ParameterError, SingularInputError) as exc:
            last = exc
    raise last


# ---------------------------------------------------------------------------
# the quick suite behind ``verify-all``


def quick_suite(seed: int) -> dict:
    rng = random.Random(seed)
    results = {}

    def record(name, checks):
        results[name] = checks

    for L, n in ((2, 1), (3, 1), (3, 2)):
        p = generic_problem(rng, L, n)
        record(f"duality L={L} n={n}", duality_checks(p))
    for L, n in ((2, 2), (3, 1)):
        p = generic_problem(rng, L, n, f0_one=True)
        record(f"determinants L={L} n={n}", determinantal_checks(p))
    for L in (2, 3):
        record(f"vcf L={L}", vcf_checks(random_series(rng, L, 16), 6))
    record("contiguity L=3 N=2", contiguity_checks(random_hg_params(rng, 3, 2, 4), 3))
    record("oracle L=3", oracle_check(rng, 3, 4))
    hp = random_hg_params(rng, 2, 1, 6)
    record("hypergeometric solution L=2 N=1", hgsol_checks(hp, 4))
    record("transformed solution L=2 N=1 n=1", hgi_checks(hp, 1, 4))
    record("compatibility L=2 N=1", compatibility_checks(hp, 4))
    record("exponent shift L=2 n=1", shift_checks(hp, 1, 4))
    record("diagonal shift L=2 n=1", diagonal_shift_checks(hp, 1, 4))
    return results


def timed(fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t
