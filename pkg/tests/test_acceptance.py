"""Acceptance criteria 1-11, exact equality throughout."""

import random
import time

import pytest

from isopade.checks import (
    compatibility_checks,
    contiguity_checks,
    determinantal_checks,
    duality_checks,
    generic_problem,
    hgi_checks,
    hgsol_checks,
    oracle_check,
    random_hg_params,
    random_series,
    retry_generic,
    shift_checks,
    vcf_checks,
)

M = 6
COMBOS = [(L, n) for L in (2, 3, 4) for n in (1, 2, 3)]


def _failed(results):
    """Names of failing checks across a list of ``(label, checks)``."""
    return [f"{label}:{name}" for label, checks in results for name, ok in checks.items() if not ok]


@pytest.fixture(scope="module")
def duality_runs():
    rng = random.Random(20240101)
    start = time.perf_counter()
    runs = []
    for idx in range(50):
        L, n = COMBOS[idx % len(COMBOS)]
        runs.append((f"L={L},n={n},#{idx}", duality_checks(generic_problem(rng, L, n))))
    return runs, time.perf_counter() - start


def test_c01_mahler_duality(duality_runs, acceptance_log):
    runs, elapsed = duality_runs
    bad = _failed([(lab, {"duality_identity": c["duality_identity"]}) for lab, c in runs])
    ok = not bad and len(runs) == 50 and elapsed < 60
    acceptance_log(1, "type I x type II = w^{nL} I", ok, f"50 instances, {elapsed:.1f}s")
    assert not bad, bad
    assert elapsed < 60


def test_c02_det_and_inverse(duality_runs, acceptance_log):
    runs, _ = duality_runs
    keys = ("det_R_one", "R_Rinv_identity", "adjugate_matches")
    bad = _failed([(lab, {k: c[k] for k in keys}) for lab, c in runs])
    acceptance_log(2, "det R = 1 and R Rinv = I", not bad, "50 instances")
    assert not bad, bad


def test_c03_degree_facts(duality_runs, acceptance_log):
    runs, _ = duality_runs
    keys = ("deg_Q_diag", "deg_P_diag", "Q00_zero_constant")
    bad = _failed([(lab, {k: c[k] for k in keys}) for lab, c in runs])
    acceptance_log(3, "deg Q_i^(i) = n, deg P_j^(j) = n(L-1), Q_0^(0)(0) = 0", not bad, "50 instances")
    assert not bad, bad


def test_c04_determinantal_representations(acceptance_log):
    rng = random.Random(4)
    runs = []
    for idx in range(25):
        L = 2 + idx % 2
        n = 1 + (idx // 2) % 2
        checks = determinantal_checks(generic_problem(rng, L, n, f0_one=True))
        assert "NP_delta" in checks  # the f_0 = 1 formulas were exercised
        runs.append((f"L={L},n={n},#{idx}", checks))
    bad = _failed(runs)
    acceptance_log(4, "determinant formulas match nullspace solutions", not bad, "25 instances, f0 = 1")
    assert not bad, bad


def test_c05_vector_continued_fraction(acceptance_log):
    rng = random.Random(5)
    runs = []
    for idx in range(20):
        L = 2 + idx % 2
        runs.append((f"L={L},#{idx}", vcf_checks(random_series(rng, L, 16), 6)))
    bad = _failed(runs)
    acceptance_log(5, "iota^L = id, det T, contact order <= 6, step product", not bad, "20 instances")
    assert not bad, bad


def test_c06_contiguity(acceptance_log):
    rng = random.Random(6)
    start = time.perf_counter()
    runs = []
    for L in (2, 3):
        for N in (1, 2):
            runs.append((f"L={L},N={N}", contiguity_checks(random_hg_params(rng, L, N, M), 6)))
    elapsed = time.perf_counter() - start
    bad = _failed(runs)
    acceptance_log(6, "contiguity relations on normalized moments", not bad and elapsed < 120,
                   f"depth 6, M = {M}, {elapsed:.1f}s")
    assert not bad, bad
    assert elapsed < 120


def test_c07_vandermonde_oracle(acceptance_log):
    rng = random.Random(7)
    runs = [(f"#{idx}", oracle_check(rng, 2 + idx % 2, 5)) for idx in range(20)]
    bad = _failed(runs)
    acceptance_log(7, "block Toeplitz determinant = symmetrized measure sums", not bad, "20 instances")
    assert not bad, bad


def test_c08_hypergeometric_solution(acceptance_log):
    rng = random.Random(8)
    start = time.perf_counter()
    runs = []
    for L in (2, 3):
        p = random_hg_params(rng, L, 1, M)
        runs.append((f"L={L},N=1", hgsol_checks(p, M)))
    elapsed = time.perf_counter() - start
    bad = _failed(runs)
    acceptance_log(8, "Hamilton residuals of the hypergeometric solution vanish", not bad and elapsed < 300,
                   f"through order {M - 1}, {elapsed:.1f}s")
    assert not bad, bad
    assert elapsed < 300


def test_c09_transformed_solution(acceptance_log):
    rng = random.Random(9)
    runs = []
    for L in (2, 3):
        checks = retry_generic(lambda r, L=L: hgi_checks(random_hg_params(r, L, 1, M), 1, M), rng)
        runs.append((f"L={L},N=1,n=1", checks))
    bad = _failed(runs)
    acceptance_log(9, "transformed solution: pq forms agree, residuals vanish, c-hat matches", not bad,
                   f"through order {M - 1}")
    assert not bad, bad


def test_c10_compatibility(acceptance_log):
    rng = random.Random(10)
    checks = retry_generic(lambda r: compatibility_checks(random_hg_params(r, 2, 1, M), M), rng)
    bad = _failed([("L=2,N=1", checks)])
    acceptance_log(10, "deformation compatibility residual vanishes", not bad, f"through order {M - 1}")
    assert not bad, bad


def test_c11_exponent_shift(acceptance_log):
    rng = random.Random(11)
    runs = []
    for L in (2, 3):
        checks = retry_generic(lambda r, L=L: shift_checks(random_hg_params(r, L, 1, M), 1, M), rng)
        runs.append((f"L={L},n=1", checks))
    bad = _failed(runs)
    acceptance_log(11, "exponents at infinity shift by (n(L-1), -n, .., -n)", not bad, "L = 2, 3")
    assert not bad, bad
