"""Command-line front end.

Exit codes: 0 success, 2 parse or usage error, 3 non-generic input,
4 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .checks import quick_suite, random_series, worked_example
from .duality import build_R, build_Rinv, det_R, verify_duality
from .errors import InvariantViolation, NonGenericError, ParseError, SingularInputError, UsageError
from .fuchsian import (
    FuchsianSystem,
    Transform,
    eigenvalue_shift_check,
    hypergeometric_system,
    multiplier_for,
    schlesinger_transform,
    transform_certificate,
)
from .hypergeo import (
    HGParams,
    build_order,
    hamilton_residual,
    hgi_build,
    hgsol_build,
    vandermonde_oracle,
)
from .exact import Poly, parse_rational
from .serialize import decode_matrix, decode_poly, decode_scalar, decode_series, encode, truncate_jets
from .type1 import TypeIProblem, solve_type_i
from .type2 import solve_type_ii
from .vcf import convergent, contact_order_ok, expand

EXIT_OK, EXIT_PARSE, EXIT_NONGENERIC, EXIT_INVARIANT = 0, 2, 3, 4


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _series_input(args, need_L=True):
    """Series from ``--input``, else the worked example (L = 2) or a seeded random vector."""
    K = args.order
    if args.input:
        data = _load_json(args.input)
        raw = data.get("f") if isinstance(data, dict) else data
        if not isinstance(raw, list) or len(raw) < 2:
            raise ParseError(f"{args.input}: expected {{\"f\": [series, ...]}} with at least two series")
        f = [decode_series(s, K, f"f[{k}]") for k, s in enumerate(raw)]
        if args.L is not None and args.L != len(f):
            raise UsageError(f"--L {args.L} does not match {len(f)} input series")
        return f
    L = args.L if args.L is not None else 2
    if L == 2 and args.seed is None:
        return worked_example(K)
    return random_series(random.Random(args.seed or 0), L, K)


def _check_order(args, L):
    if args.order < args.n * L + args.n:
        raise UsageError(f"--order must be at least nL + n = {args.n * L + args.n}")


def cmd_type1(args):
    f = _series_input(args)
    _check_order(args, len(f))
    p = TypeIProblem(f, args.n)
    rows = range(p.L) if args.row is None else [args.row]
    out = []
    for i in rows:
        r = solve_type_i(p, i)
        out.append({"row": i, "Q": encode(r.Q), "vector": encode(r.vector), "remainder": encode(r.remainder)})
    return {"L": p.L, "n": p.n, "rows": out}


def cmd_type2(args):
    f = _series_input(args)
    _check_order(args, len(f))
    p = TypeIProblem(f, args.n)
    cols = range(p.L) if args.col is None else [args.col]
    out = []
    for j in cols:
        c = solve_type_ii(p, j)
        out.append({"col": j, "P": encode(c.P), "vector": encode(c.vector)})
    return {"L": p.L, "n": p.n, "cols": out}


def cmd_duality(args):
    from .type1 import solve_all_type_i
    from .type2 import solve_all_type_ii

    f = _series_input(args)
    _check_order(args, len(f))
    p = TypeIProblem(f, args.n)
    rows, cols = solve_all_type_i(p), solve_all_type_ii(p)
    D = verify_duality(rows, cols, p.n)
    R, Rinv = build_R(rows, p.n), build_Rinv(cols, p.n)
    d = det_R(R)
    if d != Poly([1]):
        raise InvariantViolation(f"det R = {d}")
    return {"L": p.L, "n": p.n, "R": encode(R), "Rinv": encode(Rinv), "D": encode(D), "detR": "1"}


def cmd_vcf(args):
    f = _series_input(args)
    k = args.steps
    if k < 1:
        raise UsageError("--steps must be >= 1")
    exp = expand(f, k)
    conv = convergent(f, k)
    return {
        "L": len(f),
        "steps": k,
        "wT": [encode(M) for M in exp.matrices],
        "a": [encode(a) for a in exp.constants],
        "convergent": {"numerators": encode(conv.numerators), "denominator": encode(conv.denominator)},
        "contact_ok": contact_order_ok(f, k),
    }


def _params(args) -> HGParams:
    if not args.params:
        raise UsageError("--params is required")
    data = _load_json(args.params)
    if not isinstance(data, dict):
        raise ParseError(f"{args.params}: expected an object with alpha, beta, gamma")
    try:
        vals = {k: [parse_rational(v) for v in data[k]] for k in ("alpha", "beta", "gamma")}
    except KeyError as exc:
        raise ParseError(f"{args.params}: missing key {exc}") from None
    except TypeError:
        raise ParseError(f"{args.params}: alpha, beta, gamma must be arrays") from None
    p = HGParams(vals["alpha"], vals["beta"], vals["gamma"], build_order(args.jet_order))
    if args.L is not None and args.L != p.L:
        raise UsageError(f"--L {args.L} does not match {p.L - 1} alpha parameters")
    if args.N is not None and args.N != p.N:
        raise UsageError(f"--N {args.N} does not match {p.N} beta parameters")
    return p


def _system_from_json(path, M) -> FuchsianSystem:
    """Residue entries are jets known through order ``M``."""
    data = _load_json(path)
    try:
        L, N = int(data["L"]), int(data["N"])
        res = [decode_matrix(A, lambda v, w: decode_scalar(v, N, w, M), f"residues[{i}]")
               for i, A in enumerate(data["residues"])]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{path}: bad system description ({exc})") from None
    if len(res) != N + 2:
        raise ParseError(f"{path}: need N + 2 = {N + 2} residues A_0 .. A_(N+1)")
    extras = {}
    if "c" in data:
        extras["c"] = [[decode_scalar(v, N, "c", M) for v in row] for row in data["c"]]
    return FuchsianSystem(L, N, res, None, extras)


def _multiplier_from_json(path, N, M):
    data = _load_json(path)
    try:
        R = decode_matrix(data["R"], lambda v, w: decode_poly(v, N, w, M), "R")
        Rinv = decode_matrix(data["Rinv"], lambda v, w: decode_poly(v, N, w, M), "Rinv")
    except KeyError as exc:
        raise ParseError(f"{path}: missing key {exc}") from None
    return R, Rinv, int(data.get("n", 0))


def cmd_fuchs(args):
    M = args.jet_order
    if args.system:
        sys_ = _system_from_json(args.system, M)
        if not args.R:
            raise UsageError("--R is required with --system")
        R, Rinv, n = _multiplier_from_json(args.R, sys_.N, M)
        tr = schlesinger_transform(sys_, R, Rinv, n)
        ok = transform_certificate(sys_, tr, M - 1)
        if not ok:
            raise InvariantViolation("transformed coefficient has extra poles or a polynomial part")
        return {"residues": encode(truncate_jets(tr.system.residues, M)), "certificate": ok}
    p = _params(args)
    n = args.n
    q = p.with_order(p.order + n * p.L)
    sys_ = hypergeometric_system(q)
    R, Rinv = multiplier_for(q, n)
    tr: Transform = schlesinger_transform(sys_, R, Rinv, n)
    cert = transform_certificate(sys_, tr, M - 1)
    shift = eigenvalue_shift_check(sys_, tr.system, n)
    if not (cert and shift):
        raise InvariantViolation("Schlesinger transform certificate failed")
    return {
        "L": p.L, "N": p.N, "n": n, "jet_order": M,
        "R": encode(truncate_jets(R, M)),
        "Rinv": encode(truncate_jets(Rinv, M)),
        "residues": encode(truncate_jets(tr.system.residues, M)),
        "certificate": cert,
        "eigenvalue_shift": shift,
    }


def _exponent_json(ex):
    return {"e": encode(list(ex.e)), "kappa": encode(list(ex.kappa)), "theta": encode(list(ex.theta))}


def cmd_hln_solve(args):
    p = _params(args)
    M = args.jet_order
    if args.n == 0:
        sol = hgsol_build(p)
    else:
        sol = hgi_build(p.with_order(p.order + args.n * p.L), args.n)
    rep = hamilton_residual(sol, M - 1)
    return {
        "L": p.L, "N": p.N, "n": args.n, "jet_order": M,
        "exponents": _exponent_json(sol.exponents),
        "q": encode(truncate_jets(sol.q, M)),
        "p": encode(truncate_jets(sol.p, M)),
        "residual_max_order_checked": M - 1,
        "residuals_zero": rep.zero,
    }


def _parse_nvec(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"--nvec: expected comma-separated integers, got {text!r}") from None


def cmd_hln_oracle(args):
    if not args.measures or args.nvec is None or args.k is None:
        raise UsageError("--measures, --k and --nvec are required")
    data = _load_json(args.measures)
    raw = data.get("measures") if isinstance(data, dict) else data
    if not isinstance(raw, list):
        raise ParseError(f"{args.measures}: expected {{\"measures\": [[[s, w], ...], ...]}}")
    measures = []
    for a, mu in enumerate(raw):
        pts = []
        for b, pair in enumerate(mu):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"measures[{a}][{b}]: expected [point, weight]")
            pts.append((decode_scalar(pair[0], where=f"measures[{a}][{b}]"),
                        decode_scalar(pair[1], where=f"measures[{a}][{b}]")))
        measures.append(pts)
    rep = vandermonde_oracle(measures, args.k, _parse_nvec(args.nvec))
    return {
        "delta": encode(rep.delta),
        "symmetrized": encode(rep.symmetrized),
        "unsymmetrized": encode(rep.unsymmetrized),
        "degenerate": rep.degenerate,
        "equal": rep.ok,
    }


def cmd_verify_all(args):
    seed = 0 if args.seed is None else args.seed
    results = quick_suite(seed)
    ok = all(all(v.values()) for v in results.values())
    out = {"seed": seed, "suites": {k: {n: ("pass" if b else "fail") for n, b in v.items()} for k, v in results.items()},
           "ok": ok}
    if not ok:
        _emit(out, args.output)
        raise InvariantViolation("verify-all: some checks failed")
    return out


def build_parser():
    ap = argparse.ArgumentParser(prog="isopade", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--L", type=int)
    common.add_argument("--N", type=int)
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--order", type=int, default=16, metavar="K", help="series truncation order")
    common.add_argument("--jet-order", type=int, default=6, metavar="M", help="jet order in x")
    common.add_argument("--seed", type=int)
    common.add_argument("--input")
    common.add_argument("--output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("type1", parents=[common], help="Hermite-Pade rows")
    p.add_argument("--row", type=int)
    p.set_defaults(func=cmd_type1)
    p = sub.add_parser("type2", parents=[common], help="simultaneous Pade columns")
    p.add_argument("--col", type=int)
    p.set_defaults(func=cmd_type2)
    p = sub.add_parser("duality", parents=[common], help="duality product and R, R^-1")
    p.set_defaults(func=cmd_duality)
    p = sub.add_parser("vcf", parents=[common], help="vector continued fraction")
    p.add_argument("--steps", type=int, default=4)
    p.set_defaults(func=cmd_vcf)

    fu = sub.add_parser("fuchs", help="Fuchsian systems").add_subparsers(dest="action", required=True)
    p = fu.add_parser("transform", parents=[common], help="Schlesinger transform of a system")
    p.add_argument("--params")
    p.add_argument("--system")
    p.add_argument("--R")
    p.set_defaults(func=cmd_fuchs)

    hl = sub.add_parser("hln", help="the Hamiltonian system").add_subparsers(dest="action", required=True)
    p = hl.add_parser("solve", parents=[common], help="hypergeometric (n = 0) or transformed solution")
    p.add_argument("--params")
    p.set_defaults(func=cmd_hln_solve)
    p = hl.add_parser("oracle", parents=[common], help="block-Toeplitz determinant of discrete measures")
    p.add_argument("--measures")
    p.add_argument("--k", type=int)
    p.add_argument("--nvec")
    p.set_defaults(func=cmd_hln_oracle)

    p = sub.add_parser("verify-all", parents=[common], help="run the invariant suite")
    p.set_defaults(func=cmd_verify_all)
    return ap


def _emit(obj, path):
    text = json.dumps(obj, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jet_order", 6) < 2:
        print("error: --jet-order must be at least 2", file=sys.stderr)
        return EXIT_PARSE
    try:
        out = args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NonGenericError, SingularInputError) as exc:
        print(f"non-generic input: {exc}", file=sys.stderr)
        return EXIT_NONGENERIC
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    _emit(out, args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
