"""JSON encodings: rationals as ``"p/q"``, series as ascending coefficient
arrays, jets as ``"(i1,..,iN)" -> coefficient`` maps, matrices as row arrays.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .exact import Poly, TruncatedSeries, format_rational, parse_rational
from .jets import INF, LocalFraction, ParamJet


def encode(x):
    """Encode a scalar, jet, local fraction, polynomial or series."""
    if isinstance(x, bool):
        raise TypeError("booleans are not ring elements")
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, ParamJet):
        return x.to_json()
    if isinstance(x, LocalFraction):
        r = x.reduce()
        if not r.den:
            return r.numerator.to_json()
        den = [
            {"factor": f"x{k[1] + 1}" if k[0] == "x" else f"x{k[1] + 1}-x{k[2] + 1}", "power": m}
            for k, m in sorted(r.den.items())
        ]
        return {"numerator": r.numerator.to_json(), "denominator": den}
    if isinstance(x, Poly):
        return [encode(c) for c in x.coeffs] or ["0"]
    if isinstance(x, TruncatedSeries):
        return [encode(c) for c in x.coeffs] + ["0"] * (x.order + 1 - len(x.coeffs))
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    raise TypeError(f"cannot encode {type(x).__name__}")


def truncate_jets(x, order):
    """Drop jet terms above ``order`` for display; structure is preserved."""
    if isinstance(x, ParamJet):
        return x.truncate(order)
    if isinstance(x, LocalFraction):
        r = x.reduce()
        return r.numerator.truncate(order) if not r.den else r
    if isinstance(x, Poly):
        return x.map(lambda c: truncate_jets(c, order))
    if isinstance(x, (list, tuple)):
        return [truncate_jets(v, order) for v in x]
    return x


def decode_scalar(data, nvars=None, where="value", order=INF):
    """A rational string, or a jet map known through ``order`` when ``nvars`` is given."""
    if isinstance(data, dict):
        if nvars is None:
            raise ParseError(f"{where}: jet given where a rational was expected")
        try:
            return ParamJet.from_json(data, nvars, order)
        except Exception as exc:
            raise ParseError(f"{where}: {exc}") from None
    try:
        return parse_rational(data)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def decode_series(data, order=None, where="series") -> TruncatedSeries:
    if not isinstance(data, list) or not data:
        raise ParseError(f"{where}: expected a nonempty array of coefficients")
    coeffs = [decode_scalar(c, where=f"{where}[{k}]") for k, c in enumerate(data)]
    if order is None:
        order = len(coeffs) - 1
    if len(coeffs) < order + 1:
        raise ParseError(f"{where}: {len(coeffs)} coefficients, need {order + 1} for order {order}")
    return TruncatedSeries(coeffs[: order + 1], order)


def decode_poly(data, nvars=None, where="polynomial", order=INF) -> Poly:
    if not isinstance(data, list):
        raise ParseError(f"{where}: expected an array of coefficients")
    return Poly(decode_scalar(c, nvars, f"{where}[{k}]", order) for k, c in enumerate(data))


def decode_matrix(data, fn, where="matrix"):
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError(f"{where}: expected an array of rows")
    width = {len(r) for r in data}
    if len(width) > 1:
        raise ParseError(f"{where}: ragged rows")
    return [[fn(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(data)]
