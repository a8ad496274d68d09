"""Exact scalars, univariate polynomials and truncated power series.

Everything here is generic over the coefficient ring.  A coefficient is
either a python number (``int`` / ``Fraction``) or an object providing
``is_zero()``, ``is_unit()`` and ``inverse()`` (see :mod:`isopade.jets`).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError, SingularInputError, UsageError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text) -> Fraction:
    """Read ``"p/q"``, ``"p"`` or an int into a reduced Fraction."""
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"rationals must be strings, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# ring protocol helpers


def is_scalar(a) -> bool:
    return isinstance(a, (int, Fraction))


def is_zero(a) -> bool:
    if is_scalar(a):
        return a == 0
    return a.is_zero()


def is_unit(a) -> bool:
    if is_scalar(a):
        return a != 0
    return a.is_unit()


def inverse(a):
    if is_scalar(a):
        if a == 0:
            raise SingularInputError("division by zero")
        return 1 / Fraction(a)
    return a.inverse()


def ring_sum(items, start=0):
    total = start
    for item in items:
        total = total + item
    return total


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial with exact coefficients.

    Trailing zero coefficients are stripped, so ``degree`` of the zero
    polynomial is -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    def __rmul__(self, other):
        return Poly(other * c for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        diff = self - other
        return diff.is_zero()

    def __hash__(self):
        raise TypeError("Poly is not hashable")

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def shift(self, k: int) -> "Poly":
        """Multiply by the k-th power of the variable."""
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else Poly()

    def reversed(self, d: int) -> "Poly":
        """Return ``t**d * p(1/t)``; requires ``degree <= d``."""
        if self.degree > d:
            raise UsageError(f"degree {self.degree} exceeds reversal bound {d}")
        cs = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return Poly(reversed(cs))

    def map(self, fn) -> "Poly":
        return Poly(fn(c) for c in self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        return "Poly(%s)" % ", ".join(map(str, self.coeffs))


# ---------------------------------------------------------------------------
# truncated power series


class TruncatedSeries:
    """Power series ``c_0 + c_1 w + ... + c_K w^K`` known modulo ``w^(K+1)``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable, order: int | None = None, var: str = "w"):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise UsageError("series order must be >= 0")
        cs = cs[: order + 1] + [0] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def from_poly(cls, p: Poly, order: int, var: str = "w") -> "TruncatedSeries":
        return cls(p.coeffs, order, var)

    @classmethod
    def geometric(cls, ratio, order: int, var: str = "w") -> "TruncatedSeries":
        """``1/(1 - ratio*w)`` truncated."""
        cs, acc = [], Fraction(1)
        for _ in range(order + 1):
            cs.append(acc)
            acc = acc * ratio
        return cls(cs, order, var)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other: "TruncatedSeries"):
        if other.var != self.var:
            raise UsageError(f"variable mismatch: {self.var} vs {other.var}")
        if other.order != self.order:
            raise UsageError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries((a + b for a, b in zip(self.coeffs, other.coeffs)), self.order, self.var)
        cs = list(self.coeffs)
        cs[0] = cs[0] + other
        return TruncatedSeries(cs, self.order, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries((-c for c in self.coeffs), self.order, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, Poly):
            return series_mul(self, TruncatedSeries.from_poly(other, self.order, self.var))
        return TruncatedSeries((c * other for c in self.coeffs), self.order, self.var)

    def __rmul__(self, other):
        if isinstance(other, Poly):
            return self * other
        return TruncatedSeries((other * c for c in self.coeffs), self.order, self.var)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, series_reciprocal(other))
        return self * inverse(other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.var != self.var or other.order != self.order:
            return False
        return all(is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        raise TypeError("TruncatedSeries is not hashable")

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coeffs)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; ``order + 1`` if none."""
        for k, c in enumerate(self.coeffs):
            if not is_zero(c):
                return k
        return self.order + 1

    def is_big_o(self, r: int) -> bool:
        """Decide ``self = O(w^r)`` by literal zero tests on stored coefficients."""
        if r > self.order + 1:
            raise UsageError(f"cannot certify O(w^{r}) at truncation order {self.order}")
        return all(is_zero(c) for c in self.coeffs[:r])

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``w**k`` (truncating)."""
        return TruncatedSeries([0] * k + list(self.coeffs), self.order, self.var)

    def section(self, a: int, b: int) -> "TruncatedSeries":
        return series_section(self, a, b)

    def to_poly(self, degree: int | None = None) -> Poly:
        if degree is None:
            degree = self.order
        return Poly(self.coeffs[: degree + 1])

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise UsageError("cannot raise the truncation order")
        return TruncatedSeries(self.coeffs, order, self.var)

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries((fn(c) for c in self.coeffs), self.order, self.var)

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order}, var={self.var!r})"


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    f._check(g)
    K = f.order
    out = [0] * (K + 1)
    for i, a in enumerate(f.coeffs):
        if is_zero(a):
            continue
        for j in range(K + 1 - i):
            b = g.coeffs[j]
            if is_zero(b):
                continue
            out[i + j] = out[i + j] + a * b
    return TruncatedSeries(out, K, f.var)


def series_reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    c0 = f.coeffs[0]
    if not is_unit(c0):
        raise SingularInputError("series has a non-invertible constant term")
    inv0 = inverse(c0)
    out = [inv0]
    for k in range(1, f.order + 1):
        acc = 0
        for j in range(1, k + 1):
            if not is_zero(f.coeffs[j]):
                acc = acc + f.coeffs[j] * out[k - j]
        out.append(-(inv0 * acc))
    return TruncatedSeries(out, f.order, f.var)


def series_section(f: TruncatedSeries, a: int, b: int) -> TruncatedSeries:
    """Keep the coefficients of ``w^a .. w^b``, zero the rest."""
    if a > b:
        raise UsageError(f"empty section [{a}, {b}]")
    if a < 0 or b > f.order:
        raise UsageError(f"section [{a}, {b}] outside 0..{f.order}")
    cs = [c if a <= k <= b else 0 for k, c in enumerate(f.coeffs)]
    return TruncatedSeries(cs, f.order, f.var)


def poly_section(p: TruncatedSeries | Poly, a: int, b: int) -> Poly:
    """Section as a polynomial; an empty range (a > b) gives zero."""
    if b < a:
        return Poly()
    return Poly([0] * a + [p[k] for k in range(a, b + 1)])


def series_from_poly_product(p: Poly, f: TruncatedSeries) -> TruncatedSeries:
    return series_mul(TruncatedSeries.from_poly(p, f.order, f.var), f)


def dot_series(polys: Sequence[Poly], fs: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """``sum_k polys[k] * fs[k]`` as a truncated series."""
    total = TruncatedSeries([0], fs[0].order, fs[0].var)
    for p, f in zip(polys, fs):
        total = total + series_from_poly_product(p, f)
    return total
