"""Truncated multivariate power series in the deformation variables.

A :class:`ParamJet` is an element of ``Q[[x_1..x_N]]`` known up to a
total degree ``order``.  Precision is tracked per value: products use the
valuation rule, partial derivatives and monomial divisions lose orders.
Exactly known polynomials carry ``order = inf``.

A :class:`LocalFraction` is a jet divided by a product of the factors
``x_i`` and ``(x_i - x_j)``; unit factors are inverted into the numerator
on construction, since they are exactly invertible in the jet ring.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import SingularInputError, UsageError
from .exact import format_rational, is_scalar, parse_rational

INF = math.inf


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomials(nvars: int, max_degree: int):
    """Exponent tuples of total degree <= max_degree, graded."""
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


class ParamJet:
    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars: int, order=INF, terms=None):
        self.nvars = nvars
        self.order = order
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0 and sum(e) <= order:
                    clean[e] = Fraction(c)
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, nvars, c, order=INF):
        return cls(nvars, order, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i, order=INF):
        """The coordinate ``x_{i+1}`` (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise UsageError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, order, {tuple(e): 1})

    @classmethod
    def monomial(cls, nvars, exps, c=1, order=INF):
        return cls(nvars, order, {tuple(exps): c})

    def _lift(self, other):
        if isinstance(other, ParamJet):
            if other.nvars != self.nvars:
                raise UsageError("jets over different variable sets")
            return other
        if is_scalar(other):
            return ParamJet.constant(self.nvars, other)
        return None

    # -- structure ----------------------------------------------------------
    def valuation(self):
        if not self.terms:
            return self.order + 1
        return min(sum(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exps) -> Fraction:
        exps = tuple(exps)
        if sum(exps) > self.order:
            raise UsageError(f"coefficient of degree {sum(exps)} unknown at order {self.order}")
        return self.terms.get(exps, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        return self.constant_term() != 0

    def truncate(self, order) -> "ParamJet":
        return ParamJet(self.nvars, min(order, self.order), self.terms)

    def homogeneous_part(self, d: int) -> dict:
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms.get(e, 0) + c
        return ParamJet(self.nvars, order, terms)

    __radd__ = __add__

    def __neg__(self):
        return ParamJet(self.nvars, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if is_scalar(other):
            if other == 0:
                return ParamJet(self.nvars, self.order)
            return ParamJet(self.nvars, self.order, {e: c * other for e, c in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        order = min(self.order + o.valuation(), o.order + self.valuation())
        terms = {}
        right = [(e, c, sum(e)) for e, c in o.terms.items()]
        for ea, ca in self.terms.items():
            da = sum(ea)
            for eb, cb, db in right:
                if da + db > order:
                    continue
                e = _add_exp(ea, eb)
                terms[e] = terms.get(e, 0) + ca * cb
        return ParamJet(self.nvars, order, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ParamJet.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self, order=None) -> "ParamJet":
        c0 = self.constant_term()
        if c0 == 0:
            raise SingularInputError("jet with zero constant term is not invertible")
        target = self.order if order is None else min(order, self.order)
        if target == INF:
            if len(self.terms) == 1:
                return ParamJet.constant(self.nvars, 1 / c0)
            raise UsageError("inverse of a non-constant exact jet needs a finite order")
        # 1/(c0 (1 + t)) = (1/c0) * sum (-t)^k, t without constant term
        t = (self * (1 / c0) - 1).truncate(target)
        acc = ParamJet.constant(self.nvars, 1, target)
        power = ParamJet.constant(self.nvars, 1, target)
        for _ in range(int(target)):
            power = -(power * t)
            if power.is_zero():
                break
            acc = acc + power
        return acc * (1 / c0)

    def __truediv__(self, other):
        if is_scalar(other):
            return self * (1 / Fraction(other))
        if isinstance(other, ParamJet):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if is_scalar(other):
            return self.inverse() * other
        return NotImplemented

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        keys = set(self.terms) | set(o.terms)
        for e in keys:
            if sum(e) <= order and self.terms.get(e, 0) != o.terms.get(e, 0):
                return False
        return True

    def __hash__(self):
        raise TypeError("ParamJet is not hashable")

    # -- calculus -------------------------------------------------------------
    def partial(self, i: int) -> "ParamJet":
        """Exact partial derivative in variable ``i`` (0-based); order drops by one."""
        if not 0 <= i < self.nvars:
            raise UsageError(f"variable index {i} out of range")
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return ParamJet(self.nvars, self.order - 1, terms)

    def divide_monomial(self, exps) -> "ParamJet":
        """Exact division by ``x^exps``; raises if some term is not divisible."""
        exps = tuple(exps)
        shift = sum(exps)
        terms = {}
        for e, c in self.terms.items():
            f = tuple(a - b for a, b in zip(e, exps))
            if min(f) < 0:
                raise SingularInputError(f"jet not divisible by monomial {exps}")
            terms[f] = c
        return ParamJet(self.nvars, self.order - shift, terms)

    def monomial_content(self):
        """Largest monomial dividing every stored term."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[v] for e in self.terms) for v in range(self.nvars))

    def divide_difference(self, i: int, j: int) -> "ParamJet":
        """Exact division by ``x_i - x_j`` (0-based), component by component."""
        rem = dict(self.terms)
        quo = {}
        while rem:
            # lex-leading term with x_i power first
            e = max(rem, key=lambda t: (sum(t), t[i], t))
            c = rem.pop(e)
            if c == 0:
                continue
            if e[i] == 0:
                raise SingularInputError(f"jet not divisible by x{i + 1} - x{j + 1}")
            q = list(e)
            q[i] -= 1
            q = tuple(q)
            quo[q] = quo.get(q, 0) + c
            f = list(q)
            f[j] += 1
            f = tuple(f)
            rem[f] = rem.get(f, 0) + c
            if rem[f] == 0:
                del rem[f]
        return ParamJet(self.nvars, self.order - 1, quo)

    def evaluate(self, point) -> Fraction:
        """Evaluate the stored polynomial at a rational point."""
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        keys = sorted(self.terms, key=lambda e: (sum(e), e))
        return {"(" + ",".join(map(str, e)) + ")": format_rational(self.terms[e]) for e in keys}

    @classmethod
    def from_json(cls, data: dict, nvars: int, order=INF) -> "ParamJet":
        terms = {}
        for key, value in data.items():
            inner = key.strip()
            if not (inner.startswith("(") and inner.endswith(")")):
                raise UsageError(f"bad exponent key {key!r}")
            exps = tuple(int(t) for t in inner[1:-1].split(",") if t.strip())
            if len(exps) != nvars:
                raise UsageError(f"exponent key {key!r} has wrong arity")
            terms[exps] = parse_rational(value)
        return cls(nvars, order, terms)

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            parts = []
            for e in sorted(self.terms, key=lambda t: (sum(t), t)):
                mono = "*".join(f"x{v + 1}^{k}" if k > 1 else f"x{v + 1}" for v, k in enumerate(e) if k)
                c = format_rational(self.terms[e])
                parts.append(c if not mono else f"{c}*{mono}")
            body = " + ".join(parts)
        return f"ParamJet({body}; O({self.order + 1}))" if self.order != INF else f"ParamJet({body})"


def jet_partial(f: ParamJet, i: int) -> ParamJet:
    return f.partial(i)


def hirota_d(i: int, f, g):
    """First-order Hirota derivative ``(d_i f) g - f (d_i g)``."""
    return partial(f, i) * g - f * partial(g, i)


def partial(a, i: int):
    """Partial derivative in variable ``i`` for scalars, jets or local fractions."""
    if is_scalar(a):
        return Fraction(0)
    return a.partial(i)


# ---------------------------------------------------------------------------
# localization at x_i and x_i - x_j


def _factor_poly(key, nvars):
    if key[0] == "x":
        return ParamJet.variable(nvars, key[1])
    _, i, j = key
    return ParamJet.variable(nvars, i) - ParamJet.variable(nvars, j)


def _factor_partial(key, v, nvars):
    if key[0] == "x":
        return Fraction(1 if key[1] == v else 0)
    _, i, j = key
    return Fraction((1 if i == v else 0) - (1 if j == v else 0))


class LocalFraction:
    """``numerator / prod(factor ** mult)`` with factors ``x_i`` or ``x_i - x_j``."""

    __slots__ = ("numerator", "den")

    def __init__(self, numerator, den=None, units=()):
        if not isinstance(numerator, ParamJet):
            raise UsageError("LocalFraction numerator must be a ParamJet")
        num = numerator
        for u in units:
            if not isinstance(u, ParamJet) or not u.is_unit():
                raise SingularInputError("unit factor must have a nonzero constant term")
            num = num * u.inverse(order=num.order)
        self.numerator = num
        d = Counter()
        for key, k in (den or {}).items():
            key = self._canon(key)
            if key[0] == "d" and key[1] > key[2]:
                # x_j - x_i = -(x_i - x_j)
                key = ("d", key[2], key[1])
                if k % 2:
                    self.numerator = -self.numerator
            if k:
                d[key] += k
        self.den = Counter({k: v for k, v in d.items() if v})

    @staticmethod
    def _canon(key):
        if key[0] == "x" and len(key) == 2:
            return ("x", int(key[1]))
        if key[0] == "d" and len(key) == 3 and key[1] != key[2]:
            return ("d", int(key[1]), int(key[2]))
        raise UsageError(f"bad denominator factor {key!r}")

    @property
    def nvars(self):
        return self.numerator.nvars

    @classmethod
    def lift(cls, a, nvars):
        if isinstance(a, LocalFraction):
            return a
        if isinstance(a, ParamJet):
            return cls(a)
        if is_scalar(a):
            return cls(ParamJet.constant(nvars, a))
        raise TypeError(f"cannot lift {type(a).__name__} to LocalFraction")

    @classmethod
    def reciprocal_variable(cls, nvars, i):
        """``1/x_{i+1}``: the pole location ``u_i`` in terms of ``x_i``."""
        return cls(ParamJet.constant(nvars, 1), {("x", i): 1})

    def _den_poly(self, counter) -> ParamJet:
        out = ParamJet.constant(self.nvars, 1)
        for key, k in counter.items():
            out = out * (_factor_poly(key, self.nvars) ** k)
        return out

    def _over(self, common: Counter) -> ParamJet:
        """Numerator rewritten over the larger denominator ``common``."""
        extra = common - self.den
        if not extra:
            return self.numerator
        return self.numerator * self._den_poly(extra)

    def __add__(self, other):
        try:
            o = LocalFraction.lift(other, self.nvars)
        except TypeError:
            return NotImplemented
        common = self.den | o.den
        return LocalFraction(self._over(common) + o._over(common), common)

    __radd__ = __add__

    def __neg__(self):
        return LocalFraction(-self.numerator, self.den)

    def __sub__(self, other):
        try:
            o = LocalFraction.lift(other, self.nvars)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = LocalFraction.lift(other, self.nvars)
        except TypeError:
            return NotImplemented
        return LocalFraction(self.numerator * o.numerator, self.den + o.den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = LocalFraction.lift(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "LocalFraction":
        """Invert when the numerator is a monomial times a unit."""
        content = self.numerator.monomial_content()
        core = self.numerator.divide_monomial(content)
        if not core.is_unit():
            raise SingularInputError("numerator is not a monomial times a unit")
        num = self._den_poly(self.den) * core.inverse()
        den = Counter({("x", v): k for v, k in enumerate(content) if k})
        return LocalFraction(num, den)

    def __truediv__(self, other):
        try:
            o = LocalFraction.lift(other, self.nvars)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return LocalFraction.lift(other, self.nvars) * self.inverse()

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_unit(self) -> bool:
        core = self.numerator.divide_monomial(self.numerator.monomial_content())
        return core.is_unit()

    def __eq__(self, other):
        try:
            o = LocalFraction.lift(other, self.nvars)
        except TypeError:
            return NotImplemented
        common = self.den | o.den
        return self._over(common) == o._over(common)

    def __hash__(self):
        raise TypeError("LocalFraction is not hashable")

    def partial(self, v: int) -> "LocalFraction":
        """Quotient rule with the squarefree part of the denominator."""
        if not self.den:
            return LocalFraction(self.numerator.partial(v))
        keys = list(self.den)
        polys = [_factor_poly(k, self.nvars) for k in keys]
        squarefree = ParamJet.constant(self.nvars, 1)
        for p in polys:
            squarefree = squarefree * p
        num = self.numerator.partial(v) * squarefree
        for idx, key in enumerate(keys):
            d = _factor_partial(key, v, self.nvars)
            if d == 0:
                continue
            others = ParamJet.constant(self.nvars, 1)
            for jdx, p in enumerate(polys):
                if jdx != idx:
                    others = others * p
            num = num - self.numerator * others * (self.den[key] * d)
        den = self.den + Counter({k: 1 for k in keys})
        return LocalFraction(num, den)

    def reduce(self) -> "LocalFraction":
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.numerator
        den = Counter(self.den)
        for key in list(den):
            while den[key]:
                try:
                    if key[0] == "x":
                        e = [0] * self.nvars
                        e[key[1]] = 1
                        cand = num.divide_monomial(e)
                    else:
                        cand = num.divide_difference(key[1], key[2])
                except SingularInputError:
                    break
                num = cand
                den[key] -= 1
        return LocalFraction(num, den)

    def to_jet(self) -> ParamJet:
        r = self.reduce()
        if r.den:
            raise SingularInputError(f"not regular at the origin: denominator {dict(r.den)}")
        return r.numerator

    def constant_term(self) -> Fraction:
        return self.to_jet().constant_term()

    def __repr__(self):
        if not self.den:
            return f"LocalFraction({self.numerator!r})"
        den = "*".join(
            (f"x{k[1] + 1}" if k[0] == "x" else f"(x{k[1] + 1}-x{k[2] + 1})") + (f"^{m}" if m > 1 else "")
            for k, m in sorted(self.den.items())
        )
        return f"LocalFraction({self.numerator!r} / {den})"


def as_jet(a, nvars=None):
    """Coerce scalars/local fractions to a ParamJet when regular."""
    if isinstance(a, ParamJet):
        return a
    if isinstance(a, LocalFraction):
        return a.to_jet()
    if is_scalar(a):
        if nvars is None:
            raise UsageError("need nvars to lift a scalar")
        return ParamJet.constant(nvars, a)
    raise TypeError(type(a).__name__)
