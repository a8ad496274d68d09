"""Hermite-Pade approximation of type I.

For series ``f_0 .. f_{L-1}`` and an order ``n``, row ``i`` is the vector

    (Q_0, .., Q_i, w Q_{i+1}, .., w Q_{L-1})

with ``deg Q_j <= n - 1 + [i == j]`` whose pairing with ``f`` vanishes to
order ``w^{nL}``.  Normalization makes ``Q_i`` monic of degree ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonGenericError, UsageError
from .exact import Poly, TruncatedSeries, dot_series, inverse, is_unit, is_zero
from .linalg import det, nullvector
from .toeplitz import MomentTable, hconcat, rect_toeplitz, standard_delta


@dataclass(frozen=True)
class TypeIProblem:
    f: tuple
    n: int

    def __init__(self, f, n: int):
        f = tuple(f)
        if len(f) < 2:
            raise UsageError("need at least two series")
        if n < 1:
            raise UsageError("approximation order n must be >= 1")
        orders = {s.order for s in f}
        if len(orders) != 1:
            raise UsageError("all series must share one truncation order")
        L = len(f)
        if f[0].order < n * L:
            raise UsageError(f"series order {f[0].order} too small for nL = {n * L}")
        if not is_unit(f[0][0]):
            raise UsageError("f_0 must have an invertible constant term")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "n", n)

    @property
    def L(self):
        return len(self.f)

    @property
    def order(self):
        return self.f[0].order

    @property
    def table(self):
        return MomentTable(self.f)


@dataclass
class TypeIRow:
    i: int
    Q: list  # Q_0 .. Q_{L-1} as Poly
    remainder: TruncatedSeries

    @property
    def vector(self):
        """The row ``(Q_0, .., Q_i, w Q_{i+1}, ..)``."""
        return [q if j <= self.i else q.shift(1) for j, q in enumerate(self.Q)]


def block_sizes(L: int, n: int, i: int):
    return [n + 1 if j == i else n for j in range(L)]


def system_matrix(p: TypeIProblem, i: int):
    """The ``nL x (nL+1)`` coefficient matrix of the approximation condition."""
    return _system(p, i, p.n * p.L)


def _system(p, i, rows):
    L, n, tab = p.L, p.n, p.table
    if not 0 <= i < L:
        raise UsageError(f"row index {i} out of range 0..{L - 1}")
    blocks = []
    for j, size in enumerate(block_sizes(L, n, i)):
        top = 0 if j <= i else -1
        blocks.append(rect_toeplitz(tab, j, top, rows, size))
    return hconcat(blocks, rows)


def _split(vec, sizes):
    out, pos = [], 0
    for s in sizes:
        out.append(vec[pos:pos + s])
        pos += s
    return out


def _remainder(p, i, Q):
    vec = [q if j <= i else q.shift(1) for j, q in enumerate(Q)]
    return dot_series(vec, p.f)


def solve_type_i(p: TypeIProblem, i: int) -> TypeIRow:
    """Row ``i`` from the kernel of the linear system, monic on the diagonal."""
    vec = nullvector(system_matrix(p, i))
    blocks = _split(vec, block_sizes(p.L, p.n, i))
    lead = blocks[i][p.n]
    if is_zero(lead) or not is_unit(lead):
        raise NonGenericError(f"diagonal polynomial of row {i} has degree < n")
    scale = inverse(lead)
    Q = [Poly(c * scale for c in b) for b in blocks]
    rho = _remainder(p, i, Q)
    if not rho.is_big_o(p.n * p.L):
        raise NonGenericError(f"row {i} does not reach contact order {p.n * p.L}")
    return TypeIRow(i, Q, rho)


def solve_all_type_i(p: TypeIProblem):
    return [solve_type_i(p, i) for i in range(p.L)]


# ---------------------------------------------------------------------------
# determinantal representations


def _bordered_det(top, body):
    """Determinant of ``top`` stacked over ``body``, expanding along ``top``."""
    size = len(top)
    total = Poly()
    for c, t in enumerate(top):
        if is_zero(t):
            continue
        minor = [[row[k] for k in range(size) if k != c] for row in body]
        d = det(minor)
        term = t * d if isinstance(t, Poly) else Poly([t * d])
        total = total - term if c % 2 else total + term
    return total


def _block_offset(L, n, i, j):
    return sum(block_sizes(L, n, i)[:j])


def normalizer_q(p: TypeIProblem, i: int):
    """``NQ^(i)``: bordered determinant with a unit vector at the top degree of block ``i``."""
    body = system_matrix(p, i)
    size = len(body[0])
    top = [0] * size
    top[_block_offset(p.L, p.n, i, i) + p.n] = 1
    return _bordered_det(top, body)[0]


def normalizer_q_closed(p: TypeIProblem, i: int):
    """Same constant as an nL x nL block determinant with sign ``(-1)^{n(i+1)}``."""
    L, n, tab = p.L, p.n, p.table
    rows = n * L
    blocks = [rect_toeplitz(tab, j, 0 if j <= i else -1, rows, n) for j in range(L)]
    d = det(hconcat(blocks, rows))
    return -d if (n * (i + 1)) % 2 else d


def det_rep_q(p: TypeIProblem, i: int, j: int) -> Poly:
    """``Q^(i)_j`` as a bordered determinant divided by ``NQ^(i)``."""
    L, n = p.L, p.n
    if not 0 <= j < L:
        raise UsageError(f"column index {j} out of range")
    body = system_matrix(p, i)
    size = len(body[0])
    top = [0] * size
    off = _block_offset(L, n, i, j)
    for k in range(block_sizes(L, n, i)[j]):
        top[off + k] = Poly.monomial(k)
    num = _bordered_det(top, body)
    nq = normalizer_q(p, i)
    if is_zero(nq):
        raise NonGenericError(f"normalizer NQ^({i}) vanishes")
    return num * inverse(nq)


def remainder_leading(p: TypeIProblem, i: int):
    """Coefficient of ``w^{nL}`` in the remainder via an (nL+1)-square determinant."""
    nq = normalizer_q(p, i)
    if is_zero(nq):
        raise NonGenericError(f"normalizer NQ^({i}) vanishes")
    d = det(_system(p, i, p.n * p.L + 1))
    if (p.n * p.L) % 2:
        d = -d
    return d * inverse(nq)


def diag_constant_term(p: TypeIProblem, i: int):
    """``Q^(i)_i(0)`` as a ratio of determinants, for ``1 <= i <= L-1``."""
    L, n, tab = p.L, p.n, p.table
    if not 1 <= i < L:
        raise UsageError(f"diagonal constant term needs 1 <= i <= {L - 1}")
    nq = normalizer_q(p, i)
    if is_zero(nq):
        raise NonGenericError(f"normalizer NQ^({i}) vanishes")
    rows = n * L
    blocks = [rect_toeplitz(tab, j, 0 if j < i else -1, rows, n) for j in range(L)]
    d = det(hconcat(blocks, rows))
    if (n * i) % 2:
        d = -d
    return d * inverse(nq)


def _require_gauge(p):
    if p.f[0].coeffs[0] != 1 or any(not is_zero(c) for c in p.f[0].coeffs[1:]):
        raise UsageError("block-Toeplitz shortcuts need f_0 = 1")


def diag_constant_term_delta(p: TypeIProblem, i: int):
    """``(-1)^n Delta^(i) / Delta^(i+1)`` (requires ``f_0 = 1``)."""
    _require_gauge(p)
    if not 1 <= i < p.L:
        raise UsageError(f"diagonal constant term needs 1 <= i <= {p.L - 1}")
    num = standard_delta(p.table, i, p.n)
    den = standard_delta(p.table, i + 1, p.n)
    if is_zero(den):
        raise NonGenericError(f"Delta^({i + 1}) vanishes")
    r = num * inverse(den)
    return -r if p.n % 2 else r


def remainder_leading_delta(p: TypeIProblem):
    """``(-1)^m Delta^(L) / Delta^(1)`` for row 0 (requires ``f_0 = 1``)."""
    _require_gauge(p)
    m = p.n * (p.L - 1)
    num = standard_delta(p.table, p.L, p.n)
    den = standard_delta(p.table, 1, p.n)
    if is_zero(den):
        raise NonGenericError("Delta^(1) vanishes")
    r = num * inverse(den)
    return -r if m % 2 else r


def normalizer_q_delta(p: TypeIProblem, i: int):
    """``(-1)^{n(i+1)} Delta^(i+1)`` (requires ``f_0 = 1``)."""
    _require_gauge(p)
    d = standard_delta(p.table, i + 1, p.n)
    return -d if (p.n * (i + 1)) % 2 else d
