"""Dense exact linear algebra over Q, jets, and polynomials.

Matrices are plain lists of rows.  Elimination only ever divides by units
of the coefficient ring, so the same code runs over ``Fraction`` and over
:class:`~isopade.jets.ParamJet`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .errors import NonGenericError, SingularInputError, UsageError
from .exact import Poly, inverse, is_scalar, is_unit, is_zero


def shape(m):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for r in m:
        if len(r) != cols:
            raise UsageError("ragged matrix")
    return rows, cols


def identity(n, one=1, zero=0):
    return [[one if r == c else zero for c in range(n)] for r in range(n)]


def zeros(rows, cols, zero=0):
    return [[zero for _ in range(cols)] for _ in range(rows)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def _dot(row, col):
    acc = None
    for a, b in zip(row, col):
        if is_zero(a) or is_zero(b):
            continue
        t = a * b
        acc = t if acc is None else acc + t
    return 0 if acc is None else acc


def matmul(a, b):
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise UsageError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def matadd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matsub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a, c):
    return [[x * c for x in row] for row in a]


def matmap(a, fn):
    return [[fn(x) for x in row] for row in a]


def mat_is_zero(a):
    return all(is_zero(x) for row in a for x in row)


def _try_inverse(a):
    """Inverse of a unit, or None if the ring cannot invert it exactly."""
    if not is_unit(a):
        return None
    try:
        return inverse(a)
    except (UsageError, SingularInputError):
        return None


# ---------------------------------------------------------------------------
# determinants


def det(m):
    """Exact determinant by unit-pivot elimination.

    In a column without an invertible entry the determinant is expanded
    along that column instead, so non-field rings are handled exactly.
    """
    rows, cols = shape(m)
    if rows != cols:
        raise UsageError(f"determinant of a non-square {rows}x{cols} matrix")
    if rows == 0:
        return 1
    return _det([list(r) for r in m])


def _det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    # pick the column with an invertible entry, preferring the first
    for c in range(n):
        for r in range(n):
            inv = _try_inverse(a[r][c])
            if inv is not None:
                return _eliminate(a, r, c, inv)
    return _expand(a, 0)


def _eliminate(a, r, c, inv):
    n = len(a)
    pivot = a[r][c]
    sign = -1 if (r + c) % 2 else 1
    minor = []
    prow = a[r]
    for rr in range(n):
        if rr == r:
            continue
        row = a[rr]
        factor = row[c]
        if is_zero(factor):
            minor.append([row[k] for k in range(n) if k != c])
            continue
        factor = factor * inv
        minor.append([row[k] - factor * prow[k] for k in range(n) if k != c])
    sub = _det(minor)
    out = pivot * sub
    return -out if sign < 0 else out


def _expand(a, c):
    n = len(a)
    total = None
    for r in range(n):
        x = a[r][c]
        if is_zero(x):
            continue
        minor = [[row[k] for k in range(n) if k != c] for i, row in enumerate(a) if i != r]
        term = x * _det(minor)
        if (r + c) % 2:
            term = -term
        total = term if total is None else total + term
    return 0 if total is None else total


def det_permutation(m):
    """Leibniz-formula determinant; an O(n!) oracle for small matrices."""
    rows, cols = shape(m)
    if rows != cols:
        raise UsageError("determinant of a non-square matrix")
    total = 0
    for perm in permutations(range(rows)):
        inversions = sum(1 for i in range(rows) for j in range(i + 1, rows) if perm[i] > perm[j])
        term = 1
        for r, c in enumerate(perm):
            term = term * m[r][c]
        total = total - term if inversions % 2 else total + term
    return total


def det_cofactor(m):
    """Laplace expansion along the first row (no divisions at all)."""
    rows, cols = shape(m)
    if rows != cols:
        raise UsageError("determinant of a non-square matrix")
    if rows == 0:
        return 1
    if rows == 1:
        return m[0][0]
    total = 0
    for c in range(rows):
        x = m[0][c]
        if is_zero(x):
            continue
        minor = [[row[k] for k in range(rows) if k != c] for row in m[1:]]
        term = x * det_cofactor(minor)
        total = total - term if c % 2 else total + term
    return total


# ---------------------------------------------------------------------------
# kernels


def nullvector(a):
    """Generator of the one-dimensional kernel of an r x (r+1) matrix.

    Uses full pivoting on units.  A rank below r means the kernel is not a
    line and the instance is rejected as non-generic.
    """
    rows, cols = shape(a)
    if cols != rows + 1:
        raise UsageError(f"expected an r x (r+1) system, got {rows}x{cols}")
    m = [list(r) for r in a]
    col_order = list(range(cols))
    for step in range(rows):
        found = None
        for r in range(step, rows):
            for c in range(step, cols):
                inv = _try_inverse(m[r][col_order[c]])
                if inv is not None:
                    found = (r, c, inv)
                    break
            if found:
                break
        if found is None:
            raise NonGenericError(f"linear system has rank {step} < {rows}")
        r, c, inv = found
        m[step], m[r] = m[r], m[step]
        col_order[step], col_order[c] = col_order[c], col_order[step]
        prow = [x * inv for x in m[step]]
        m[step] = prow
        pc = col_order[step]
        for rr in range(rows):
            if rr == step:
                continue
            factor = m[rr][pc]
            if is_zero(factor):
                continue
            m[rr] = [x - factor * y for x, y in zip(m[rr], prow)]
    free = col_order[rows]
    vec = [0] * cols
    vec[free] = 1
    for step in range(rows):
        vec[col_order[step]] = -m[step][free]
    return vec


def solve(a, b):
    """Solve ``a x = b`` for square ``a`` using unit pivots."""
    rows, cols = shape(a)
    if rows != cols:
        raise UsageError("solve needs a square matrix")
    aug = [list(r) + [b[i]] for i, r in enumerate(a)]
    vec = nullvector(aug)
    # kernel of [a | b] is proportional to (x, -1)
    scale = vec[-1]
    inv = _try_inverse(scale)
    if inv is None:
        raise NonGenericError("singular linear system")
    return [-(v * inv) for v in vec[:-1]]


def inverse_matrix(a):
    n, _ = shape(a)
    cols = []
    for c in range(n):
        e = [1 if r == c else 0 for r in range(n)]
        cols.append(solve(a, e))
    return transpose(cols)


# ---------------------------------------------------------------------------
# polynomial matrices


def poly_matrix(m):
    return [[x if isinstance(x, Poly) else Poly([x]) for x in row] for row in m]


def poly_matrix_eval(m, z):
    return [[p(z) for p in row] for row in m]


def poly_matrix_deriv(m):
    return [[p.deriv() for p in row] for row in m]


def poly_matrix_degree(m):
    return max(p.degree for row in m for p in row)


def poly_matrix_coefficient(m, k):
    return [[p[k] for p in row] for row in m]


def poly_det(m):
    """Determinant of a polynomial matrix by division-free expansion."""
    return det_cofactor(poly_matrix(m))


def adjugate(m):
    n, _ = shape(m)
    out = zeros(n, n)
    for r in range(n):
        for c in range(n):
            minor = [[row[k] for k in range(n) if k != c] for i, row in enumerate(m) if i != r]
            cof = det_cofactor(minor) if minor else 1
            out[c][r] = -cof if (r + c) % 2 else cof
    return out


def is_upper_triangular(m):
    return all(is_zero(m[r][c]) for r in range(len(m)) for c in range(r))


def is_lower_triangular(m):
    return all(is_zero(m[r][c]) for r in range(len(m)) for c in range(r + 1, len(m)))


def charpoly(m):
    """Characteristic polynomial ``det(t I - m)`` via Faddeev-LeVerrier."""
    n, _ = shape(m)
    if not all(is_scalar(x) for row in m for x in row):
        raise UsageError("characteristic polynomial needs rational entries")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = zeros(n, n)
    c = Fraction(1)
    for k in range(1, n + 1):
        mk = matadd(matmul(m, mk), identity(n, c, 0)) if k > 1 else identity(n, Fraction(1), Fraction(0))
        am = matmul(m, mk)
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return Poly(coeffs)
