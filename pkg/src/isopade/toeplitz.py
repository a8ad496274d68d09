"""Rectangular Toeplitz windows and block-Toeplitz determinants.

``A^i_j(k, l)`` is the k x l matrix whose (r, c) entry (1-based) is
``a^i_{j + r - c}``, with ``a^i_s = 0`` for ``s < 0``.
"""

from __future__ import annotations

from .errors import UsageError
from .exact import TruncatedSeries
from .linalg import det


class MomentTable:
    """Sequences ``a^0 .. a^{L-1}`` with implicit zeros at negative index."""

    def __init__(self, sequences):
        seqs = [list(s.coeffs) if isinstance(s, TruncatedSeries) else list(s) for s in sequences]
        if len(seqs) < 1:
            raise UsageError("moment table needs at least one sequence")
        self.seqs = seqs

    @property
    def L(self):
        return len(self.seqs)

    def depth(self, i):
        return len(self.seqs[i]) - 1

    def __call__(self, i, j):
        if not 0 <= i < self.L:
            raise UsageError(f"sequence index {i} out of range 0..{self.L - 1}")
        if j < 0:
            return 0
        seq = self.seqs[i]
        if j >= len(seq):
            raise UsageError(f"moment a^{i}_{j} beyond stored depth {len(seq) - 1}")
        return seq[j]


def rect_toeplitz(table: MomentTable, i: int, j: int, k: int, l: int):
    """The k x l window ``A^i_j(k, l)`` as a list of rows."""
    if not 0 <= i < table.L:
        raise UsageError(f"sequence index {i} out of range 0..{table.L - 1}")
    if k < 0 or l < 0:
        raise UsageError("window dimensions must be nonnegative")
    return [[table(i, j + r - c) for c in range(l)] for r in range(k)]


def hconcat(blocks, rows):
    out = [[] for _ in range(rows)]
    for b in blocks:
        for r in range(rows):
            out[r].extend(b[r])
    return out


def exact_det(m):
    return det(m)


def block_toeplitz_matrix(table: MomentTable, k: int, nvec):
    """Matrix whose determinant is ``Delta^(k)(n)``; blocks with n_a = 0 vanish."""
    L = table.L
    if len(nvec) != L:
        raise UsageError(f"index vector has length {len(nvec)}, expected {L}")
    if not 0 <= k <= L:
        raise UsageError(f"k = {k} out of range 0..{L}")
    if any(x < 0 for x in nvec):
        raise UsageError("index vector entries must be nonnegative")
    size = sum(nvec)
    blocks = []
    for a, na in enumerate(nvec):
        if na == 0:
            continue
        top = na if a < k else na - 1
        blocks.append(rect_toeplitz(table, a, top, size, na))
    return hconcat(blocks, size)


def block_toeplitz_delta(table: MomentTable, k: int, nvec):
    if sum(nvec) == 0:
        block_toeplitz_matrix(table, k, nvec)  # argument validation
        return 1
    return det(block_toeplitz_matrix(table, k, nvec))


def block_toeplitz_delta_transposed(table: MomentTable, k: int, nvec):
    """Second form: stack the windows ``A^a_{|n|-1}(n_a, |n|)`` (or ``|n|`` for a < k)
    vertically, with the sign ``(-1)^{sum_{a<b} n_a n_b}``."""
    L = table.L
    if len(nvec) != L or not 0 <= k <= L:
        raise UsageError("bad arguments")
    size = sum(nvec)
    if size == 0:
        return 1
    rows = []
    for a, na in enumerate(nvec):
        if na == 0:
            continue
        top = size if a < k else size - 1
        rows.extend(rect_toeplitz(table, a, top, na, size))
    sign = sum(nvec[a] * nvec[b] for a in range(L) for b in range(a + 1, L)) % 2
    d = det(rows)
    return -d if sign else d


def standard_index(L: int, n: int):
    """The index vector ``(0, n, ..., n)``."""
    return [0] + [n] * (L - 1)


def standard_delta(table: MomentTable, k: int, n: int):
    """``Delta^(k)`` for the standard index vector, assembled from sequences 1..L-1 only.

    Determinant of ``[A^1_n(m,n) .. A^{k-1}_n(m,n), A^k_{n-1}(m,n) .. A^{L-1}_{n-1}(m,n)]``
    with ``m = n(L-1)``; independent of the zeroth sequence.
    """
    L = table.L
    if not 1 <= k <= L:
        raise UsageError(f"k = {k} out of range 1..{L}")
    m = n * (L - 1)
    if m == 0:
        return 1
    blocks = []
    for a in range(1, L):
        top = n if a < k else n - 1
        blocks.append(rect_toeplitz(table, a, top, m, n))
    return det(hconcat(blocks, m))
