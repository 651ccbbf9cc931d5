"""Integer matrices, Hermite normal form, and exact linear solving.

Matrices are lists of int rows.  Everything here is exact; the only
non-integer type is `fractions.Fraction`, used when a caller explicitly asks
whether a system is solvable over the rationals.

The Hermite normal form used throughout is the row-style canonical one: the
result is in row echelon form with positive pivots, entries above each pivot
reduced into [0, pivot), and zero rows at the bottom.  Canonicity makes it a
complete invariant of the row lattice, which is what the lattice-equality
checks rely on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]
Vector = List[int]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def copy(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in a]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def negate(a: Sequence[Sequence[int]]) -> Matrix:
    return [[-x for x in row] for row in a]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    assert not a or not b or len(a[0]) == len(b), "inner dimensions differ"
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vec_mat(v: Sequence[int], a: Sequence[Sequence[int]]) -> Vector:
    """Row vector times matrix."""
    assert len(v) == len(a), "inner dimensions differ"
    return [sum(x * row[j] for x, row in zip(v, a)) for j in range(len(a[0]))] if a else []


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def exgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_normal_form(a: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix]:
    """Canonical row HNF of a, with its unimodular certificate.

    Returns (h, u) where u * a = h, u is unimodular, and h is the canonical
    form described in the module docstring.
    """
    h = copy(a)
    m = len(h)
    n = len(h[0]) if h else 0
    u = identity(m)
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if h[i][c]), None)
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m):
            if not h[i][c]:
                continue
            g, s, t = exgcd(h[r][c], h[i][c])
            pr, pi = h[r][c] // g, h[i][c] // g
            # the 2x2 block [[s, t], [-pi, pr]] has determinant +1
            h[r], h[i] = (
                [s * x + t * y for x, y in zip(h[r], h[i])],
                [-pi * x + pr * y for x, y in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [s * x + t * y for x, y in zip(u[r], u[i])],
                [-pi * x + pr * y for x, y in zip(u[r], u[i])],
            )
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def rank(a: Sequence[Sequence[int]]) -> int:
    h, _ = hermite_normal_form(a)
    return sum(1 for row in h if any(row))


def left_kernel_basis(a: Sequence[Sequence[int]]) -> Matrix:
    """Basis of the left integer kernel {z : z * a = 0}.

    The basis rows generate the full kernel lattice, not just a finite-index
    sublattice, because they are rows of a unimodular matrix.
    """
    h, u = hermite_normal_form(a)
    return [u[i] for i in range(len(h)) if not any(h[i])]


def solve_left(a: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Vector]:
    """An integer solution z of z * a = b, or None if none exists."""
    z = _solve_left(a, b, Fraction)
    if z is None or any(x.denominator != 1 for x in z):
        return None
    out = [int(x) for x in z]
    assert not a or vec_mat(out, a) == list(b)
    return out


def solve_left_rational(
    a: Sequence[Sequence[int]], b: Sequence[int]
) -> Optional[List[Fraction]]:
    """A rational solution z of z * a = b, or None; used for diagnostics."""
    return _solve_left(a, b, Fraction)


def _solve_left(a, b, field) -> Optional[List[Fraction]]:
    if not a:
        return None if any(b) else []
    h, u = hermite_normal_form(a)
    m = len(h)
    n = len(h[0]) if h else 0
    assert len(b) == n, "right-hand side has wrong length"
    # pivots of h, in row order
    pivots = []
    for i in range(m):
        c = next((j for j in range(n) if h[i][j]), None)
        if c is not None:
            pivots.append((i, c))
    y = [field(0)] * m
    residual = [field(x) for x in b]
    for i, c in pivots:
        y[i] = residual[c] / h[i][c]
        for j in range(n):
            residual[j] -= y[i] * h[i][j]
    if any(residual):
        return None
    return [sum((y[i] * u[i][j] for i in range(m)), field(0)) for j in range(m)]


def lattice_equal(
    a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]
) -> bool:
    """Whether two row families generate the same integer lattice."""
    ha, _ = hermite_normal_form(a)
    hb, _ = hermite_normal_form(b)
    nza = [row for row in ha if any(row)]
    nzb = [row for row in hb if any(row)]
    return nza == nzb


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, by fraction-free elimination."""
    n = len(a)
    assert all(len(row) == n for row in a), "matrix is not square"
    if n == 0:
        return 1
    m = copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: Sequence[Sequence[int]]) -> bool:
    return len(a) > 0 and all(len(row) == len(a) for row in a) and det(a) in (1, -1)
