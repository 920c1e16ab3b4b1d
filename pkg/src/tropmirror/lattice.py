"""Exact integer linear algebra over Z.

Matrices are plain sequences of rows of Python ints; results are returned as
tuples of tuples so they can be hashed and compared.  Nothing here touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("matrix rows have unequal length")
    return m


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    g = vector_gcd(v)
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence[Fraction]) -> tuple[IntVector, int]:
    """Return (k*v, k) with k the least positive integer making k*v integral."""
    k = 1
    for x in v:
        k = k * Fraction(x).denominator // gcd(k, Fraction(x).denominator)
    return tuple(int(Fraction(x) * k) for x in v), k


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by Gaussian elimination over Fractions."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    r = 0
    ncols = len(a[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def pivot_columns(rows: Sequence[Sequence]) -> list[int]:
    """Columns carrying pivots in a row echelon form of a rational matrix."""
    a = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    if not a:
        return pivots
    r = 0
    for c in range(len(a[0])):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return pivots


def solve_rational(m: Sequence[Sequence], rhs: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Some rational solution of m x = rhs, or None."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(m, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if any(a[i][ncols] != 0 for i in range(r, nrows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = a[i][ncols]
    return tuple(x)


# ---------------------------------------------------------------------------
# Hermite-style column echelon form


def column_echelon(m: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Unimodular column reduction.

    Returns ``(h, v, pivots)`` with ``m @ v == h``; the first ``len(pivots)``
    columns of ``h`` are in echelon form (column ``j`` has its leading nonzero
    entry, which is positive, in row ``pivots[j]``, strictly increasing) and
    the remaining columns are zero.  Entries to the left of each pivot are
    reduced modulo that pivot to keep coefficients small.
    """
    nrows = len(m)
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    h = [list(row) for row in m]
    v = identity(n)

    def col_op(i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # (col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j)
        for mat in (h, v):
            for row in mat:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + d * y

    pivots: list[int] = []
    k = 0
    for r in range(nrows):
        if k == n:
            break
        for j in range(k + 1, n):
            if h[r][j] == 0:
                continue
            x, y = h[r][k], h[r][j]
            g, s, t = xgcd(x, y)
            col_op(k, j, s, t, -y // g, x // g)
        if h[r][k] == 0:
            continue
        if h[r][k] < 0:
            col_op(k, k, -1, 0, -1, 0)
        p = h[r][k]
        for j in range(k):
            q = h[r][j] // p
            if q:
                col_op(j, k, 1, -q, 0, 1)
        pivots.append(r)
        k += 1
    return (
        tuple(tuple(row) for row in h),
        tuple(tuple(row) for row in v),
        pivots,
    )


def kernel_basis(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[IntVector, ...]:
    """Basis of the integer kernel {x : m x = 0}, as a tuple of column vectors.

    The basis is saturated: any integer vector in the kernel is an integer
    combination of the returned vectors.
    """
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    _, v, pivots = column_echelon(m, n)
    r = len(pivots)
    return tuple(tuple(v[i][j] for i in range(n)) for j in range(r, n))


def solve_integer(m: Sequence[Sequence[int]], rhs: Sequence[int], ncols: Optional[int] = None) -> Optional[IntVector]:
    """Some integer x with m x = rhs, or None if no integer solution exists."""
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    h, v, pivots = column_echelon(m, n)
    y = [0] * n
    for j, r in enumerate(pivots):
        acc = rhs[r] - sum(h[r][k] * y[k] for k in range(j))
        q, rem = divmod(acc, h[r][j])
        if rem:
            return None
        y[j] = q
    if any(sum(h[i][k] * y[k] for k in range(n)) != rhs[i] for i in range(len(m))):
        return None
    return tuple(sum(v[i][k] * y[k] for k in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ original @ right == diagonal`` with unimodular transforms."""

    left: IntMatrix
    right: IntMatrix
    diagonal: IntMatrix
    elementary_divisors: IntVector

    @property
    def rank(self) -> int:
        return len(self.elementary_divisors)


def smith_normal_form(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithDecomposition:
    nrows = len(m)
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    d = [list(row) for row in m]
    u = identity(nrows)
    v = identity(n)

    def row_comb(i: int, j: int, a: int, b: int, c: int, e: int) -> None:
        for mat in (d, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [a * x + b * y for x, y in zip(ri, rj)]
            mat[j] = [c * x + e * y for x, y in zip(ri, rj)]

    def col_comb(i: int, j: int, a: int, b: int, c: int, e: int) -> None:
        for mat in (d, v):
            for row in mat:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + e * y

    def swap_rows(i: int, j: int) -> None:
        for mat in (d, u):
            mat[i], mat[j] = mat[j], mat[i]

    def swap_cols(i: int, j: int) -> None:
        for mat in (d, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(nrows, n):
        # bring the smallest nonzero entry of the remaining block to (t, t)
        best = None
        for i in range(t, nrows):
            for j in range(t, n):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, nrows):
                if d[i][t] and d[i][t] % d[t][t] == 0:
                    row_comb(t, i, 1, 0, -(d[i][t] // d[t][t]), 1)
                elif d[i][t]:
                    g, s, c = xgcd(d[t][t], d[i][t])
                    a, b = d[t][t] // g, d[i][t] // g
                    row_comb(t, i, s, c, -b, a)
                    done = False
            for j in range(t + 1, n):
                if d[t][j] and d[t][j] % d[t][t] == 0:
                    col_comb(t, j, 1, 0, -(d[t][j] // d[t][t]), 1)
                elif d[t][j]:
                    g, s, c = xgcd(d[t][t], d[t][j])
                    a, b = d[t][t] // g, d[t][j] // g
                    col_comb(t, j, s, c, -b, a)
                    done = False
            if not done:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(
                ((i, j) for i in range(t + 1, nrows) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            row_comb(t, bad[0], 1, 1, 0, 1)
        if d[t][t] < 0:
            for mat in (d, u):
                mat[t] = [-x for x in mat[t]]
        t += 1

    divisors = tuple(d[i][i] for i in range(min(nrows, n)) if d[i][i] != 0)
    return SmithDecomposition(
        left=tuple(tuple(r) for r in u),
        right=tuple(tuple(r) for r in v),
        diagonal=tuple(tuple(r) for r in d),
        elementary_divisors=divisors,
    )
