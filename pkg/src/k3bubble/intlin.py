"""Exact linear algebra over Z and Q.

Matrices are lists of rows.  Nothing here uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[int]]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def bilinear(u: Sequence, gram: Sequence[Sequence], v: Sequence):
    """``u^T gram v`` with whatever scalar types ``u``, ``v`` carry."""
    if len(u) != len(gram) or len(v) != len(gram):
        raise ValueError(
            f"dimension mismatch: {len(u)} and {len(v)} against rank {len(gram)}"
        )
    total = 0
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = gram[i]
        acc = 0
        for j, vj in enumerate(v):
            g = row[j]
            if g:
                acc = vj * g + acc
        total = ui * acc + total if acc else total
    return total


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        result *= p
        for r in range(c + 1, n):
            f = a[r][c] / p
            if f:
                ar, ac = a[r], a[c]
                for k in range(c, n):
                    ar[k] -= f * ac[k]
    return sign * result


def rank(rows: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in row] for row in rows if any(row)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Saturated Z-basis of ``{x in Z^n : a x = 0}``.

    Column operations by extended gcd bring ``a`` to column echelon form while
    accumulating a unimodular ``U`` with ``a U = E``.  The columns of ``U``
    under zero columns of ``E`` span the kernel, and since ``U`` is unimodular
    that span is primitive.
    """
    rows = [list(map(int, r)) for r in a]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    # Work with columns of A and of U as lists for cheap column swaps.
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    ucols = [[int(i == j) for i in range(n)] for j in range(n)]

    def combine(j, k, p, q, r, s):
        # (col_j, col_k) <- (p col_j + q col_k, r col_j + s col_k)
        cj, ck = cols[j], cols[k]
        cols[j] = [p * x + q * y for x, y in zip(cj, ck)]
        cols[k] = [r * x + s * y for x, y in zip(cj, ck)]
        uj, uk = ucols[j], ucols[k]
        ucols[j] = [p * x + q * y for x, y in zip(uj, uk)]
        ucols[k] = [r * x + s * y for x, y in zip(uj, uk)]

    pivot_col = 0
    for i in range(len(rows)):
        if pivot_col >= n:
            break
        for k in range(pivot_col + 1, n):
            b = cols[k][i]
            if b == 0:
                continue
            a_ = cols[pivot_col][i]
            g, x, y = _xgcd(a_, b)
            # [a b] [[x, -b/g], [y, a/g]] = [g 0], determinant 1
            combine(pivot_col, k, x, y, -b // g, a_ // g)
        if cols[pivot_col][i] != 0:
            pivot_col += 1
    return [ucols[j] for j in range(pivot_col, n)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def signature(gram: Sequence[Sequence]) -> tuple[int, int]:
    """(positive, negative) index of inertia via rational congruence moves."""
    a = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    pos = neg = 0
    for c in range(n):
        if a[c][c] == 0:
            # find a row to fix a zero pivot
            j = next((r for r in range(c + 1, n) if a[r][r] != 0), None)
            if j is not None:
                _swap_sym(a, c, j)
            else:
                j = next((r for r in range(c + 1, n) if a[c][r] != 0), None)
                if j is None:
                    continue
                # e_c <- e_c + e_j gives diagonal 2 a_cj (+ a_jj = 0)
                _add_sym(a, c, j, Fraction(1))
        p = a[c][c]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for r in range(c + 1, n):
            if a[r][c]:
                _add_sym(a, r, c, -a[r][c] / p)
    return pos, neg


def _swap_sym(a, i, j):
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_sym(a, i, j, f):
    # row_i += f row_j, col_i += f col_j
    a[i] = [x + f * y for x, y in zip(a[i], a[j])]
    for row in a:
        row[i] += f * row[j]
