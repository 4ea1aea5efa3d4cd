"""Exact dense linear algebra over Q.

Matrices are plain lists of rows holding ``int`` or ``Fraction`` entries.
Rank and determinant use fraction-free (Bareiss) elimination on an integer
rescaling of the rows; kernels come from a reduced row echelon form.  A
modular rank is available as a one-sided certificate: rank mod p never
exceeds the rational rank, so a full modular rank settles the question.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

PRIME = (1 << 61) - 1

Matrix = List[List]


def shape(M: Sequence[Sequence]) -> Tuple[int, int]:
    rows = len(M)
    return rows, (len(M[0]) if rows else 0)


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def _integer_rows(M: Sequence[Sequence]) -> Tuple[List[List[int]], Fraction]:
    """Scale each row to integers; return rows and the product of scales."""
    out = []
    scale = Fraction(1)
    for row in M:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in row])
        else:
            out.append([int(x * den) for x in row])
            scale *= den
    return out, scale


def _bareiss(rows: List[List[int]], ncols: int, want_det: bool = False):
    """In-place fraction-free elimination; returns (rank, sign)."""
    nrows = len(rows)
    prev = 1
    r = 0
    sign = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            if want_det:
                return 0, 0
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        pr = rows[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            if f:
                for j in range(c + 1, ncols):
                    ri[j] = (p * ri[j] - f * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    ri[j] = (p * ri[j]) // prev
            ri[c] = 0
        prev = p
        r += 1
    return r, sign


def rank_mod_p(M: Sequence[Sequence], p: int = PRIME) -> int | None:
    """Rank over GF(p), or None when some denominator vanishes mod p."""
    rows = []
    for row in M:
        out = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    return None
                out.append(x.numerator * pow(x.denominator, -1, p) % p)
            else:
                out.append(int(x) % p)
        rows.append(out)
    nrows, ncols = shape(rows)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [v * inv % p for v in rows[r]]
        rows[r] = pr
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f:
                ri = rows[i]
                for j in range(c, ncols):
                    ri[j] = (ri[j] - f * pr[j]) % p
        r += 1
        if r == nrows:
            break
    return r


def matrix_rank(M: Sequence[Sequence]) -> int:
    nrows, ncols = shape(M)
    if not nrows or not ncols:
        return 0
    full = min(nrows, ncols)
    fast = rank_mod_p(M)
    if fast == full:
        return full
    rows, _ = _integer_rows(M)
    r, _ = _bareiss(rows, ncols)
    return r


def det(M: Sequence[Sequence]) -> Fraction:
    n, m = shape(M)
    if n != m:
        raise ValueError("det requires a square matrix")
    if n == 0:
        return Fraction(1)
    rows, scale = _integer_rows(M)
    r, sign = _bareiss(rows, n, want_det=True)
    if r < n:
        return Fraction(0)
    return Fraction(sign * rows[n - 1][n - 1]) / scale


def rref(M: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    A = [[x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in M]
    nrows, ncols = shape(A)
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        inv = 1 / pr[c]
        if inv != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] *= inv
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(nrows):
            if i != r:
                f = A[i][c]
                if f:
                    ri = A[i]
                    for j in nz:
                        ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return A, pivots


def kernel_basis(M: Sequence[Sequence], ncols: int | None = None) -> List[List[Fraction]]:
    """Basis of the right null space ``{v : M v = 0}``."""
    if ncols is None:
        ncols = shape(M)[1]
    if not M:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(M)
    pset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def left_kernel_basis(M: Sequence[Sequence], nrows: int | None = None) -> List[List[Fraction]]:
    """Basis of ``{y : y^T M = 0}``."""
    if nrows is None:
        nrows = len(M)
    if not M or not M[0]:
        return [[Fraction(int(i == j)) for i in range(nrows)] for j in range(nrows)]
    return kernel_basis(transpose(M), nrows)


def normalize_vector(v: Sequence) -> Tuple[int, ...]:
    """Projective normal form: integers, gcd 1, first nonzero entry positive."""
    from math import gcd

    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)
