"""Exact integer and modular linear algebra.

Matrices are plain lists of rows of Python ints, so there is never any
overflow.  The Smith normal form routine tracks both unimodular transforms
and always pivots on the nonzero entry of smallest absolute value (earliest
in row-major order on ties), which makes every output deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence

IntMatrix = list  # list[list[int]], rectangular


def is_inf(m) -> bool:
    return m is None or m == math.inf


def check_modulus(m):
    """Normalise a ModulusTag: None/inf for the integers, else an int >= 1."""
    if is_inf(m):
        return None
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"invalid modulus {m!r}")
    return m


def gcd_list(values: Sequence[int]) -> int:
    if len(values) == 0:
        raise ValueError("gcd_list needs at least one value")
    return reduce(math.gcd, (abs(int(v)) for v in values))


def nu2(a: int) -> tuple[int, int]:
    """Return ``(2**r, r)`` where ``a = 2**r * q`` with ``q`` odd."""
    if a <= 0:
        raise ValueError(f"nu2 needs a positive integer, got {a}")
    r = (a & -a).bit_length() - 1
    return 1 << r, r


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(M: IntMatrix) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(row) != cols for row in M):
        raise ValueError("ragged matrix")
    return rows, cols


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = list(zip(*B)) if rb else [() for _ in range(cb)]
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def matvec(A: IntMatrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: IntMatrix) -> IntMatrix:
    r, c = shape(A)
    return [[A[i][j] for i in range(r)] for j in range(c)]


def det(A: IntMatrix) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n, c = shape(A)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_unimodular(A: IntMatrix) -> IntMatrix:
    """Inverse of an integer matrix with determinant +-1."""
    n, c = shape(A)
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    snf = smith_normal_form(A)
    if any(snf.D[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not invertible over the integers")
    # U A V = I  =>  A^-1 = V U
    return matmul(snf.V, snf.U)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with ``D`` diagonal and d1 | d2 | ..."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        r, c = len(self.D), len(self.D[0]) if self.D else 0
        return [self.D[i][i] for i in range(min(r, c))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    rows, cols = shape(M) if M else (0, 0)
    A = [list(map(int, row)) for row in M]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for R in A:
                R[i], R[j] = R[j], R[i]
            for R in V:
                R[i], R[j] = R[j], R[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            Ad, As = A[dst], A[src]
            for k in range(cols):
                if As[k]:
                    Ad[k] += q * As[k]
            Ud, Us = U[dst], U[src]
            for k in range(rows):
                if Us[k]:
                    Ud[k] += q * Us[k]

    def add_col(dst, src, q):
        if q:
            for R in A:
                if R[src]:
                    R[dst] += q * R[src]
            for R in V:
                if R[src]:
                    R[dst] += q * R[src]

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            # any leftover in pivot row/column is smaller than the pivot
            cand = None
            for i in range(t + 1, rows):
                a = A[i][t]
                if a and (cand is None or abs(a) < cand[0]):
                    cand = (abs(a), i, t)
            for j in range(t + 1, cols):
                a = A[t][j]
                if a and (cand is None or abs(a) < cand[0]):
                    cand = (abs(a), t, j)
            if cand is not None:
                swap_rows(t, cand[1])
                swap_cols(t, cand[2])
                continue
            p = A[t][t]
            bad = next(
                (i for i in range(t + 1, rows)
                 for j in range(t + 1, cols) if A[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                done = False
            if done:
                break
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return SmithDecomposition(U=U, D=A, V=V)


def solve_mod(M: IntMatrix, rhs: Sequence[int], m: int) -> Optional[list[int]]:
    """Return some ``x`` with ``M x == rhs (mod m)``, or None if there is none.

    Solvability is decided through the Smith form over the integers reduced
    mod m: ``U M V = D`` turns the system into the diagonal congruences
    ``d_i y_i == (U rhs)_i``; then ``x = V y``.
    """
    m = check_modulus(m)
    if m is None:
        raise ValueError("solve_mod needs a finite modulus")
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows and any(len(r) != cols for r in M):
        raise ValueError("ragged matrix")
    if len(rhs) != rows:
        raise ValueError(f"rhs has length {len(rhs)}, expected {rows}")
    if rows == 0:
        return []
    snf = smith_normal_form(M)
    c = [v % m for v in matvec(snf.U, rhs)]
    y = [0] * cols
    for i in range(rows):
        d = snf.D[i][i] if i < cols else 0
        g = math.gcd(d, m)
        if c[i] % g:
            return None
        if d % m == 0:
            continue
        # (d/g) y == c/g  (mod m/g), d/g invertible mod m/g
        mg = m // g
        y[i] = (c[i] // g) * pow(d // g, -1, mg) % mg if mg > 1 else 0
    return [v % m for v in matvec(snf.V, y)]
