"""Exact integer and rational linear algebra.

Matrices are plain row-major lists of lists of Python ints; rational data
uses :class:`fractions.Fraction`. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import InputError

Matrix = list[list[int]]


class SnfResult(NamedTuple):
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: Matrix
    S: Matrix
    V: Matrix


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    if any(len(row) != inner for row in A):
        raise InputError("matmul: inner dimensions differ")
    return [[sum(row[k] * B[k][j] for k in range(inner)) for j in range(cols)] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def _shape(A: Sequence[Sequence[int]], cols: Optional[int]) -> tuple[int, int]:
    rows = len(A)
    if rows:
        width = len(A[0])
        if any(len(r) != width for r in A):
            raise InputError("ragged matrix")
        if cols is not None and cols != width:
            raise InputError("column count does not match entries")
        return rows, width
    return 0, cols or 0


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(A: Sequence[Sequence[int]], cols: Optional[int] = None) -> SnfResult:
    """Smith normal form by repeated pivot-and-reduce.

    >>> smith_normal_form([[2, 0], [0, 3]]).S
    [[1, 0], [0, 6]]
    """
    m, n = _shape(A, cols)
    S = [list(map(int, r)) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (S, U):
            rs, rd = M[src], M[dst]
            for k in range(len(rd)):
                rd[k] += q * rs[k]

    def add_col(dst, src, q):
        for M in (S, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(S[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
        if all(S[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
    return SnfResult(U, S, V)


def invariant_diagonal(A: Sequence[Sequence[int]], cols: Optional[int] = None) -> list[int]:
    """Diagonal of the Smith form, zeros included, length ``min(rows, cols)``."""
    S = smith_normal_form(A, cols).S
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def _normalize_sign(v: list[int]) -> list[int]:
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


def solve_integer_linear(A: Sequence[Sequence[int]], b: Sequence[int],
                         cols: Optional[int] = None):
    """Solve ``A x = b`` over the integers.

    Returns ``(x, kernel_basis)`` or ``None`` when no integer solution exists.
    ``cols`` must be given when ``A`` has no rows.
    """
    m, n = _shape(A, cols)
    if len(b) != m:
        raise InputError(f"right-hand side has length {len(b)}, expected {m}")
    U, S, V = smith_normal_form(A, n)
    c = matvec(U, b)
    r = 0
    while r < min(m, n) and S[r][r] != 0:
        r += 1
    y = [0] * n
    for i in range(r):
        if c[i] % S[i][i]:
            return None
        y[i] = c[i] // S[i][i]
    if any(c[i] for i in range(r, m)):
        return None
    x = matvec(V, y) if n else []
    kernel = [_normalize_sign([V[i][j] for i in range(n)]) for j in range(r, n)]
    return x, kernel


def hermite_normal_form(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and entries above a pivot are
    reduced into ``[0, pivot)``.
    """
    m, n = _shape(rows, cols)
    H = [list(map(int, r)) for r in rows]
    out: Matrix = []
    for col in range(n):
        live = [r for r in H if r[col] != 0]
        if not live:
            continue
        rest = [r for r in H if r[col] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                else:
                    rest.append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        H = [r for r in rest if any(r)]
    for i, row in enumerate(out):
        col = next(j for j, v in enumerate(row) if v)
        for k in range(i):
            q = out[k][col] // row[col]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], row)]
    return out


def integer_rank(A: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals."""
    M = [[Fraction(v) for v in r] for r in A]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(rank + 1, len(M)):
            if M[i][c]:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


# -- exact simplex -----------------------------------------------------------

class _Infeasible(Exception):
    pass


def _pivot(T, basis, r, c):
    pr = T[r]
    pv = pr[c]
    T[r] = pr = [v / pv for v in pr]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, pr)]
    basis[r] = c


def _bland(T, basis, obj_row, allowed):
    """Run Bland's rule on tableau ``T`` (last column = rhs) to optimality.

    ``T[obj_row]`` holds reduced costs for a maximisation problem written as
    ``z - c x = 0``; a negative entry means the column may enter.
    """
    ncols = len(T[0]) - 1
    while True:
        enter = next((j for j in range(ncols) if allowed(j) and T[obj_row][j] < 0), None)
        if enter is None:
            return
        best = None
        for i, row in enumerate(T):
            if i == obj_row or row[enter] <= 0:
                continue
            ratio = row[-1] / row[enter]
            if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                best = (ratio, i)
        if best is None:
            raise ArithmeticError("unbounded LP")
        _pivot(T, basis, best[1], enter)


def lp_maximize(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence):
    """Maximise ``c.x`` subject to ``A_eq x = b_eq``, ``x >= 0`` exactly.

    Two-phase simplex with Bland's rule. Returns ``(value, x)`` or ``None``
    if infeasible. The problem must be bounded.
    """
    m = len(A_eq)
    n = len(c)
    rows = []
    for row, rhs in zip(A_eq, b_eq):
        row = [Fraction(v) for v in row]
        rhs = Fraction(rhs)
        if rhs < 0:
            row, rhs = [-v for v in row], -rhs
        rows.append(row + [Fraction(int(i == len(rows))) for i in range(m)] + [rhs])
    width = n + m
    # phase 1: minimise the artificial sum
    phase1 = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            phase1[j] -= row[j]
        phase1[-1] -= row[-1]
    T = rows + [phase1]
    basis = [n + i for i in range(m)] + [-1]
    _bland(T, basis, m, lambda j: True)
    if T[m][-1] != 0:
        return None
    # drive degenerate artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)
    keep = [i for i in range(m) if basis[i] < n]
    T = [T[i] for i in keep]
    basis = [basis[i] for i in keep]
    obj = [Fraction(-v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    for i, bcol in enumerate(basis):
        if obj[bcol] != 0:
            f = obj[bcol]
            obj = [a - f * b for a, b in zip(obj, T[i])]
    T.append(obj)
    basis.append(-1)
    _bland(T, basis, len(T) - 1, lambda j: j < n)
    x = [Fraction(0)] * n
    for i, bcol in enumerate(basis[:-1]):
        x[bcol] = T[i][-1]
    return T[-1][-1], x


def strict_zero_combination(points: Sequence[Sequence]) -> Optional[list[Fraction]]:
    """Strictly positive convex weights putting the origin at the barycentre.

    Such weights exist exactly when the origin lies in the relative interior
    of the convex hull of ``points``. The LP maximises the smallest weight,
    so symmetric inputs get symmetric weights.

    >>> strict_zero_combination([(1, 0), (-1, 0), (0, 1), (0, -1)])
    [Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)]
    """
    if not points:
        raise InputError("strict_zero_combination needs at least one point")
    k = len(points)
    dim = len(points[0])
    if any(len(p) != dim for p in points):
        raise InputError("points have different dimensions")
    # lambda_i = t + s_i with t, s_i >= 0; maximise t
    A = [[k] + [1] * k]
    b = [1]
    for a in range(dim):
        A.append([sum(Fraction(p[a]) for p in points)] + [Fraction(p[a]) for p in points])
        b.append(0)
    res = lp_maximize([1] + [0] * k, A, b)
    if res is None or res[0] <= 0:
        return None
    t, x = res
    return [t + s for s in x[1:]]
