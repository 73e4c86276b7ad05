"""Exact integer matrix utilities: Smith normal form, kernels, solving.

Matrices are lists of lists of Python ints (rows).  Everything is exact;
nothing here is performance-critical (dimensions are at most 10).
"""
from __future__ import annotations

from fractions import Fraction


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    return [[sum(a[i][s] * b[s][j] for s in range(k)) for j in range(m)] for i in range(n)]


def matvec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def smith_normal_form(a):
    """Return (u, d, v) with u @ a @ v == d, u and v unimodular, d diagonal
    with d[i][i] dividing d[i+1][i+1]."""
    d = [list(row) for row in a]
    n = len(d)
    m = len(d[0]) if n else 0
    u = identity(n)
    v = identity(m)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, k):
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, k):
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(n, m):
        # find a pivot
        pivot = None
        for i in range(t, n):
            for j in range(t, m):
                if d[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, n):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    addmul_row(i, t, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, m):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    addmul_col(j, t, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if d[t][t] < 0:
            negate_row(t)
        t += 1
    # enforce the divisibility chain d[i] | d[i+1] (zeros are already last,
    # since the elimination loop always pivots on a nonzero when one exists)
    r = min(n, m)
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a_, b_ = d[i][i], d[i + 1][i + 1]
            if a_ and b_ % a_ != 0:
                addmul_row(i, i + 1, 1)
                _rediagonalize_pair(d, u, v, i)
                changed = True
    return u, d, v


def _rediagonalize_pair(d, u, v, t):
    """Re-clear the 2x2 block at (t, t) after mixing rows t and t+1."""
    n, m = len(d), len(d[0])

    def addmul_row(dst, src, k):
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, k):
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    while True:
        done = True
        for i in (t + 1,):
            if i < n and d[i][t]:
                q = d[i][t] // d[t][t]
                addmul_row(i, t, -q)
                if d[i][t]:
                    swap_rows(t, i)
                    done = False
        for j in (t + 1,):
            if j < m and d[t][j]:
                q = d[t][j] // d[t][t]
                addmul_col(j, t, -q)
                if d[t][j]:
                    swap_cols(t, j)
                    done = False
        if done:
            break
    if d[t][t] < 0:
        d[t] = [-x for x in d[t]]
        u[t] = [-x for x in u[t]]
    if t + 1 < min(n, m) and d[t + 1][t + 1] < 0:
        d[t + 1] = [-x for x in d[t + 1]]
        u[t + 1] = [-x for x in u[t + 1]]


def kernel_basis(a):
    """Basis of the integer kernel {x : a @ x == 0}; the lattice it spans is
    saturated (a direct summand), as integer kernels always are."""
    n = len(a)
    m = len(a[0]) if n else 0
    if n == 0:
        return [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    u, d, v = smith_normal_form(a)
    rank = sum(1 for i in range(min(n, m)) if d[i][i] != 0)
    cols = transpose(v)
    return [cols[j] for j in range(rank, m)]


def solve_integer(a, b):
    """One integer solution x of a @ x == b, or None if none exists."""
    n = len(a)
    m = len(a[0]) if n else 0
    u, d, v = smith_normal_form(a)
    ub = matvec(u, b)
    y = [0] * m
    for i in range(min(n, m)):
        if d[i][i]:
            if ub[i] % d[i][i]:
                return None
            y[i] = ub[i] // d[i][i]
        elif ub[i]:
            return None
    for i in range(min(n, m), n):
        if ub[i]:
            return None
    return matvec(v, y)


def det(a):
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_rational(a, b):
    """Solve a @ x == b exactly over Q (a square, invertible); Fractions out."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def invert_unimodular(a):
    """Exact inverse of an integer matrix with det +-1 (integer output)."""
    n = len(a)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = solve_rational(a, e)
        assert all(f.denominator == 1 for f in x), "matrix is not unimodular"
        cols.append([int(f) for f in x])
    return transpose(cols)
