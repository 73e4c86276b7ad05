"""Random-matrix checks for the integer linear algebra helpers."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from p2lab.intlinalg import (
    det,
    identity,
    invert_unimodular,
    kernel_basis,
    matmul,
    matvec,
    smith_normal_form,
    solve_integer,
    solve_rational,
)


def matrices(rows, cols, lo=-6, hi=6):
    return st.lists(
        st.lists(st.integers(lo, hi), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n), matrices(n, 4))))
def test_smith_normal_form(args):
    _, a = args
    u, d, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == d
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0
    for x, y in zip(diag, diag[1:]):
        if x != 0:
            assert y % x == 0
        else:
            assert y == 0


@given(matrices(3, 5))
def test_kernel_basis_annihilates(a):
    for k in kernel_basis(a):
        assert matvec(a, k) == [0, 0, 0]
    # kernel dimension complements the rank over the rationals
    _, d, _ = smith_normal_form(a)
    rank = sum(1 for i in range(3) if d[i][i] != 0)
    assert len(kernel_basis(a)) == 5 - rank


@given(matrices(4, 3), st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_solve_integer_round_trip(a, x):
    b = matvec(a, x)
    sol = solve_integer(a, b)
    assert sol is not None
    assert matvec(a, sol) == b


@given(matrices(3, 3))
def test_solve_integer_detects_unsolvable(a):
    # doubling a full-rank odd system forces non-integer solutions
    if det(a) == 0:
        return
    b = matvec(a, [1, 1, 1])
    b2 = [2 * x + 1 for x in b]
    sol = solve_integer(a, b2)
    if sol is not None:
        assert matvec(a, sol) == b2


@given(matrices(3, 3), matrices(3, 3))
def test_det_is_multiplicative(a, b):
    assert det(matmul(a, b)) == det(a) * det(b)


@given(matrices(4, 4))
def test_det_matches_cofactor_expansion(a):
    def minor(m, i, j):
        return [[m[r][c] for c in range(len(m)) if c != j]
                for r in range(len(m)) if r != i]

    def cofactor(m):
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** j * m[0][j] * cofactor(minor(m, 0, j))
                   for j in range(len(m)))

    assert det(a) == cofactor(a)


@given(matrices(3, 3), st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_solve_rational(a, x):
    if det(a) == 0:
        return
    b = matvec(a, x)
    sol = solve_rational(a, [Fraction(v) for v in b])
    assert sol == [Fraction(v) for v in x]


def test_invert_unimodular():
    m = [[1, 2, 0], [0, 1, 3], [0, 0, 1]]
    inv = invert_unimodular(m)
    assert matmul(m, inv) == identity(3)
    assert matmul(inv, m) == identity(3)
    with pytest.raises(Exception):
        invert_unimodular([[2, 0], [0, 1]])
