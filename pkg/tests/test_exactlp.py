"""Exact linear algebra against sympy oracles and constructed LPs."""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from monopath import exactlp
from monopath.exactlp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    det,
    find_feasible,
    fmat,
    fvec,
    mat_vec,
    nullspace,
    rank,
    rref,
    solve,
    solve_lp,
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)


def square_matrices(n):
    return st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)


@given(square_matrices(4))
@settings(max_examples=60, deadline=None)
def test_det_matches_sympy(rows):
    a = fmat(rows)
    assert det(a) == Fraction(sympy.Matrix(rows).det())


@given(square_matrices(4), st.lists(rationals, min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_solve_square_system(rows, rhs):
    a, b = fmat(rows), fvec(rhs)
    x = solve(a, b)
    if det(a) == 0:
        assert x is None
    else:
        assert x is not None
        assert mat_vec(a, x) == b


@given(st.lists(st.lists(rationals, min_size=6, max_size=6), min_size=3, max_size=5))
@settings(max_examples=60, deadline=None)
def test_nullspace_and_rank(rows):
    a = fmat(rows)
    basis = nullspace(a)
    assert len(basis) == 6 - rank(a)
    for v in basis:
        assert all(x == 0 for x in mat_vec(a, v))
    assert rank(a) == sympy.Matrix(rows).rank()


def test_rref_identity_block():
    a = fmat([[2, 4, 1], [1, 1, 1]])
    red, pivots = rref(a)
    assert pivots == [0, 1]
    assert red[0][0] == 1 and red[1][1] == 1 and red[0][1] == 0 and red[1][0] == 0


def test_lp_simple_bounded_optimum():
    # max x+y st x<=3, y<=4, -x<=0, -y<=0
    res = solve_lp([1, 1], [[1, 0], [0, 1], [-1, 0], [0, -1]], [3, 4, 0, 0])
    assert res.status == OPTIMAL
    assert res.value == 7
    assert res.x == [Fraction(3), Fraction(4)]


def test_lp_unbounded():
    res = solve_lp([1, 0], [[0, 1]], [1])
    assert res.status == UNBOUNDED


def test_lp_infeasible_pair():
    # x <= 0 and -x <= -1 cannot both hold
    assert find_feasible([[1], [-1]], [0, -1]) is None


def test_lp_negative_rhs_feasible():
    # x free, x <= -5 is feasible at x = -5
    x = find_feasible([[1]], [-5])
    assert x is not None and x[0] <= -5


@given(
    st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=2, max_size=6),
    st.lists(rationals, min_size=3, max_size=3),
    st.lists(st.fractions(min_value=0, max_value=5, max_denominator=7), min_size=2, max_size=6),
)
@settings(max_examples=80, deadline=None)
def test_lp_constructed_feasible_systems(rows, x0rows, slack):
    """Systems built as A x0 + slack have x0 as witness, so must be feasible."""
    a = fmat(rows)
    x0 = fvec(x0rows)
    b = [exactlp.dot(r, x0) + s for r, s in zip(a, slack[: len(a)] + [Fraction(0)] * len(a))]
    x = find_feasible(a, b)
    assert x is not None
    assert all(exactlp.dot(r, x) <= bi for r, bi in zip(a, b))


def test_lp_random_cross_checked_against_vertex_enumeration():
    """Bounded 2d LPs solved exactly; optimum must match brute force over
    basic solutions (all 2x2 subsystems), which is exhaustive in the plane."""
    rng = random.Random(7)
    for _ in range(25):
        m = rng.randint(3, 6)
        a = [[Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))] for _ in range(m)]
        # box to guarantee boundedness
        a += fmat([[1, 0], [-1, 0], [0, 1], [0, -1]])
        b = [Fraction(rng.randint(0, 8)) for _ in range(m)] + fvec([10, 10, 10, 10])
        c = fvec([rng.randint(-3, 3), rng.randint(-3, 3)])
        res = solve_lp(c, a, b)
        assert res.status == OPTIMAL
        best = None
        n = len(a)
        for i in range(n):
            for j in range(i + 1, n):
                d = a[i][0] * a[j][1] - a[i][1] * a[j][0]
                if d == 0:
                    continue
                x = [
                    (b[i] * a[j][1] - a[i][1] * b[j]) / d,
                    (a[i][0] * b[j] - b[i] * a[j][0]) / d,
                ]
                if all(exactlp.dot(row, x) <= bb for row, bb in zip(a, b)):
                    v = exactlp.dot(c, x)
                    best = v if best is None or v > best else best
        assert best is not None
        assert res.value == best
        assert all(exactlp.dot(row, res.x) <= bb for row, bb in zip(a, b))
