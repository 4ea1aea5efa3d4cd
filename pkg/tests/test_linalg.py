from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from vglab.interpolate import interpolate_form, interpolate_forms
from vglab.errors import InconsistentSamples, Underdetermined
from vglab.forms import random_form
from vglab.linalg import (
    det,
    kernel_basis,
    left_kernel_basis,
    matmul,
    matrix_rank,
    normalize_vector,
    rank_mod_p,
    rref,
    transpose,
)
from vglab.points import derive_rng, random_points

entries = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    # low-rank products show up often enough to exercise the kernel code
    if draw(st.booleans()):
        k = draw(st.integers(1, min(r, c)))
        A = [[draw(st.integers(-3, 3)) for _ in range(k)] for _ in range(r)]
        B = [[draw(st.integers(-3, 3)) for _ in range(c)] for _ in range(k)]
        return [[Fraction(v) for v in row] for row in matmul(A, B)]
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


@given(matrices())
def test_rank_matches_sympy(M):
    assert matrix_rank(M) == sympy.Matrix(M).rank()


@given(matrices())
def test_mod_p_rank_never_exceeds_rank(M):
    rp = rank_mod_p(M)
    assert rp is None or rp <= matrix_rank(M)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(M):
    assert det(M) == Fraction(str(sympy.Matrix(M).det()))


@given(matrices())
def test_kernel_and_rref(M):
    ncols = len(M[0])
    K = kernel_basis(M, ncols)
    assert len(K) == ncols - matrix_rank(M)
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    if K:
        assert matrix_rank(K) == len(K)
    R, piv = rref(M)
    assert len(piv) == matrix_rank(M)
    for i, p in enumerate(piv):
        assert R[i][p] == 1
        assert all(R[k][p] == 0 for k in range(len(R)) if k != i)


@given(matrices())
def test_left_kernel(M):
    L = left_kernel_basis(M, len(M))
    for y in L:
        assert all(sum(y[i] * M[i][j] for i in range(len(M))) == 0 for j in range(len(M[0])))
    assert len(L) == len(M) - matrix_rank(M)


def test_transpose_and_det_examples():
    assert transpose([[1, 2], [3, 4]]) == [[1, 3], [2, 4]]
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[Fraction(1, 2), 0], [0, 4]]) == 2


def test_normalize_vector():
    assert normalize_vector([Fraction(-1, 2), Fraction(3, 4), 0]) == (2, -3, 0)
    assert normalize_vector([0, -6, 9]) == (0, 2, -3)
    assert normalize_vector([0, 0]) == (0, 0)


@pytest.mark.parametrize("n,d", [(1, 3), (2, 3), (3, 3), (2, 5)])
def test_interpolation_round_trip_on_random_forms(n, d):
    rng = derive_rng(11, "interp", n, d)
    f = random_form(rng, n + 1, d, -9, 9)
    pts = random_points(rng, n, 2 * len(f.terms) + 10)
    assert interpolate_form(n, d, [(p, f.eval(p.coords)) for p in pts]) == f


def test_interpolation_detects_wrong_degree():
    rng = derive_rng(2)
    f = random_form(rng, 3, 2)
    g = random_form(rng, 3, 1)
    pts = random_points(rng, 2, 30)
    # a quartic's values are not those of any cubic
    h = f * f
    with pytest.raises(InconsistentSamples):
        interpolate_form(2, 3, [(p, h.eval(p.coords)) for p in pts])
    with pytest.raises(Underdetermined):
        interpolate_form(2, 3, [(p, g.eval(p.coords)) for p in pts[:5]])


def test_interpolation_shares_elimination_across_columns():
    rng = derive_rng(5)
    fs = [random_form(rng, 3, 3) for _ in range(4)]
    pts = random_points(rng, 2, 25)
    cols = [[f.eval(p.coords) for p in pts] for f in fs]
    assert interpolate_forms(2, 3, pts, cols) == fs
