from itertools import permutations

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from isingpvi.series import SeriesK, SeriesError, T
from isingpvi.hypergeom import elliptic_series
from isingpvi.hypergeom import fw_low_element, row_low_element, MatrixElementFamily, matrix_element
from isingpvi.determinants import (SeriesMatrix, det_series, toeplitz_det, wilf_factor, wilf_matrices,
                                   factordet_product)

O = 8
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)


@st.composite
def entries(draw, order=O):
    v = draw(st.integers(0, 2))
    cs = draw(st.lists(rationals, min_size=order - v + 1, max_size=order - v + 1))
    return SeriesK(v, cs, order)


def square(n):
    return st.lists(st.lists(entries(), min_size=n, max_size=n), min_size=n, max_size=n)


def leibniz(rows):
    n = len(rows)
    o = rows[0][0].order
    total = SeriesK.zero(o)
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = SeriesK.const(-1 if inv % 2 else 1, o)
        for i in range(n):
            term = term * rows[i][p[i]]
        total = total + term
    return total


def test_dim_one():
    s = SeriesK(0, [2, 3], 5)
    assert det_series(SeriesMatrix([[s]])) == s


def test_upper_triangular():
    a, b, c = (SeriesK(0, [x, 1], 6) for x in (1, 2, 3))
    z = SeriesK.zero(6)
    m = SeriesMatrix([[a, b, c], [z, b, a], [z, z, c]])
    assert det_series(m) == a * b * c


@given(square(3))
def test_cofactor_matches_leibniz(rows):
    assert det_series(SeriesMatrix(rows)).agrees(leibniz(rows), O)


@settings(max_examples=12)
@given(st.lists(st.lists(entries(O + 6), min_size=5, max_size=5), min_size=5, max_size=5))
def test_bareiss_matches_leibniz(rows):
    # the elimination sees entries exact through k^O; its advertised order is
    # checked against the permutation expansion of the untruncated entries
    short = [[e.truncate(O) for e in r] for r in rows]
    d = det_series(SeriesMatrix(short))
    assert d.order >= O
    assert d.agrees(leibniz(rows), d.order)


@given(square(3))
def test_row_swap_flips_sign(rows):
    swapped = [rows[1], rows[0], rows[2]]
    assert det_series(SeriesMatrix(swapped)).agrees(-det_series(SeriesMatrix(rows)))


@given(square(2), square(2))
def test_block_diagonal_multiplicative(a, b):
    z = SeriesK.zero(O)
    rows = [a[0] + [z, z], a[1] + [z, z], [z, z] + b[0], [z, z] + b[1]]
    assert det_series(SeriesMatrix(rows)).agrees(det_series(SeriesMatrix(a)) * det_series(SeriesMatrix(b)))


def test_requested_order_unattainable():
    m = SeriesMatrix([[SeriesK.const(1, 4)]])
    with pytest.raises(SeriesError):
        det_series(m, order=6)


def test_non_square_refused():
    with pytest.raises(ValueError):
        SeriesMatrix([[SeriesK.const(1, 4), SeriesK.const(1, 4)]])


def test_c02_low_from_two_by_two():
    # (1/t)(E~^2 - 2(1-t) E~ K~ + (1-t) K~^2)
    d = toeplitz_det(row_low_element, 2, 16)
    Kt, Et = elliptic_series("K", 10), elliptic_series("E", 10)
    omt = SeriesK.t_poly([1, -1], 20, T).with_var(T)
    closed = (Et * Et - (omt * Et * Kt).scale(2) + omt * Kt * Kt).as_k().shift(-2)
    assert d.agrees(closed, 16)
    assert [d.t_coeff(j) for j in range(3)] == [1, mpq(-1, 4), mpq(-3, 32)]


def _sym(A):
    n = len(A)
    return SeriesMatrix([[A[abs(i - j)] for j in range(n)] for i in range(n)])


def test_wilf_small_forms():
    A = [SeriesK(0, [x, 1, x], 6) for x in (3, 5, 7, 11)]
    plus, minus = wilf_factor(_sym(A[:2]))
    assert {plus, minus} == {A[0] + A[1], A[0] - A[1]}
    plus, minus = wilf_factor(_sym(A[:3]))
    other = (A[0] + A[2]) * A[0] - A[1] * A[1].scale(2)
    assert minus == A[0] - A[2]
    assert plus == other


@given(st.integers(2, 6), st.data())
def test_wilf_product_is_determinant(n, data):
    A = [data.draw(entries()) for _ in range(n)]
    plus, minus = wilf_factor(_sym(A))
    d = det_series(_sym(A))
    assert (plus * minus).agrees(d, min(d.order, (plus * minus).order))


def test_wilf_on_fw_odd_kernel():
    m = SeriesMatrix.toeplitz(lambda j, o: fw_low_element(1, 4, j, o), 4, 16)
    plus, minus = wilf_factor(m)
    assert (plus * minus).agrees(det_series(m), 16)


def test_wilf_rejects_nonsymmetric():
    m = SeriesMatrix.toeplitz(row_low_element, 3, 8)
    with pytest.raises(ValueError):
        wilf_factor(m)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_high_row_factorization(N):
    fam = MatrixElementFamily("HighRowFourier")
    el = lambda n, o: matrix_element(fam, n, o)
    full = toeplitz_det(el, 2 * N, 16)
    assert factordet_product(el, N, 20).agrees(full, 16)
