from fractions import Fraction

import pytest

from qumod.errors import InvalidAlgebra, SizeBound
from qumod.matrixq import check_matrix_laws, matrix_quantale, to_finite_quantale
from qumod.quantale import (
    check_quantale_laws,
    grid_quantale,
    lukasiewicz_chain,
)
from qumod.tnorms import GODEL


def test_unit_is_idempotent():
    for q in (lukasiewicz_chain(2), lukasiewicz_chain(4)):
        for n in (1, 2, 3):
            mq = matrix_quantale(q, n)
            assert mq.is_idempotent(mq.unit)
            assert mq.is_idempotent(mq.bottom)


def test_upper_triangular_ones_idempotent_over_l3():
    mq = matrix_quantale(lukasiewicz_chain(3), 2)
    m = mq.matrix([[2, 2], [0, 2]])  # values [[1, 1], [0, 1]]
    assert mq.is_idempotent(m)
    assert mq.show(m) == "[[2/2, 2/2], [0/2, 2/2]]"


def test_half_diagonal_not_idempotent_over_l3():
    mq = matrix_quantale(lukasiewicz_chain(3), 2)
    m = mq.matrix([[1, 0], [0, 1]])  # diag(1/2, 1/2); 1/2 . 1/2 = 0
    assert not mq.is_idempotent(m)
    assert mq.mul(m, m) == mq.bottom


def _luk(a, b):
    return max(Fraction(0), a + b - 1)


def test_product_matches_fraction_oracle():
    q = lukasiewicz_chain(4)
    vals = [Fraction(k, 3) for k in range(4)]
    mq = matrix_quantale(q, 2)
    a = mq.matrix([[3, 1], [2, 0]])
    b = mq.matrix([[1, 2], [3, 3]])
    got = mq.rows(mq.mul(a, b))
    av, bv = [[vals[x] for x in r] for r in mq.rows(a)], \
             [[vals[x] for x in r] for r in mq.rows(b)]
    want = [[max(_luk(av[i][0], bv[0][j]), _luk(av[i][1], bv[1][j]))
             for j in range(2)] for i in range(2)]
    assert [[vals[x] for x in r] for r in got] == want


def test_matrix_product_not_commutative():
    mq = matrix_quantale(lukasiewicz_chain(3), 2)
    a = mq.matrix([[0, 2], [0, 0]])
    b = mq.matrix([[0, 0], [2, 0]])
    assert mq.mul(a, b) != mq.mul(b, a)


def test_one_by_one_collapses_to_base():
    q = lukasiewicz_chain(5)
    mq = matrix_quantale(q, 1)
    for x in range(q.size):
        for y in range(q.size):
            assert mq.mul((x,), (y,)) == (q.prod[x][y],)
    assert mq.unit == (q.unit,)


def test_full_law_check_small():
    report = check_matrix_laws(matrix_quantale(lukasiewicz_chain(2), 2))
    assert report.ok
    assert all("(sampled)" not in r.law for r in report.results)
    laws = [r.law for r in report.results]
    assert "Q2 product-associativity" in laws
    assert "Q3 right-distributivity" in laws


def test_full_law_check_l3():
    report = check_matrix_laws(matrix_quantale(lukasiewicz_chain(3), 2))
    assert report.ok, report.failures


def test_sampled_law_check_above_bound():
    q = grid_quantale(GODEL, 10)  # 11 elements, 11^4 > 10^4
    mq = matrix_quantale(q, 2)
    report = check_matrix_laws(mq)
    assert report.ok, report.failures
    assert all(r.law.endswith("(sampled)") for r in report.results)


def test_materialized_matrix_quantale_passes_generic_suite():
    mq = matrix_quantale(lukasiewicz_chain(2), 2)
    q16 = to_finite_quantale(mq, validate=True)
    assert q16.size == 16
    report = check_quantale_laws(q16)
    assert report.ok, report.failures


def test_materialize_size_bound():
    with pytest.raises(SizeBound):
        to_finite_quantale(matrix_quantale(lukasiewicz_chain(3), 2),
                           max_elements=50)


def test_matrix_constructor_rejects_bad_input():
    mq = matrix_quantale(lukasiewicz_chain(3), 2)
    with pytest.raises(InvalidAlgebra):
        mq.matrix([[0, 1]])
    with pytest.raises(InvalidAlgebra):
        mq.matrix([[0, 3], [0, 0]])
    with pytest.raises(InvalidAlgebra):
        matrix_quantale(lukasiewicz_chain(3), 0)


def test_order_and_extremes():
    mq = matrix_quantale(lukasiewicz_chain(3), 2)
    m = mq.matrix([[1, 0], [2, 1]])
    assert mq.le(mq.bottom, m) and mq.le(m, mq.top)
    assert mq.join2(m, mq.bottom) == m
    assert not mq.le(mq.unit, m)
