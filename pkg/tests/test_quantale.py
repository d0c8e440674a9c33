"""Quantale carriers and the law suite.

Residual tables produced by the residuum formulas are cross-checked
against brute-force sup searches here, so the two routes guard each
other.
"""

from fractions import Fraction

import pytest

from qumod.errors import InvalidAlgebra, SizeBound
from qumod.quantale import (
    FiniteMonoid,
    FiniteQuantale,
    TNormQuantale,
    check_quantale_laws,
    finite_residuals,
    grid_quantale,
    lukasiewicz_chain,
    powerset_quantale,
)
from qumod.tnorms import GODEL, LUKASIEWICZ, NILPOTENT_MINIMUM, PRODUCT
from qumod.values import UnitValue

E = UnitValue.exact


def bool_chain():
    join = [[0, 1], [1, 1]]
    prod = [[0, 0], [0, 1]]
    return finite_residuals(join, prod, 1, 0)


def test_two_chain_residuals_are_implication():
    q = bool_chain()
    imp = [[1, 1], [0, 1]]
    assert q.lres == imp
    assert q.rres == [[1, 0], [1, 1]]  # rres[y][x] = x -> y


def test_two_chain_residuals_by_definition():
    q = bool_chain()
    for x in range(2):
        for y in range(2):
            candidates = [z for z in range(2) if q.le(q.mul(x, z), y)]
            assert q.ldiv(x, y) == q.fold_join(candidates)
            candidates = [z for z in range(2) if q.le(q.mul(z, x), y)]
            assert q.rdiv(y, x) == q.fold_join(candidates)


def test_l3_half_under_zero():
    q = lukasiewicz_chain(3)
    half, zero = 1, 0
    assert q.ldiv(half, zero) == half
    # exhaustive confirmation straight from the defining sup
    best = 0
    for z in range(3):
        if q.le(q.mul(half, z), zero):
            best = q.join2(best, z)
    assert best == half


def test_unit_residual_identity():
    q = lukasiewicz_chain(5)
    for x in range(q.size):
        assert q.ldiv(q.unit, x) == x
        assert q.rdiv(x, q.unit) == x


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_chain_grid_residuals_match_brute_force(k):
    q = lukasiewicz_chain(k)
    brute = FiniteQuantale(q.join, q.prod, q.unit, q.bottom)
    assert q.lres == brute.lres
    assert q.rres == brute.rres


@pytest.mark.parametrize("kind", [GODEL, NILPOTENT_MINIMUM])
def test_grid_residuals_match_brute_force(kind):
    q = grid_quantale(kind, 6)
    brute = FiniteQuantale(q.join, q.prod, q.unit, q.bottom)
    assert q.lres == brute.lres
    assert q.rres == brute.rres


def test_grid_quantale_values_and_labels():
    q = grid_quantale(LUKASIEWICZ, 4)
    assert q.values[3].as_fraction() == Fraction(3, 4)
    assert q.labels[3] == "3/4"
    assert q.unit == 4 and q.bottom == 0 and q.top == 4


def test_grid_meet_is_min():
    q = grid_quantale(GODEL, 7)
    for i in range(q.size):
        for j in range(q.size):
            assert q.meet2(i, j) == min(i, j)


def test_lukasiewicz_chain_product():
    q = lukasiewicz_chain(4)  # carrier 0, 1/3, 2/3, 1
    assert q.mul(2, 2) == 1  # 2/3 * 2/3 -> 1/3
    assert q.mul(1, 1) == 0
    assert q.ldiv(2, 1) == 2  # 2/3 \ 1/3 = 2/3


def test_invalid_join_table_rejected():
    join = [[0, 1], [0, 1]]  # not commutative at (0, 1) vs (1, 0)
    prod = [[0, 0], [0, 1]]
    with pytest.raises(InvalidAlgebra):
        finite_residuals(join, prod, 1, 0)


def test_non_quantale_product_rejected():
    # Z2 glued onto a chain: a sound monoid whose product is not
    # join-distributive, e.g. 1.(1 v 2) = 1 but (1.1) v (1.2) = 2
    join = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
    prod = [[0, 0, 0], [0, 2, 1], [0, 1, 2]]
    with pytest.raises(InvalidAlgebra) as err:
        finite_residuals(join, prod, 2, 0)
    assert "distributivity" in str(err.value)


def test_checker_flags_broken_unit():
    join = [[0, 1], [1, 1]]
    prod = [[0, 0], [0, 0]]  # unit row broken
    q = FiniteQuantale(join, prod, 1, 0, validate=False)
    rep = check_quantale_laws(q)
    assert not rep.ok
    assert any("Q2 unit" in r.law for r in rep.failures)


def z2_monoid():
    return FiniteMonoid([[0, 1], [1, 0]], 0, labels=["e", "a"])


def test_powerset_of_z2():
    q = powerset_quantale(z2_monoid())
    assert q.size == 4
    ea, a = 1, 2  # masks: {e} = 0b01, {a} = 0b10
    assert q.mul(a, a) == ea  # {a}.{a} = {a a} = {e}
    for s in range(4):
        assert q.mul(q.unit, s) == s
        assert q.mul(s, q.unit) == s
    assert q.labels[3] == "{e,a}"


def test_powerset_laws_pass():
    rep = check_quantale_laws(powerset_quantale(z2_monoid()))
    assert rep.ok, str(rep)


def left_zero_monoid():
    # e is the unit; a, b satisfy x.y = x, so ab = a but ba = b
    table = [[0, 1, 2], [1, 1, 1], [2, 2, 2]]
    return FiniteMonoid(table, 0, labels=["e", "a", "b"])


def test_noncommutative_powerset_laws_pass():
    q = powerset_quantale(left_zero_monoid())
    assert not q.commutative
    rep = check_quantale_laws(q)
    assert rep.ok, str(rep)


def test_noncommutative_residuals_differ():
    q = powerset_quantale(left_zero_monoid())
    pairs = [(x, y) for x in range(q.size) for y in range(q.size)
             if q.ldiv(x, y) != q.rdiv(y, x)]
    assert pairs


def test_powerset_size_bound():
    # saturating addition on {0..4}: associative, unit 0
    table = [[min(i + j, 4) for j in range(5)] for i in range(5)]
    m = FiniteMonoid(table, 0)
    with pytest.raises(SizeBound):
        powerset_quantale(m, max_elements=4)


def test_monoid_validation():
    with pytest.raises(InvalidAlgebra):
        FiniteMonoid([[0, 1], [1, 1]], 1)  # 1 is not a unit
    with pytest.raises(InvalidAlgebra):
        # break associativity while keeping 0 a two-sided unit
        FiniteMonoid([[0, 1, 2], [1, 2, 2], [2, 2, 1]], 0)


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_chain_law_suite(k):
    rep = check_quantale_laws(lukasiewicz_chain(k))
    assert rep.ok, str(rep)


@pytest.mark.parametrize("kind", [GODEL, LUKASIEWICZ, NILPOTENT_MINIMUM])
def test_grid_law_suite_small(kind):
    rep = check_quantale_laws(grid_quantale(kind, 10))
    assert rep.ok, str(rep)


def test_tnorm_quantale_protocol():
    q = TNormQuantale(LUKASIEWICZ)
    a, b = E(7, 10), E(6, 10)
    assert q.mul(a, b) == E(3, 10)
    assert q.ldiv(a, E(4, 10)) == E(7, 10)
    assert q.rdiv(E(4, 10), a) == E(7, 10)
    assert q.join2(a, b) == a and q.meet2(a, b) == b
    assert q.le(b, a)
    assert q.fold_join([b, a, q.bottom]) == a
    assert q.fold_meet([a, b]) == b
    assert not q.float_backend
    assert TNormQuantale(PRODUCT).float_backend


def test_tnorm_quantale_law_suite_exact_kind():
    rep = check_quantale_laws(TNormQuantale(GODEL), grid_den=12)
    assert rep.ok, str(rep)


def test_tnorm_quantale_law_suite_float_kind():
    rep = check_quantale_laws(TNormQuantale(PRODUCT), float_den=8)
    assert rep.ok, str(rep)


def test_report_lines_name_each_law():
    rep = check_quantale_laws(lukasiewicz_chain(3))
    text = str(rep)
    for fragment in ("Q1 join-associativity", "Q2 product-associativity",
                     "Q3 left-distributivity", "residual adjunction (left)",
                     "residual arithmetic: residual currying"):
        assert fragment in text
    assert all(line.startswith("PASS") for line in rep.lines())
