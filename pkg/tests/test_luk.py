from fractions import Fraction
from itertools import product as iproduct
import random

import pytest

from qumod.errors import IndexOut
from qumod.luk import (
    LUK,
    basis_value,
    build_coder,
    luk_inverse,
    luk_transform,
    partition_check,
)
from qumod.transforms import FreeVector
from qumod.values import UnitValue


def U(num, den=1):
    return UnitValue.exact(num, den)


def test_basis_node_and_slope_values():
    assert basis_value(3, 0, 0).value == 1
    assert basis_value(3, 0, Fraction(1, 4)).value == Fraction(1, 2)
    assert basis_value(3, 1, Fraction(1, 4)).value == Fraction(1, 2)
    assert basis_value(3, 2, Fraction(1, 2)).value == 0
    assert basis_value(2, 1, Fraction(2, 3)).value == Fraction(2, 3)


def test_basis_validation():
    with pytest.raises(IndexOut):
        basis_value(3, 3, 0)
    with pytest.raises(IndexOut):
        basis_value(3, -1, 0)
    with pytest.raises(ValueError):
        basis_value(1, 0, 0)


def test_basis_backend_follows_input():
    assert basis_value(3, 1, Fraction(1, 3)).is_exact
    assert not basis_value(3, 1, 0.33).is_exact
    got = basis_value(4, 2, 0.5)
    assert abs(got.value - 0.5) < 1e-12


def test_partition_check_small_orders():
    assert partition_check(3, [12]).ok
    assert partition_check(2, [7, 12, 255]).ok
    rep = partition_check(5, [8, 20])
    assert rep.ok, rep.failures
    assert len(rep.results) == 4


def test_partition_check_large_grid():
    assert partition_check(17, [255 * 16]).ok


def test_coder_3_5_values_and_class():
    c = build_coder(3, 5)
    p = c.kernel
    assert p.p[2][1].value == 1
    assert p.p[1][0].value == Fraction(1, 2)
    assert p.p[1][1].value == Fraction(1, 2)
    assert c.classification.is_orthonormal
    assert c.classification.witness == (0, 2, 4)


def test_coder_2_4_is_the_linear_ramp():
    c = build_coder(2, 4)
    assert [v.value for v in c.kernel.column(0)] == \
        [1, Fraction(2, 3), Fraction(1, 3), 0]
    assert [v.value for v in c.kernel.column(1)] == \
        [0, Fraction(1, 3), Fraction(2, 3), 1]
    assert c.classification.is_orthonormal


def test_coder_25_64_orthogonal_not_normal():
    c = build_coder(25, 64)
    cls = c.classification
    assert cls.is_orthogonal
    assert not cls.is_normal and not cls.is_orthonormal


def test_divisibility_decides_orthonormality():
    for n, m in [(2, 4), (3, 5), (3, 9), (4, 10), (5, 9), (4, 6), (3, 6)]:
        c = build_coder(n, m)
        assert c.classification.is_orthonormal == ((m - 1) % (n - 1) == 0), \
            (n, m)


def test_coder_validation():
    with pytest.raises(ValueError):
        build_coder(1, 5)
    with pytest.raises(ValueError):
        build_coder(3, 3)


def test_ramp_compresses_and_reconstructs_exactly():
    c = build_coder(2, 4)
    f = [U(1), U(2, 3), U(1, 3), U(0)]
    g = luk_transform(c, f)
    assert [v.value for v in g] == [1, 0]
    back = luk_inverse(c, g)
    assert [v.value for v in back] == [1, Fraction(2, 3), Fraction(1, 3), 0]


def test_zero_vector_round_trip_and_second_pass():
    c = build_coder(2, 4)
    g = luk_transform(c, [U(0)] * 4)
    assert [v.value for v in g] == [0, 0]
    lifted = luk_inverse(c, g)
    assert [v.value for v in lifted] == [0, Fraction(1, 3), Fraction(1, 3), 0]
    again = luk_transform(c, lifted)
    assert [v.value for v in again] == [0, 0]
    assert luk_inverse(c, again) == lifted


def test_strong_coder_reconstructs_compressed_side():
    c = build_coder(3, 5)
    for nums in iproduct(range(5), repeat=3):
        g = [U(k, 4) for k in nums]
        back = luk_transform(c, luk_inverse(c, g))
        assert [v.value for v in back] == [Fraction(k, 4) for k in nums]


def test_round_trip_nucleus_on_nondivisible_coder():
    c = build_coder(3, 6)  # 2 does not divide 5
    rng = random.Random(11)
    close = lambda f: luk_inverse(c, luk_transform(c, f))
    for _ in range(20):
        f = FreeVector(LUK, tuple(U(rng.randrange(9), 8) for _ in range(6)))
        cf = close(f)
        assert f.le(cf)
        assert close(cf) == cf
    lo = FreeVector(LUK, (U(0),) * 6)
    hi = FreeVector(LUK, (U(1),) * 6)
    assert close(lo).le(close(hi))


def test_scalar_commutation():
    c = build_coder(3, 5)
    rng = random.Random(5)
    f = FreeVector(LUK, tuple(U(rng.randrange(9), 8) for _ in range(5)))
    g = FreeVector(LUK, tuple(U(rng.randrange(9), 8) for _ in range(3)))
    for s in (U(1, 3), U(3, 4), U(0), U(1)):
        assert luk_transform(c, f.scale(s)) == luk_transform(c, f).scale(s)
        capped = FreeVector(LUK, tuple(LUK.ldiv(s, v) for v in g))
        lifted = luk_inverse(c, g)
        assert luk_inverse(c, capped) == \
            FreeVector(LUK, tuple(LUK.ldiv(s, v) for v in lifted))


def test_exact_denominators_stay_bounded():
    c = build_coder(3, 5)
    f = [U(k, 8) for k in (3, 5, 0, 8, 1)]
    for v in luk_transform(c, f):
        assert 8 % v.value.denominator == 0
    g = [U(1, 4), U(3, 4), U(0)]
    for v in luk_inverse(c, g):
        assert 4 % v.value.denominator == 0
