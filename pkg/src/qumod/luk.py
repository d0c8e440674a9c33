"""The triangular partition basis on [0,1] and its discrete transform.

Order n places nodes at k/(n-1); the k-th basis map is the unit hat
peaking at its node and vanishing at the neighbours.  Sampling the
basis on the grid I_m gives an m x n kernel whose transform pair
compresses length-m vectors to length n.  The kernel is always
orthogonal; its reconstruction is exact on the compressed side exactly
when (n-1) divides (m-1), i.e. when every node lands on a grid point.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IndexOut
from .quantale import tnorm_carrier
from .report import LawReport
from .tnorms import LUKASIEWICZ
from .transforms import FreeVector, Kernel, classify_coder, inverse_apply, \
    transform_apply
from .values import UnitValue

# shared carrier: FreeVector equality requires one quantale object
LUK = tnorm_carrier(LUKASIEWICZ)


def _as_unit(x) -> UnitValue:
    if isinstance(x, UnitValue):
        return x
    if isinstance(x, float):
        return UnitValue.from_float(x)
    return UnitValue.exact(Fraction(x))


def basis_value(n: int, k: int, x) -> UnitValue:
    """Height of hat k of order n at x: 1 at the node, sloping to 0."""
    if n < 2:
        raise ValueError("order must be at least 2")
    if not 0 <= k < n:
        raise IndexOut(f"basis index {k} outside 0..{n - 1}")
    ux = _as_unit(x)
    v = ux.value  # Fraction or float
    dist = abs((n - 1) * v - k)
    raw = max(0, 1 - dist) if ux.is_exact else max(0.0, 1.0 - dist)
    return UnitValue.wrap(raw)


def _hat_num(n: int, k: int, j: int, den: int) -> int:
    """Numerator of hat k at j/den over the common denominator den."""
    return max(0, den - abs((n - 1) * j - k * den))


def partition_check(n: int, denominators) -> LawReport:
    """Exact grid sweeps: hats sum to one, distinct hats annihilate."""
    report = LawReport()
    for den in denominators:
        bad = next((j for j in range(den + 1)
                    if sum(_hat_num(n, k, j, den) for k in range(n)) != den),
                   None)
        report.record(f"hats sum to one (denominator {den})",
                      None if bad is None else f"x={bad}/{den}")
        bad = None
        for j in range(den + 1):
            nums = [_hat_num(n, k, j, den) for k in range(n)]
            hit = next(((k, h) for k in range(n) for h in range(k + 1, n)
                        if nums[k] + nums[h] > den), None)
            if hit is not None:
                bad = f"x={j}/{den} hats {hit[0]},{hit[1]}"
                break
        report.record(f"distinct hats multiply to zero (denominator {den})",
                      bad)
    return report


class LukCoder:
    """The order-n basis sampled on the grid I_m, as a kernel."""

    __slots__ = ("n", "m", "kernel", "classification")

    def __init__(self, n: int, m: int):
        if n < 2 or m <= n:
            raise ValueError("need order >= 2 and grid size > order")
        self.n = n
        self.m = m
        rows = [[basis_value(n, k, Fraction(x, m - 1)) for k in range(n)]
                for x in range(m)]
        self.kernel = Kernel(LUK, rows)
        self.classification = classify_coder(self.kernel)

    def __repr__(self):
        return f"LukCoder(n={self.n}, m={self.m})"


def build_coder(n: int, m: int) -> LukCoder:
    return LukCoder(n, m)


def _vector(values) -> FreeVector:
    if isinstance(values, FreeVector):
        return values
    return FreeVector(LUK, tuple(_as_unit(v) for v in values))


def luk_transform(c: LukCoder, f) -> FreeVector:
    return transform_apply(c.kernel, _vector(f))


def luk_inverse(c: LukCoder, g) -> FreeVector:
    return inverse_apply(c.kernel, _vector(g))
