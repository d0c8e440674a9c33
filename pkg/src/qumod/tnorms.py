"""The five supported t-norms on [0, 1] and their residua.

Each kind is a commutative, associative, monotone product with unit 1.
The residuum x -> y is the greatest z with z * x <= y.  Godel,
Lukasiewicz and the nilpotent minimum are rational-closed and run on
either backend; the product and generalized-Lukasiewicz families
produce irrational values and are restricted to the float backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BackendMismatch
from .values import UnitValue


@dataclass(frozen=True)
class TNormKind:
    name: str
    p: int | None = None

    def __str__(self):
        return self.name if self.p is None else f"{self.name}({self.p})"


GODEL = TNormKind("godel")
PRODUCT = TNormKind("product")
LUKASIEWICZ = TNormKind("lukasiewicz")
NILPOTENT_MINIMUM = TNormKind("nilpotent-minimum")


def generalized_lukasiewicz(p) -> TNormKind:
    if not isinstance(p, (int, float)) or p < 1:
        raise ValueError("exponent must be a real number >= 1")
    return TNormKind("generalized-lukasiewicz", p)


_FLOAT_ONLY = ("product", "generalized-lukasiewicz")


def requires_float(kind: TNormKind) -> bool:
    return kind.name in _FLOAT_ONLY


def _raws(kind, x: UnitValue, y: UnitValue):
    if kind.name in _FLOAT_ONLY and (x.is_exact or y.is_exact):
        raise BackendMismatch(f"{kind} is only available on the float backend")
    return x.value, y.value


def _wrap(x: UnitValue, y: UnitValue, raw) -> UnitValue:
    if x.is_exact and y.is_exact:
        return UnitValue.exact(Fraction(raw))
    return UnitValue.from_float(float(raw))


def tnorm_apply(kind: TNormKind, x: UnitValue, y: UnitValue) -> UnitValue:
    a, b = _raws(kind, x, y)
    name = kind.name
    if name == "godel":
        raw = min(a, b)
    elif name == "lukasiewicz":
        raw = max(0, a + b - 1)
    elif name == "nilpotent-minimum":
        raw = min(a, b) if a + b > 1 else 0
    elif name == "product":
        raw = a * b
    else:
        p = kind.p
        raw = max(0.0, a**p + b**p - 1.0) ** (1.0 / p)
    return _wrap(x, y, raw)


def tnorm_residuum(kind: TNormKind, x: UnitValue, y: UnitValue) -> UnitValue:
    """Greatest z with z * x <= y."""
    a, b = _raws(kind, x, y)
    name = kind.name
    if name == "godel":
        raw = 1 if a <= b else b
    elif name == "lukasiewicz":
        raw = min(1, 1 - a + b)
    elif name == "nilpotent-minimum":
        raw = 1 if a <= b else max(1 - a, b)
    elif name == "product":
        raw = 1.0 if a <= b else b / a
    else:
        p = kind.p
        raw = min(1.0, (1.0 - a**p + b**p) ** (1.0 / p))
    return _wrap(x, y, raw)


def int_grid_ops(kind: TNormKind, den: int):
    """Product and residuum acting on numerators over a fixed denominator.

    Only the rational-closed kinds qualify.  The returned pair of
    callables maps (a, b) in {0..den}^2 to numerators of the same grid;
    closure under these operations is what makes exhaustive grid law
    checks exact.
    """
    name = kind.name
    if name == "godel":
        return min, (lambda a, b, d=den: d if a <= b else b)
    if name == "lukasiewicz":
        return (lambda a, b, d=den: max(0, a + b - d)), (lambda a, b, d=den: min(d, d - a + b))
    if name == "nilpotent-minimum":
        return (
            lambda a, b, d=den: min(a, b) if a + b > d else 0,
            lambda a, b, d=den: d if a <= b else max(d - a, b),
        )
    raise BackendMismatch(f"{kind} has no exact grid form")


_BY_NAME = {
    "godel": GODEL,
    "product": PRODUCT,
    "lukasiewicz": LUKASIEWICZ,
    "nilpotent-minimum": NILPOTENT_MINIMUM,
    "nilpotent": NILPOTENT_MINIMUM,
}


def parse_tnorm(name: str) -> TNormKind:
    key = name.strip().lower()
    if key in _BY_NAME:
        return _BY_NAME[key]
    for prefix in ("generalized-lukasiewicz", "genluk"):
        if key.startswith(prefix):
            tail = key[len(prefix):].lstrip("-:(").rstrip(")")
            try:
                p = int(tail)
            except ValueError:
                try:
                    p = float(tail)
                except ValueError:
                    break
            return generalized_lukasiewicz(p)
    raise ValueError(f"unknown t-norm: {name!r}")
