"""Numbers confined to the unit interval, on two backends.

Exact values wrap a fractions.Fraction and compare exactly; Float
values hold a binary double and compare with tolerance 1e-12.  An
operation mixing the two backends yields a Float.  Exact is the
canonical backend: the codec and every finite-algebra path stay on it
so that round trips are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BackendMismatch

FLOAT_EQ_TOL = 1e-12


class UnitValue:
    """A number in [0, 1] tagged with its backend.

    Use the classmethods to build instances: exact(), from_float(),
    parse().  The .value property exposes the raw Fraction or float
    for arithmetic; wrap results back with wrap().
    """

    __slots__ = ("_frac", "_f")

    def __init__(self, frac: Fraction | None, f: float | None):
        self._frac = frac
        self._f = f

    @classmethod
    def exact(cls, numerator, denominator=None) -> "UnitValue":
        if denominator is None:
            frac = numerator if isinstance(numerator, Fraction) else Fraction(numerator)
        else:
            frac = Fraction(numerator, denominator)
        if not 0 <= frac <= 1:
            raise ValueError(f"unit value out of range: {frac}")
        return cls(frac, None)

    @classmethod
    def from_float(cls, x) -> "UnitValue":
        x = float(x)
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"unit value out of range: {x}")
        return cls(None, x)

    @classmethod
    def parse(cls, text: str) -> "UnitValue":
        """Read "a/b" or a decimal literal as an Exact value."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return cls.exact(int(num), int(den))
        return cls.exact(Fraction(text))

    @classmethod
    def wrap(cls, raw) -> "UnitValue":
        """Wrap a raw Fraction/int (Exact) or float result."""
        if isinstance(raw, float):
            return cls.from_float(raw)
        return cls.exact(Fraction(raw))

    @property
    def is_exact(self) -> bool:
        return self._frac is not None

    @property
    def backend(self) -> str:
        return "exact" if self.is_exact else "float"

    @property
    def value(self):
        """The raw Fraction (Exact) or float (Float) behind this value."""
        return self._frac if self._frac is not None else self._f

    @property
    def numerator(self) -> int:
        return self.as_fraction().numerator

    @property
    def denominator(self) -> int:
        return self.as_fraction().denominator

    def as_fraction(self) -> Fraction:
        if self._frac is None:
            raise BackendMismatch("float-backend value has no exact form")
        return self._frac

    def as_float(self) -> float:
        return self._f if self._f is not None else float(self._frac)

    # Comparisons.  Exact pairs compare exactly; once a float is
    # involved the 1e-12 equality tolerance applies, and the order
    # comparisons stay consistent with it.

    def __eq__(self, other):
        if not isinstance(other, UnitValue):
            return NotImplemented
        if self._frac is not None and other._frac is not None:
            return self._frac == other._frac
        return abs(self.as_float() - other.as_float()) <= FLOAT_EQ_TOL

    def __le__(self, other):
        if self._frac is not None and other._frac is not None:
            return self._frac <= other._frac
        return self.as_float() <= other.as_float() + FLOAT_EQ_TOL

    def __lt__(self, other):
        if self._frac is not None and other._frac is not None:
            return self._frac < other._frac
        return self.as_float() < other.as_float() - FLOAT_EQ_TOL

    def __ge__(self, other):
        return other.__le__(self)

    def __gt__(self, other):
        return other.__lt__(self)

    def __hash__(self):
        if self._frac is None:
            raise TypeError("float-backend unit values are not hashable")
        return hash(self._frac)

    def __repr__(self):
        if self._frac is not None:
            return f"UnitValue({self._frac})"
        return f"UnitValue({self._f!r}, float)"

    def __str__(self):
        if self._frac is not None:
            f = self._frac
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        return repr(self._f)


ZERO = UnitValue.exact(0)
ONE = UnitValue.exact(1)
