"""Weighted dilation and erosion on finite rasters.

A grid holds unit-interval samples; a structuring element is a
finite set of integer offsets carrying weights.  Dilation joins
weighted products over the element's support, erosion meets the
corresponding residua, and for every t-norm the two form an adjoint
pair.  Finite rasters force a boundary rule: torus mode wraps
indices, pad mode reads each operation's neutral fill outside the
grid (bottom for dilation and translation, top for erosion), which
is also why translation commutes with the operators only on the
torus.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimMismatch
from .quantale import tnorm_carrier
from .tnorms import TNormKind
from .values import UnitValue

TORUS = "torus"
PAD = "pad"


def _as_unit(v) -> UnitValue:
    return v if isinstance(v, UnitValue) else UnitValue.wrap(v)


class Grid:
    """Raster of unit-interval samples with a boundary mode."""

    __slots__ = ("width", "height", "samples", "boundary")

    def __init__(self, width: int, height: int, samples,
                 boundary: str = TORUS):
        if boundary not in (TORUS, PAD):
            raise ValueError(f"unknown boundary mode {boundary!r}")
        if width < 1 or height < 1:
            raise DimMismatch("grid dimensions must be positive")
        self.width = width
        self.height = height
        self.samples = tuple(_as_unit(v) for v in samples)
        if len(self.samples) != width * height:
            raise DimMismatch(f"expected {width * height} samples, "
                              f"got {len(self.samples)}")
        self.boundary = boundary

    def at(self, row: int, col: int) -> UnitValue:
        return self.samples[row * self.width + col]

    def le(self, other: "Grid") -> bool:
        self._match(other)
        return all(a <= b for a, b in zip(self.samples, other.samples))

    def _match(self, other: "Grid"):
        if (self.width, self.height) != (other.width, other.height):
            raise DimMismatch("grids differ in shape")

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and self.boundary == other.boundary
                and self.samples == other.samples)

    def __hash__(self):
        return hash((self.width, self.height, self.boundary, self.samples))

    def __repr__(self):
        return (f"Grid({self.width}x{self.height}, {self.boundary}, "
                f"{len(self.samples)} samples)")


def constant_grid(width: int, height: int, value,
                  boundary: str = TORUS) -> Grid:
    return Grid(width, height, (_as_unit(value),) * (width * height),
                boundary)


class StructuringElement:
    """Finite offset support with weights; the origin is (0, 0)."""

    __slots__ = ("offsets",)

    def __init__(self, entries):
        seen = {}
        for dr, dc, w in entries:
            key = (int(dr), int(dc))
            if key in seen:
                raise ValueError(f"duplicate offset {key}")
            seen[key] = _as_unit(w)
        if not seen:
            raise ValueError("structuring element needs a non-empty support")
        self.offsets = tuple(sorted(seen.items()))

    @classmethod
    def binary(cls, offsets) -> "StructuringElement":
        return cls((dr, dc, 1) for dr, dc in offsets)

    @property
    def support(self):
        return tuple(off for off, _ in self.offsets)

    def __repr__(self):
        return f"StructuringElement({len(self.offsets)} offsets)"


def _is_float_grid(g: Grid) -> bool:
    return any(not v.is_exact for v in g.samples)


def _fill(g: Grid, top: bool) -> UnitValue:
    raw = 1 if top else 0
    if _is_float_grid(g):
        return UnitValue.from_float(float(raw))
    return UnitValue.exact(raw)


def _read(g: Grid, row: int, col: int, fill: UnitValue) -> UnitValue:
    if g.boundary == TORUS:
        return g.samples[(row % g.height) * g.width + (col % g.width)]
    if 0 <= row < g.height and 0 <= col < g.width:
        return g.samples[row * g.width + col]
    return fill


def translate(g: Grid, offset) -> Grid:
    """Shift content by (rows, cols); pad mode fills with bottom."""
    dr, dc = offset
    fill = _fill(g, top=False)
    out = [_read(g, r - dr, c - dc, fill)
           for r in range(g.height) for c in range(g.width)]
    return Grid(g.width, g.height, out, g.boundary)


def dilate(g: Grid, se: StructuringElement, kind: TNormKind) -> Grid:
    """Join of weighted translates: out(y) joins w(d) * X(y - d)."""
    q = tnorm_carrier(kind)
    fill = _fill(g, top=False)
    out = [q.fold_join(q.mul(w, _read(g, r - dr, c - dc, fill))
                       for (dr, dc), w in se.offsets)
           for r in range(g.height) for c in range(g.width)]
    return Grid(g.width, g.height, out, g.boundary)


def erode(g: Grid, se: StructuringElement, kind: TNormKind) -> Grid:
    """Meet of residua: out(x) meets w(d) -> X(x + d)."""
    q = tnorm_carrier(kind)
    fill = _fill(g, top=True)
    out = [q.fold_meet(q.rdiv(_read(g, r + dr, c + dc, fill), w)
                       for (dr, dc), w in se.offsets)
           for r in range(g.height) for c in range(g.width)]
    return Grid(g.width, g.height, out, g.boundary)


def opening(g: Grid, se: StructuringElement, kind: TNormKind) -> Grid:
    return dilate(erode(g, se, kind), se, kind)


def closing(g: Grid, se: StructuringElement, kind: TNormKind) -> Grid:
    return erode(dilate(g, se, kind), se, kind)


def _trunc_diff(a: UnitValue, b: UnitValue) -> UnitValue:
    if a.is_exact and b.is_exact:
        return UnitValue.exact(max(Fraction(0), a.value - b.value))
    return UnitValue.from_float(max(0.0, a.as_float() - b.as_float()))


def outline(g: Grid, se: StructuringElement, kind: TNormKind) -> Grid:
    """Truncated difference of the image against its erosion."""
    eroded = erode(g, se, kind)
    out = tuple(_trunc_diff(a, b)
                for a, b in zip(g.samples, eroded.samples))
    return Grid(g.width, g.height, out, g.boundary)


_COMPOSITES = {"open": opening, "close": closing, "outline": outline}


def composite(g: Grid, se: StructuringElement, kind: TNormKind,
              op: str) -> Grid:
    if op not in _COMPOSITES:
        raise ValueError(f"op must be one of {sorted(_COMPOSITES)}")
    return _COMPOSITES[op](g, se, kind)
