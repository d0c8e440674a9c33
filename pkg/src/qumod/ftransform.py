"""Direct and inverse fuzzy transforms over sampled partitions.

A partition keeps its basic functions pre-sampled on the node set as
an l x n matrix (rows are nodes, columns are basic functions) plus
the t-norm driving products and residua.  The upward direction
squeezes node data down to one component per basic function and is
literally a module transform on the sampled kernel; the downward
direction runs the residual transform through the transposed kernel,
so the two directions swap the roles of l and n: upward needs n < l,
downward needs l <= n.
"""

from __future__ import annotations

from .errors import InvalidPartition
from .quantale import tnorm_carrier
from .report import LawReport
from .tnorms import TNormKind
from .transforms import FreeVector, Kernel, inverse_apply, transform_apply
from .values import UnitValue

_DIRECTIONS = ("up", "down")


def _as_unit(v) -> UnitValue:
    return v if isinstance(v, UnitValue) else UnitValue.wrap(v)


class FuzzyPartition:
    """Basic functions sampled on nodes: samples[j][i] = A_i(p_j)."""

    __slots__ = ("samples", "nodes", "order", "kind", "q",
                 "_kernel", "_kernel_t")

    def __init__(self, samples, kind: TNormKind):
        rows = tuple(tuple(_as_unit(v) for v in row) for row in samples)
        if not rows:
            raise InvalidPartition("no nodes")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InvalidPartition("ragged sample matrix")
        if width < 2:
            raise InvalidPartition("need at least two basic functions")
        self.samples = rows
        self.nodes = len(rows)
        self.order = width
        self.kind = kind
        self.q = tnorm_carrier(kind)
        # kernels are lazy: each orientation only exists for the
        # shape whose column set embeds into its row set
        self._kernel = None
        self._kernel_t = None

    @property
    def kernel(self) -> Kernel:
        if self._kernel is None:
            self._kernel = Kernel(self.q, self.samples)
        return self._kernel

    @property
    def kernel_t(self) -> Kernel:
        if self._kernel_t is None:
            flipped = tuple(tuple(self.samples[j][i]
                                  for j in range(self.nodes))
                            for i in range(self.order))
            self._kernel_t = Kernel(self.q, flipped)
        return self._kernel_t

    def basic_function(self, i: int):
        return tuple(row[i] for row in self.samples)

    def vector(self, values) -> FreeVector:
        if isinstance(values, FreeVector):
            return values
        return FreeVector(self.q, tuple(_as_unit(v) for v in values))

    def __repr__(self):
        return (f"FuzzyPartition({self.order} functions on "
                f"{self.nodes} nodes, {self.kind})")


def validate_partition(part: FuzzyPartition) -> LawReport:
    """Check covering and density, plus their kernel restatements."""
    report = LawReport()
    bot = part.q.bottom

    bad = next((j for j in range(part.nodes)
                if all(v <= bot for v in part.samples[j])), None)
    report.record("covering: every node sees a positive basic function",
                  None if bad is None else f"node {bad}")

    bad = next((i for i in range(part.order)
                if all(v <= bot for v in part.basic_function(i))), None)
    report.record("density: every basic function is positive at a node",
                  None if bad is None else f"function {bad}")

    # the same two conditions, read off the induced kernel matrix
    bad = next((i for i in range(part.order)
                if all(row[i] <= bot for row in part.samples)), None)
    report.record("kernel columns reach above bottom",
                  None if bad is None else f"column {bad}")
    bad = next((j for j in range(part.nodes)
                if all(v <= bot for v in part.samples[j])), None)
    report.record("kernel rows reach above bottom",
                  None if bad is None else f"row {bad}")
    return report


def _require_valid(part: FuzzyPartition):
    report = validate_partition(part)
    if not report.ok:
        raise InvalidPartition(report.failures[0].line())


def _check_direction(direction: str):
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be one of {_DIRECTIONS}")


def f_transform(part: FuzzyPartition, f, direction: str = "up"
                ) -> FreeVector:
    """Node data to components: joins of products (up) or meets of
    residua (down)."""
    _check_direction(direction)
    _require_valid(part)
    fv = part.vector(f)
    if direction == "up":
        if not part.order < part.nodes:
            raise InvalidPartition(
                f"upward transform needs order < nodes, got "
                f"{part.order} >= {part.nodes}")
        return transform_apply(part.kernel, fv)
    if not part.nodes <= part.order:
        raise InvalidPartition(
            f"downward transform needs nodes <= order, got "
            f"{part.nodes} > {part.order}")
    return inverse_apply(part.kernel_t, fv)


def f_inverse(part: FuzzyPartition, comps, direction: str = "up"
              ) -> FreeVector:
    """Components back to node data, adjoint to f_transform."""
    _check_direction(direction)
    _require_valid(part)
    gv = part.vector(comps)
    if direction == "up":
        if not part.order < part.nodes:
            raise InvalidPartition(
                f"upward transform needs order < nodes, got "
                f"{part.order} >= {part.nodes}")
        return inverse_apply(part.kernel, gv)
    if not part.nodes <= part.order:
        raise InvalidPartition(
            f"downward transform needs nodes <= order, got "
            f"{part.nodes} > {part.order}")
    return transform_apply(part.kernel_t, gv)
