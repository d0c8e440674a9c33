"""Transforms between free modules Q^X and Q^Y through a kernel matrix.

A kernel p assigns a quantale value to every (x, y) pair.  The direct
transform pushes a vector on X down to Y by joining products against
the kernel; the inverse transform lifts a vector on Y back up to X by
meeting residuals.  The pair is adjoint, the composite inverse-after-
direct is a nucleus, and kernels whose columns embed a scaled identity
(coders, in increasing strength: normal, strong, orthonormal) make the
reconstruction exact on Y.

Works over any carrier exposing the small quantale protocol; elements
are table indices for finite quantales and UnitValues on [0, 1].
"""

from __future__ import annotations

from itertools import product as iproduct

from .errors import (
    DimMismatch,
    IndexMismatch,
    NotAHomomorphism,
    QumodError,
    SizeBound,
    SubsetViolation,
)
from .quantale import FiniteQuantale
from .report import LawReport

_HANDS = ("left", "right")


def _check_hand(handedness: str):
    if handedness not in _HANDS:
        raise ValueError(f"handedness must be one of {_HANDS}")


class FreeVector:
    """A dense quantale-valued function on a finite ordered index set."""

    __slots__ = ("q", "values")

    def __init__(self, q, values):
        self.q = q
        self.values = tuple(values)
        if isinstance(q, FiniteQuantale):
            if any(not 0 <= v < q.size for v in self.values):
                raise IndexMismatch("vector entry outside the quantale carrier")

    @classmethod
    def basis(cls, q, size: int, at: int) -> "FreeVector":
        """The unit indicator of one index, bottom elsewhere."""
        if not 0 <= at < size:
            raise IndexMismatch(f"basis index {at} outside 0..{size - 1}")
        return cls(q, tuple(q.unit if i == at else q.bottom
                            for i in range(size)))

    @classmethod
    def constant(cls, q, size: int, value) -> "FreeVector":
        return cls(q, (value,) * size)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other):
        return (isinstance(other, FreeVector) and self.q is other.q
                and len(self.values) == len(other.values)
                and all(a == b for a, b in zip(self.values, other.values)))

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"FreeVector({list(self.values)!r})"

    def _same_shape(self, other):
        if not isinstance(other, FreeVector) or self.q is not other.q:
            raise IndexMismatch("vectors live over different carriers")
        if len(self.values) != len(other.values):
            raise IndexMismatch("vector lengths differ")

    def join(self, other) -> "FreeVector":
        self._same_shape(other)
        j = self.q.join2
        return FreeVector(self.q, (j(a, b) for a, b in
                                   zip(self.values, other.values)))

    def meet(self, other) -> "FreeVector":
        self._same_shape(other)
        m = self.q.meet2
        return FreeVector(self.q, (m(a, b) for a, b in
                                   zip(self.values, other.values)))

    def scale(self, scalar, handedness: str = "left") -> "FreeVector":
        _check_hand(handedness)
        mul = self.q.mul
        if handedness == "left":
            return FreeVector(self.q, (mul(scalar, v) for v in self.values))
        return FreeVector(self.q, (mul(v, scalar) for v in self.values))

    def le(self, other) -> bool:
        self._same_shape(other)
        le = self.q.le
        return all(le(a, b) for a, b in zip(self.values, other.values))


class Kernel:
    """An |X| x |Y| matrix of quantale values, indexed p[x][y].

    y_of ties column j to an element of X (identity prefix by default);
    only the anatomy operations care about it.
    """

    __slots__ = ("q", "p", "nx", "ny", "y_of")

    def __init__(self, q, rows, *, y_of=None):
        self.q = q
        self.p = tuple(tuple(r) for r in rows)
        self.nx = len(self.p)
        if self.nx == 0:
            raise DimMismatch("kernel needs at least one row")
        self.ny = len(self.p[0])
        if any(len(r) != self.ny for r in self.p):
            raise DimMismatch("kernel rows have unequal lengths")
        if isinstance(q, FiniteQuantale):
            if any(not 0 <= v < q.size for r in self.p for v in r):
                raise IndexMismatch("kernel entry outside the quantale carrier")
        self.y_of = tuple(range(self.ny)) if y_of is None else tuple(y_of)
        if len(self.y_of) != self.ny:
            raise DimMismatch("y_of must name one X index per column")
        if len(set(self.y_of)) != self.ny or any(
                not 0 <= x < self.nx for x in self.y_of):
            raise SubsetViolation("column identification is not a subset of X")

    def __eq__(self, other):
        return (isinstance(other, Kernel) and self.q is other.q
                and self.p == other.p and self.y_of == other.y_of)

    def __hash__(self):
        return hash((self.p, self.y_of))

    def __repr__(self):
        return f"Kernel({self.nx}x{self.ny})"

    def column(self, j):
        return tuple(self.p[x][j] for x in range(self.nx))


def projective_kernel(q, x_size: int, y_ids) -> Kernel:
    """Columns are unit indicators of their own X index."""
    y_ids = tuple(y_ids)
    rows = [[q.unit if x == y else q.bottom for y in y_ids]
            for x in range(x_size)]
    return Kernel(q, rows, y_of=y_ids)


def transform_apply(p: Kernel, f: FreeVector, handedness: str = "left"
                    ) -> FreeVector:
    """Push f down to Y: output(y) joins f(x).p(x,y) over all x."""
    _check_hand(handedness)
    if len(f) != p.nx:
        raise IndexMismatch(f"vector has {len(f)} entries, kernel {p.nx} rows")
    q, mul = p.q, p.q.mul
    fv = f.values
    if handedness == "left":
        out = (q.fold_join(mul(fv[x], p.p[x][y]) for x in range(p.nx))
               for y in range(p.ny))
    else:
        out = (q.fold_join(mul(p.p[x][y], fv[x]) for x in range(p.nx))
               for y in range(p.ny))
    return FreeVector(q, out)


def inverse_apply(p: Kernel, g: FreeVector, handedness: str = "left"
                  ) -> FreeVector:
    """Lift g back to X: output(x) meets the residuals g(y)/p(x,y)."""
    _check_hand(handedness)
    if len(g) != p.ny:
        raise IndexMismatch(f"vector has {len(g)} entries, kernel {p.ny} columns")
    q = p.q
    gv = g.values
    if handedness == "left":
        out = (q.fold_meet(q.rdiv(gv[y], p.p[x][y]) for y in range(p.ny))
               for x in range(p.nx))
    else:
        out = (q.fold_meet(q.ldiv(p.p[x][y], gv[y]) for y in range(p.ny))
               for x in range(p.nx))
    return FreeVector(q, out)


# coder classification ---------------------------------------------------------

def _injective_witness(candidates):
    """Pick distinct X indices, one per column, via augmenting paths."""
    owner = {}

    def assign(y, blocked):
        for x in candidates[y]:
            if x in blocked:
                continue
            blocked.add(x)
            if x not in owner or assign(owner[x], blocked):
                owner[x] = y
                return True
        return False

    for y in range(len(candidates)):
        if not assign(y, set()):
            return None
    eps = [None] * len(candidates)
    for x, y in owner.items():
        eps[y] = x
    return tuple(eps)


class CoderClass:
    __slots__ = ("is_coder", "is_normal", "is_strong", "is_orthogonal",
                 "is_orthonormal", "witness")

    def __init__(self, is_coder, is_normal, is_strong, is_orthogonal,
                 is_orthonormal, witness):
        self.is_coder = is_coder
        self.is_normal = is_normal
        self.is_strong = is_strong
        self.is_orthogonal = is_orthogonal
        self.is_orthonormal = is_orthonormal
        self.witness = witness

    def __repr__(self):
        flags = [n for n in ("coder", "normal", "strong", "orthogonal",
                             "orthonormal") if getattr(self, "is_" + n)]
        return f"CoderClass({'+'.join(flags) or 'none'}, eps={self.witness})"


def classify_coder(p: Kernel) -> CoderClass:
    q, nx, ny = p.q, p.nx, p.ny
    e, bot = q.unit, q.bottom

    coder_cand = [[x for x in range(nx) if q.le(e, p.p[x][y])]
                  for y in range(ny)]
    eps_coder = _injective_witness(coder_cand)

    normal_cand = [[x for x in range(nx) if p.p[x][y] == e]
                   for y in range(ny)]
    eps_normal = _injective_witness(normal_cand)

    def row_isolated(x, y):
        return all(p.p[x][y2] == bot for y2 in range(ny) if y2 != y)

    strong_cand = [[x for x in normal_cand[y] if row_isolated(x, y)]
                   for y in range(ny)]
    eps_strong = _injective_witness(strong_cand)

    orthogonal = all(
        q.mul(p.p[x][y1], p.p[x][y2]) == bot
        for x in range(nx) for y1 in range(ny) for y2 in range(ny) if y1 != y2)
    normal = eps_normal is not None
    orthonormal = orthogonal and normal

    cls = CoderClass(eps_coder is not None, normal, eps_strong is not None,
                     orthogonal, orthonormal,
                     eps_strong or eps_normal or eps_coder)
    # strength ladder; a violation here means the witness search is broken
    if cls.is_orthonormal and not cls.is_strong:
        raise QumodError("orthonormal kernel missed by the strong search")
    if cls.is_strong and not cls.is_normal:
        raise QumodError("strong kernel missed by the normal search")
    if cls.is_normal and not cls.is_coder:
        raise QumodError("normal kernel missed by the coder search")
    return cls


# kernels <-> homomorphisms ----------------------------------------------------

def hom_of_kernel(p: Kernel, handedness: str = "left"):
    _check_hand(handedness)

    def h(f: FreeVector) -> FreeVector:
        return transform_apply(p, f, handedness)

    return h


def kernel_of_hom(h, q, x_size: int, y_size: int, *, scalars=None) -> Kernel:
    """Read the kernel off the basis: p(x, y) = h(basis_x)(y).

    The map is spot-checked for join and action preservation on the
    basis before the kernel is trusted.
    """
    basis = [FreeVector.basis(q, x_size, x) for x in range(x_size)]
    images = [h(chi) for chi in basis]
    for img in images:
        if len(img) != y_size:
            raise NotAHomomorphism("map does not land in the stated codomain")
    bottom_in = FreeVector.constant(q, x_size, q.bottom)
    bottom_out = FreeVector.constant(q, y_size, q.bottom)
    if h(bottom_in) != bottom_out:
        raise NotAHomomorphism("empty join is not preserved")
    for x1 in range(x_size):
        for x2 in range(x_size):
            if h(basis[x1].join(basis[x2])) != images[x1].join(images[x2]):
                raise NotAHomomorphism(
                    f"join of basis vectors {x1} {x2} is not preserved")
    if scalars is None:
        scalars = list(q.elements()) if isinstance(q, FiniteQuantale) else \
            [q.bottom, q.unit]
    for s in scalars:
        for x in range(x_size):
            if h(basis[x].scale(s)) != images[x].scale(s):
                raise NotAHomomorphism(
                    f"scalar action on basis vector {x} is not preserved")
    rows = [[images[x][y] for y in range(y_size)] for x in range(x_size)]
    return Kernel(q, rows)


# support, core, closure -------------------------------------------------------

def _is_projective_column(p: Kernel, j: int) -> bool:
    q, yx = p.q, p.y_of[j]
    return all(p.p[x][j] == (q.unit if x == yx else q.bottom)
               for x in range(p.nx))


def projective_extension(p: Kernel, z_ids) -> Kernel:
    """Extend p to the columns of Z, new columns getting the unit pattern."""
    z_ids = tuple(z_ids)
    if len(set(z_ids)) != len(z_ids) or any(
            not 0 <= z < p.nx for z in z_ids):
        raise SubsetViolation("Z is not a subset of X")
    if not set(p.y_of) <= set(z_ids):
        raise SubsetViolation("Y is not a subset of Z")
    q = p.q
    col_of = {yx: j for j, yx in enumerate(p.y_of)}
    rows = []
    for x in range(p.nx):
        row = []
        for z in z_ids:
            if z in col_of:
                row.append(p.p[x][col_of[z]])
            else:
                row.append(q.unit if x == z else q.bottom)
        rows.append(row)
    return Kernel(q, rows, y_of=z_ids)


def coder_anatomy(p: Kernel, z_ids=None) -> dict:
    """Support, core, closure, and (optionally) the extension to Z."""
    support = tuple(j for j in range(p.ny) if not _is_projective_column(p, j))
    core_y = tuple(p.y_of[j] for j in support)
    core = None
    if support:
        core = Kernel(p.q, [[p.p[x][j] for j in support]
                            for x in range(p.nx)], y_of=core_y)
    out = {
        "support": core_y,
        "core": core,
        "closure": projective_extension(p, range(p.nx)),
        "irreducible": len(support) == p.ny,
    }
    if z_ids is not None:
        out["extension"] = projective_extension(p, z_ids)
    return out


def equivalent_up_to_projections(p1: Kernel, p2: Kernel) -> bool:
    if p1.q is not p2.q or p1.nx != p2.nx:
        raise DimMismatch("kernels live over different X or carriers")
    return projective_extension(p1, range(p1.nx)).p == \
        projective_extension(p2, range(p2.nx)).p


# property harness -------------------------------------------------------------

def all_vectors(q: FiniteQuantale, size: int, *, bound: int = 100_000):
    if not isinstance(q, FiniteQuantale):
        raise SizeBound("exhaustive vectors need a finite carrier; "
                        "pass explicit samples instead")
    if q.size ** size > bound:
        raise SizeBound(f"{q.size}^{size} vectors exceed {bound}")
    return [FreeVector(q, vals)
            for vals in iproduct(range(q.size), repeat=size)]


def adjunction_check(p: Kernel, fs=None, gs=None, *, scalars=None,
                     handedness: str = "left") -> LawReport:
    """Property sweep for one kernel over sampled (or exhaustive) vectors."""
    _check_hand(handedness)
    q = p.q
    if fs is None:
        fs = all_vectors(q, p.nx)
    if gs is None:
        gs = all_vectors(q, p.ny)
    if scalars is None:
        scalars = list(q.elements()) if isinstance(q, FiniteQuantale) else \
            [q.bottom, q.unit]
    H = lambda f: transform_apply(p, f, handedness)
    L = lambda g: inverse_apply(p, g, handedness)
    hf = [H(f) for f in fs]
    lg = [L(g) for g in gs]
    report = LawReport()

    bad = next(((f, g) for f, hph in zip(fs, hf) for g, lpg in zip(gs, lg)
                if hph.le(g) != f.le(lpg)), None)
    report.record("adjunction", None if bad is None else
                  f"f={list(bad[0])} g={list(bad[1])}")

    bad = next(((f1, f2) for f1, h1 in zip(fs, hf) for f2, h2 in zip(fs, hf)
                if H(f1.join(f2)) != h1.join(h2)), None)
    report.record("join preservation", None if bad is None else
                  f"f1={list(bad[0])} f2={list(bad[1])}")

    bad = next(((s, f) for s in scalars for f, h in zip(fs, hf)
                if H(f.scale(s, handedness)) != h.scale(s, handedness)), None)
    report.record("scalar preservation", None if bad is None else
                  f"s={bad[0]} f={list(bad[1])}")

    close = [L(h) for h in hf]
    bad = next((f for f, c in zip(fs, close) if not f.le(c)), None)
    report.record("round trip is extensive", None if bad is None else
                  f"f={list(bad)}")
    bad = next(((f1, f2) for f1, c1 in zip(fs, close)
                for f2, c2 in zip(fs, close)
                if f1.le(f2) and not c1.le(c2)), None)
    report.record("round trip is monotone", None if bad is None else
                  f"f1={list(bad[0])} f2={list(bad[1])}")
    bad = next((f for f, c in zip(fs, close) if L(H(c)) != c), None)
    report.record("round trip is idempotent", None if bad is None else
                  f"f={list(bad)}")
    bad = next(((s, f) for s in scalars for f, c in zip(fs, close)
                if not c.scale(s, handedness).le(L(H(f.scale(s, handedness))))),
               None)
    report.record("round trip is structural", None if bad is None else
                  f"s={bad[0]} f={list(bad[1])}")

    bad = next((g for g, l in zip(gs, lg) if not H(l).le(g)), None)
    report.record("reconstruct then transform stays below", None
                  if bad is None else f"g={list(bad)}")

    if classify_coder(p).is_strong:
        bad = next((g for g, l in zip(gs, lg) if H(l) != g), None)
        report.record("strong kernel reconstructs exactly", None
                      if bad is None else f"g={list(bad)}")
    return report
