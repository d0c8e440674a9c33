"""Quantales: complete lattices with a join-distributing monoid product.

Two carriers are provided.  FiniteQuantale is table-defined over
indices 0..n-1 with residuals derived eagerly (by brute force for
loaded tables, by residuum formulas for t-norm sample grids).
TNormQuantale is the [0, 1] carrier itself, with UnitValue elements.
Both expose the same small operation protocol (join2, meet2, mul,
ldiv, rdiv, le) consumed by the transform and morphology layers.

Residual conventions: ldiv(x, y) is x \\ y, the greatest z with
x . z <= y; rdiv(y, x) is y / x, the greatest z with z . x <= y.
"""

from __future__ import annotations

from itertools import product as iproduct

from . import lattice
from .errors import BackendMismatch, InvalidAlgebra, SizeBound
from .report import LawReport
from .tnorms import (
    TNormKind,
    int_grid_ops,
    requires_float,
    tnorm_apply,
    tnorm_residuum,
)
from .values import UnitValue


class FiniteQuantale:
    """A table-defined quantale over elements 0..size-1.

    Tables are validated once at construction and trusted thereafter;
    the order is derived from the join table, never stored separately.
    """

    def __init__(self, join, prod, unit, bottom, *, labels=None, values=None,
                 residuals=None, validate=True):
        n = len(join)
        self.size = n
        self.join = join
        self.prod = prod
        self.unit = unit
        self.bottom = bottom
        self.labels = labels or [str(i) for i in range(n)]
        self.values = values  # optional UnitValue per element (grid quantales)
        if validate:
            self._validate_base()
        self.leq = lattice.derive_leq(join)
        self.top = lattice.top_of(join, bottom)
        self.commutative = all(
            prod[i][j] == prod[j][i] for i in range(n) for j in range(i + 1, n)
        )
        if residuals is not None:
            self.lres, self.rres = residuals
        else:
            self.lres, self.rres = self._brute_residuals()
        self._meet = None

    def _validate_base(self):
        bad = lattice.sup_lattice_violation(self.join, self.bottom)
        if bad is not None:
            raise InvalidAlgebra(f"Q1 {bad[0]} fails at {self._w(bad[1])}")
        n, prod, join, e = self.size, self.prod, self.join, self.unit
        for i in range(n):
            if prod[e][i] != i or prod[i][e] != i:
                raise InvalidAlgebra(f"Q2 unit law fails at {self._w((i,))}")
        for i in range(n):
            pi = prod[i]
            for j in range(n):
                pij = prod[pi[j]]
                pj = prod[j]
                for k in range(n):
                    if pij[k] != pi[pj[k]]:
                        raise InvalidAlgebra(
                            f"Q2 associativity fails at {self._w((i, j, k))}")
        bot = self.bottom
        for i in range(n):
            if prod[i][bot] != bot or prod[bot][i] != bot:
                raise InvalidAlgebra(f"Q3 annihilation fails at {self._w((i,))}")
        for i in range(n):
            pi = prod[i]
            for j in range(n):
                jj = join[j]
                pijr = join[pi[j]]
                for k in range(n):
                    if pi[jj[k]] != pijr[pi[k]]:
                        raise InvalidAlgebra(
                            f"Q3 left distributivity fails at {self._w((i, j, k))}")
        for j in range(n):
            jj = join[j]
            for k in range(n):
                jk = jj[k]
                for i in range(n):
                    if prod[jk][i] != join[prod[j][i]][prod[k][i]]:
                        raise InvalidAlgebra(
                            f"Q3 right distributivity fails at {self._w((j, k, i))}")

    def _brute_residuals(self):
        n, prod, join, leq, bot = self.size, self.prod, self.join, self.leq, self.bottom
        lres = []
        for x in range(n):
            px = prod[x]
            row = []
            for y in range(n):
                acc = bot
                for z in range(n):
                    if leq[px[z]][y]:
                        acc = join[acc][z]
                row.append(acc)
            lres.append(row)
        rres = []
        for y in range(n):
            row = []
            for x in range(n):
                acc = bot
                for z in range(n):
                    if leq[prod[z][x]][y]:
                        acc = join[acc][z]
                row.append(acc)
            rres.append(row)
        return lres, rres

    def _w(self, idxs):
        return " ".join(self.labels[i] for i in idxs)

    @property
    def meet(self):
        if self._meet is None:
            n, leq = self.size, self.leq
            chain = all(leq[i][j] or leq[j][i] for i in range(n) for j in range(i + 1, n))
            if chain:
                self._meet = [[i if leq[i][j] else j for j in range(n)] for i in range(n)]
            else:
                self._meet = lattice.meet_table(self.join, leq, self.bottom)
        return self._meet

    # protocol over element indices
    def elements(self):
        return range(self.size)

    def join2(self, a, b):
        return self.join[a][b]

    def meet2(self, a, b):
        return self.meet[a][b]

    def mul(self, a, b):
        return self.prod[a][b]

    def ldiv(self, x, y):
        """x \\ y: greatest z with x . z <= y."""
        return self.lres[x][y]

    def rdiv(self, y, x):
        """y / x: greatest z with z . x <= y."""
        return self.rres[y][x]

    def le(self, a, b):
        return bool(self.leq[a][b])

    def fold_join(self, items):
        return lattice.fold_join(self.join, items, self.bottom)

    def fold_meet(self, items):
        acc = self.top
        meet = self.meet
        for x in items:
            acc = meet[acc][x]
        return acc


def finite_residuals(join, prod, unit, bottom, *, labels=None) -> FiniteQuantale:
    """Validate Q1-Q3 and fill both residual tables by exhaustion."""
    return FiniteQuantale(join, prod, unit, bottom, labels=labels, validate=True)


class TNormQuantale:
    """The [0, 1] quantale of a t-norm, with UnitValue elements."""

    def __init__(self, kind: TNormKind):
        self.kind = kind
        self.float_backend = requires_float(kind)
        mk = UnitValue.from_float if self.float_backend else UnitValue.exact
        self.bottom = mk(0)
        self.top = mk(1)
        self.unit = self.top
        self.commutative = True

    def join2(self, a: UnitValue, b: UnitValue) -> UnitValue:
        return b if a <= b else a

    def meet2(self, a: UnitValue, b: UnitValue) -> UnitValue:
        return a if a <= b else b

    def mul(self, a, b):
        return tnorm_apply(self.kind, a, b)

    def ldiv(self, x, y):
        return tnorm_residuum(self.kind, x, y)

    def rdiv(self, y, x):
        return tnorm_residuum(self.kind, x, y)

    def le(self, a, b):
        return a <= b

    def fold_join(self, items):
        acc = self.bottom
        for x in items:
            if acc <= x:
                acc = x
        return acc

    def fold_meet(self, items):
        acc = self.top
        for x in items:
            if x <= acc:
                acc = x
        return acc

    def grid(self, den: int):
        mk = UnitValue.from_float if self.float_backend else UnitValue.exact
        if self.float_backend:
            return [mk(k / den) for k in range(den + 1)]
        return [mk(k, den) for k in range(den + 1)]

    def __repr__(self):
        return f"TNormQuantale({self.kind})"


_carriers: dict = {}


def tnorm_carrier(kind: TNormKind) -> TNormQuantale:
    """One shared instance per kind; vector equality and kernel
    compatibility check carrier identity, so callers must not build
    their own."""
    if kind not in _carriers:
        _carriers[kind] = TNormQuantale(kind)
    return _carriers[kind]


def grid_quantale(kind: TNormKind, den: int) -> FiniteQuantale:
    """The t-norm quantale sampled on the grid {0, 1/den, ..., 1}.

    Residual tables come from the residuum formulas; the law checker
    re-derives the adjunction exhaustively, so formula and table errors
    cannot hide each other.  Rational-closed kinds only.
    """
    tn, res = int_grid_ops(kind, den)
    n = den + 1
    rng = range(n)
    join = [[j if i <= j else i for j in rng] for i in rng]
    prod = [[tn(i, j) for j in rng] for i in rng]
    lres = [[res(i, j) for j in rng] for i in rng]
    rres = [[lres[x][y] for x in rng] for y in rng]  # commutative: y/x = x\y
    labels = [f"{k}/{den}" for k in rng]
    values = [UnitValue.exact(k, den) for k in rng]
    return FiniteQuantale(join, prod, n - 1, 0, labels=labels, values=values,
                          residuals=(lres, rres), validate=False)


def lukasiewicz_chain(k: int) -> FiniteQuantale:
    """The k-element Lukasiewicz chain {0, 1/(k-1), ..., 1}."""
    if k < 2:
        raise ValueError("chain needs at least two elements")
    from .tnorms import LUKASIEWICZ

    return grid_quantale(LUKASIEWICZ, k - 1)


class FiniteMonoid:
    def __init__(self, table, unit, *, labels=None):
        n = len(table)
        self.size = n
        self.table = table
        self.unit = unit
        self.labels = labels or [str(i) for i in range(n)]
        for i in range(n):
            if table[unit][i] != i or table[i][unit] != i:
                raise InvalidAlgebra(f"monoid unit law fails at {self.labels[i]}")
        for i in range(n):
            for j in range(n):
                tij = table[i][j]
                for k in range(n):
                    if table[tij][k] != table[i][table[j][k]]:
                        raise InvalidAlgebra(
                            "monoid associativity fails at "
                            f"{self.labels[i]} {self.labels[j]} {self.labels[k]}")


def powerset_quantale(m: FiniteMonoid, *, max_elements: int = 4) -> FiniteQuantale:
    """Subsets of a monoid under union and complex multiplication.

    Carriers are bitmasks over the monoid elements; the unit is {e},
    the bottom the empty set, and A . 0 = 0 by convention (joins over
    an empty family).
    """
    if m.size > max_elements:
        raise SizeBound(f"2^{m.size} subsets exceed the configured bound")
    n = 1 << m.size
    masks = range(n)
    join = [[a | b for b in masks] for a in masks]
    prod = []
    for a in masks:
        row = []
        abits = [i for i in range(m.size) if a >> i & 1]
        for b in masks:
            acc = 0
            for i in abits:
                ti = m.table[i]
                for j in range(m.size):
                    if b >> j & 1:
                        acc |= 1 << ti[j]
            row.append(acc)
        prod.append(row)

    def label(mask):
        inside = [m.labels[i] for i in range(m.size) if mask >> i & 1]
        return "{" + ",".join(inside) + "}"

    labels = [label(a) for a in masks]
    return FiniteQuantale(join, prod, 1 << m.unit, 0, labels=labels)


# law suite -----------------------------------------------------------------

def check_quantale_laws(q, *, grid_den: int = 100, float_den: int = 16,
                        subset_bound: int = 10) -> LawReport:
    """Q1-Q3, the residual adjunction, and the residuation arithmetic.

    Finite quantales are checked exhaustively on their tables.  T-norm
    quantales with an exact kind are materialized on the grid of the
    given denominator and checked the same way; float-only kinds are
    sampled and checked with tolerances (1e-12 equality, 1e-9 order).
    """
    if isinstance(q, TNormQuantale):
        if q.float_backend:
            return _check_float_grid(q, float_den)
        q = grid_quantale(q.kind, grid_den)
    return _check_finite(q, subset_bound)


def _check_finite(q: FiniteQuantale, subset_bound: int) -> LawReport:
    rep = LawReport()
    n = q.size
    rng = range(n)
    join, prod, leq = q.join, q.prod, q.leq
    lres, rres = q.lres, q.rres
    bot, e, top = q.bottom, q.unit, q.top
    w = q._w

    def first_idem():
        for i in rng:
            if join[i][i] != i:
                return (i,)

    def first_neutral():
        for i in rng:
            if join[bot][i] != i or join[i][bot] != i:
                return (i,)

    def first_comm():
        for i in rng:
            ji = join[i]
            for j in range(i + 1, n):
                if ji[j] != join[j][i]:
                    return (i, j)

    def first_assoc(tbl):
        for i in rng:
            ti = tbl[i]
            for j in rng:
                tij = tbl[ti[j]]
                tj = tbl[j]
                for k in rng:
                    if tij[k] != ti[tj[k]]:
                        return (i, j, k)

    rep.record("Q1 join-idempotence", _fmt(first_idem(), w))
    rep.record("Q1 bottom-neutral", _fmt(first_neutral(), w))
    rep.record("Q1 join-commutativity", _fmt(first_comm(), w))
    rep.record("Q1 join-associativity", _fmt(first_assoc(join), w))

    def first_unit():
        for i in rng:
            if prod[e][i] != i or prod[i][e] != i:
                return (i,)

    rep.record("Q2 unit laws", _fmt(first_unit(), w))
    rep.record("Q2 product-associativity", _fmt(first_assoc(prod), w))

    def first_annihilation():
        for i in rng:
            if prod[i][bot] != bot or prod[bot][i] != bot:
                return (i,)

    rep.record("Q3 empty-join annihilation", _fmt(first_annihilation(), w))

    def first_ldist():
        for x in rng:
            px = prod[x]
            for y in rng:
                jy = join[y]
                jpxy = join[px[y]]
                for z in rng:
                    if px[jy[z]] != jpxy[px[z]]:
                        return (x, y, z)

    def first_rdist():
        for y in rng:
            jy = join[y]
            py = prod[y]
            for z in rng:
                jyz = jy[z]
                pjyz = prod[jyz]
                pz = prod[z]
                for x in rng:
                    if pjyz[x] != join[py[x]][pz[x]]:
                        return (y, z, x)

    rep.record("Q3 left-distributivity", _fmt(first_ldist(), w))

    # With a symmetric product table the right-hand laws are pointwise
    # the same statements as the left-hand ones; certify the symmetry
    # itself and skip the duplicate sweeps.
    sym = q.commutative and all(rres[y][x] == lres[x][y] for x in rng for y in rng)

    if sym:
        rep.record("Q3 right-distributivity")
    else:
        rep.record("Q3 right-distributivity", _fmt(first_rdist(), w))

    if n <= subset_bound:
        def first_subset_dist():
            from itertools import combinations

            elems = list(rng)
            for size in range(len(elems) + 1):
                for sub in combinations(elems, size):
                    jv = q.fold_join(sub)
                    for x in rng:
                        if prod[x][jv] != q.fold_join(prod[x][s] for s in sub):
                            return f"x={q.labels[x]} S={{{','.join(q.labels[s] for s in sub)}}}"
                        if prod[jv][x] != q.fold_join(prod[s][x] for s in sub):
                            return f"S={{{','.join(q.labels[s] for s in sub)}}} x={q.labels[x]}"

        rep.record("Q3 all-subsets distributivity", first_subset_dist())

    def first_ladj():
        for x in rng:
            px = prod[x]
            lx = lres[x]
            for z in rng:
                pxz = px[z]
                lp = leq[pxz]
                lz = leq[z]
                for y in rng:
                    if lp[y] != lz[lx[y]]:
                        return (x, z, y)

    rep.record("residual adjunction (left)", _fmt(first_ladj(), w))

    def first_radj():
        for z in rng:
            lz = leq[z]
            for x in rng:
                p = prod[z][x]
                lp = leq[p]
                for y in rng:
                    if lp[y] != lz[rres[y][x]]:
                        return (z, x, y)

    if sym:
        rep.record("residual adjunction (right)")
    else:
        rep.record("residual adjunction (right)", _fmt(first_radj(), w))

    def first_resarith_i():
        for x in rng:
            if prod[x][bot] != bot or prod[bot][x] != bot:
                return (x,)

    rep.record("residual arithmetic: bottom annihilates", _fmt(first_resarith_i(), w))

    def first_resarith_ii():
        for x in rng:
            lx = leq[x]
            px = prod[x]
            for y in rng:
                if not lx[y]:
                    continue
                py = prod[y]
                for z in rng:
                    if not leq[px[z]][py[z]]:
                        return (x, y, z)
                    if not sym and not leq[prod[z][x]][prod[z][y]]:
                        return (x, y, z)

    rep.record("residual arithmetic: product isotone", _fmt(first_resarith_ii(), w))

    def first_resarith_iii():
        for x in rng:
            lx = leq[x]
            for y in rng:
                if not lx[y]:
                    continue
                ry = rres[y]
                rx = rres[x]
                for z in rng:
                    if not leq[rx[z]][ry[z]]:  # x/z <= y/z
                        return (x, y, z)
                    if not leq[lres[z][x]][lres[z][y]]:  # z\x <= z\y
                        return (x, y, z)
                    if not leq[rres[z][y]][rres[z][x]]:  # z/y <= z/x
                        return (x, y, z)
                    if not leq[lres[y][z]][lres[x][z]]:  # y\z <= x\z
                        return (x, y, z)

    rep.record("residual arithmetic: residuals monotone", _fmt(first_resarith_iii(), w))

    def first_resarith_iv():
        for x in rng:
            for y in rng:
                if not leq[prod[rres[y][x]][x]][y]:
                    return (x, y)
                if not leq[prod[x][lres[x][y]]][y]:
                    return (x, y)

    rep.record("residual arithmetic: residual bounds", _fmt(first_resarith_iv(), w))

    def first_resarith_v():
        for x in rng:
            if rres[x][e] != x or lres[e][x] != x:
                return (x,)

    rep.record("residual arithmetic: unit residuals", _fmt(first_resarith_v(), w))

    meet = q.meet

    def first_resarith_vi():
        for x in rng:
            rx = rres[x]
            if rx[bot] != top or lres[bot][x] != top:
                return (x, bot, bot)
            for y in rng:
                jy = join[y]
                rxy = rx[y]
                for z in rng:
                    if rx[jy[z]] != meet[rxy][rx[z]]:
                        return (x, y, z)
                    if not sym and lres[jy[z]][x] != meet[lres[y][x]][lres[z][x]]:
                        return (x, y, z)

    rep.record("residual arithmetic: denominator joins become meets",
               _fmt(first_resarith_vi(), w))

    def first_resarith_vii():
        for x in rng:
            lx = lres[x]
            for y in rng:
                my = meet[y]
                ryx = rres[y][x]
                lxy = lx[y]
                for z in rng:
                    if rres[my[z]][x] != meet[ryx][rres[z][x]]:
                        return (y, z, x)
                    if not sym and lx[my[z]] != meet[lxy][lx[z]]:
                        return (x, y, z)

    rep.record("residual arithmetic: numerator meets preserved",
               _fmt(first_resarith_vii(), w))

    def first_resarith_viii():
        for x in rng:
            px = prod[x]
            lx = lres[x]
            for y in rng:
                ly = lres[y]
                pxy = px[y]
                lpxy = lres[pxy]
                for z in rng:
                    if ly[lx[z]] != lpxy[z]:
                        return (x, y, z)
                    if not sym and rres[rres[z][y]][x] != rres[z][pxy]:
                        return (x, y, z)

    rep.record("residual arithmetic: residual currying", _fmt(first_resarith_viii(), w))
    return rep


def _fmt(witness, w):
    if witness is None:
        return None
    if isinstance(witness, str):
        return witness
    return w(witness)


_LE_TOL = 1e-9


def _check_float_grid(q: TNormQuantale, den: int) -> LawReport:
    """Sampled law checks for float-only kinds, with tolerances."""
    rep = LawReport()
    kind = q.kind
    pts = [k / den for k in range(den + 1)]

    def t(a, b):
        return tnorm_apply(kind, UnitValue.from_float(a), UnitValue.from_float(b)).as_float()

    def r(a, b):
        return tnorm_residuum(kind, UnitValue.from_float(a), UnitValue.from_float(b)).as_float()

    def eq(a, b):
        return abs(a - b) <= 1e-12

    def le(a, b):
        return a <= b + _LE_TOL

    def first(pred, arity):
        for tup in iproduct(pts, repeat=arity):
            if not pred(*tup):
                return " ".join(f"{v:g}" for v in tup)

    rep.record("Q2 unit laws", first(lambda x: eq(t(x, 1.0), x) and eq(t(1.0, x), x), 1))
    rep.record("Q2 product-associativity",
               first(lambda x, y, z: eq(t(t(x, y), z), t(x, t(y, z))), 3))
    rep.record("Q2 commutativity", first(lambda x, y: eq(t(x, y), t(y, x)), 2))
    rep.record("Q3 left-distributivity",
               first(lambda x, y, z: eq(t(x, max(y, z)), max(t(x, y), t(x, z))), 3))
    rep.record("Q3 empty-join annihilation", first(lambda x: eq(t(x, 0.0), 0.0), 1))
    def adjoint_ok(x, y, z):
        # both directions of z.x <= y  <=>  z <= r(x, y), each one-sided
        if z <= r(x, y) - _LE_TOL and not le(t(z, x), y):
            return False
        if t(z, x) <= y - _LE_TOL and not le(z, r(x, y)):
            return False
        return True

    rep.record("residual adjunction", first(adjoint_ok, 3))
    rep.record("residual arithmetic: residual bounds", first(lambda x, y: le(t(r(x, y), x), y), 2))
    rep.record("residual arithmetic: unit residuals", first(lambda x: eq(r(1.0, x), x), 1))
    rep.record("residual arithmetic: product isotone",
               first(lambda x, y, z: le(t(x, z), t(y, z)) if x <= y else True, 3))
    return rep
