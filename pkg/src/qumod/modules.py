"""Modules over finite quantales: a sup-lattice with a scalar action.

A FiniteModule is a join table plus an action table act[q][m].  The
two residuals derived from the action are

    under(q, m) = join of {n in M | q * n <= m}   (an element of M)
    over(m, n)  = join of {q in Q | q * n <= m}   (an element of Q)

over() takes the bound first: over(m, n) is the largest scalar that
keeps n below m.  Everything downstream (ideals, congruences, nuclei,
quotients) is built from these two tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from . import lattice
from .errors import InvalidAlgebra, NotAHomomorphism, QumodError, SizeBound
from .quantale import FiniteQuantale
from .report import LawReport


class FiniteModule:
    def __init__(self, q: FiniteQuantale, join, bottom, act, *, labels=None,
                 validate=True):
        self.q = q
        n = len(join)
        self.size = n
        self.join = join
        self.bottom = bottom
        self.act = act
        self.labels = labels or [str(i) for i in range(n)]
        bad = lattice.sup_lattice_violation(join, bottom)
        if bad is not None:
            raise InvalidAlgebra(f"carrier {bad[0]} fails at {bad[1]}")
        if len(act) != q.size or any(len(row) != n for row in act):
            raise InvalidAlgebra("action table shape does not match Q x M")
        self.leq = lattice.derive_leq(join)
        self.top = lattice.top_of(join, bottom)
        self._meet = None
        self._under = None
        self._over = None
        if validate:
            w = self._witness
            viol = _module_axiom_violation(self)
            if viol is not None:
                raise InvalidAlgebra(f"{viol[0]} fails at {w(viol[1], viol[2])}")

    def _witness(self, qidx, midx):
        qs = " ".join(self.q.labels[i] for i in qidx)
        ms = " ".join(self.labels[i] for i in midx)
        return (qs + " | " + ms).strip(" |")

    @property
    def meet(self):
        if self._meet is None:
            self._meet = lattice.meet_table(self.join, self.leq, self.bottom)
        return self._meet

    @property
    def under(self):
        """under[q][m] = largest n with q * n <= m."""
        if self._under is None:
            nq, nm = self.q.size, self.size
            leq, join, act = self.leq, self.join, self.act
            tab = []
            for qi in range(nq):
                arow = act[qi]
                row = []
                for m in range(nm):
                    acc = self.bottom
                    for x in range(nm):
                        if leq[arow[x]][m]:
                            acc = join[acc][x]
                    row.append(acc)
                tab.append(row)
            self._under = tab
        return self._under

    @property
    def over(self):
        """over[m][n] = largest q with q * n <= m."""
        if self._over is None:
            nq, nm = self.q.size, self.size
            leq, act = self.leq, self.act
            qjoin, qbot = self.q.join, self.q.bottom
            tab = []
            for m in range(nm):
                row = []
                for x in range(nm):
                    acc = qbot
                    for qi in range(nq):
                        if leq[act[qi][x]][m]:
                            acc = qjoin[acc][qi]
                    row.append(acc)
                tab.append(row)
            self._over = tab
        return self._over

    def le(self, a, b):
        return bool(self.leq[a][b])

    def join2(self, a, b):
        return self.join[a][b]

    def meet2(self, a, b):
        return self.meet[a][b]

    def star(self, qi, m):
        return self.act[qi][m]

    def fold_join(self, items):
        return lattice.fold_join(self.join, items, self.bottom)

    def fold_meet(self, items):
        acc = self.top
        meet = self.meet
        for x in items:
            acc = meet[acc][x]
        return acc


def self_module(q: FiniteQuantale) -> FiniteModule:
    """Q acting on itself by its own product."""
    return FiniteModule(q, q.join, q.bottom, [row[:] for row in q.prod],
                        labels=list(q.labels), validate=False)


def function_module(q: FiniteQuantale, points: int, *,
                    max_size: int = 4096) -> FiniteModule:
    """All functions {0..points-1} -> Q with pointwise join and action.

    The carrier is materialized (|Q|^points tuples), so this is a lab
    construction; vectors and index_of allow moving between tuple and
    index views.
    """
    if points < 1:
        raise ValueError("need at least one point")
    size = q.size ** points
    if size > max_size:
        raise SizeBound(f"{q.size}^{points} functions exceed {max_size}")
    vectors = list(iproduct(range(q.size), repeat=points))
    index_of = {v: i for i, v in enumerate(vectors)}
    qjoin = q.join
    join = [[index_of[tuple(qjoin[a][b] for a, b in zip(u, v))] for v in vectors]
            for u in vectors]
    qprod = q.prod
    act = [[index_of[tuple(qprod[qi][a] for a in u)] for u in vectors]
           for qi in range(q.size)]
    labels = ["(" + ",".join(q.labels[a] for a in u) + ")" for u in vectors]
    m = FiniteModule(q, join, index_of[(q.bottom,) * points], act,
                     labels=labels, validate=False)
    m.vectors = vectors
    m.index_of = index_of
    return m


def _module_axiom_violation(m: FiniteModule):
    """First M1/M2/M3 failure as (law, q-indices, m-indices), or None."""
    q = m.q
    act, join, qprod, qjoin = m.act, m.join, q.prod, q.join
    nq, nm = q.size, m.size
    for q1 in range(nq):
        a1 = act[q1]
        for q2 in range(nq):
            a12 = act[qprod[q1][q2]]
            a2 = act[q2]
            for x in range(nm):
                if a12[x] != a1[a2[x]]:
                    return ("M1 action associativity", (q1, q2), (x,))
    for qi in range(nq):
        arow = act[qi]
        if arow[m.bottom] != m.bottom:
            return ("M2 empty join (left)", (qi,), (m.bottom,))
        for x in range(nm):
            jx = join[x]
            ax = arow[x]
            for y in range(nm):
                if arow[jx[y]] != join[ax][arow[y]]:
                    return ("M2 join distribution in M", (qi,), (x, y))
    for x in range(nm):
        if act[q.bottom][x] != m.bottom:
            return ("M2 empty join (right)", (q.bottom,), (x,))
        for q1 in range(nq):
            a1x = act[q1][x]
            for q2 in range(nq):
                if act[qjoin[q1][q2]][x] != join[a1x][act[q2][x]]:
                    return ("M2 join distribution in Q", (q1, q2), (x,))
    for x in range(nm):
        if act[q.unit][x] != x:
            return ("M3 unit action", (q.unit,), (x,))
    return None


def module_residuals(m: FiniteModule):
    """Both residual tables, (under, over), computed by exhaustion."""
    return m.under, m.over


def check_module_laws(m: FiniteModule) -> LawReport:
    """M1-M3 plus the residuation arithmetic of the action."""
    rep = LawReport()
    w = m._witness

    bad = lattice.sup_lattice_violation(m.join, m.bottom)
    rep.record("carrier sup-lattice laws",
               None if bad is None else f"{bad[0]} at {bad[1]}")

    viol = _module_axiom_violation(m)
    if viol is None:
        for law in ("M1 action associativity", "M2 join distribution in M",
                    "M2 join distribution in Q", "M3 unit action"):
            rep.record(law)
    else:
        rep.record(viol[0], w(viol[1], viol[2]))
        return rep

    q = m.q
    act, join, meet = m.act, m.join, m.meet
    under, over = m.under, m.over
    leq, qleq = m.leq, q.leq
    nq, nm = q.size, m.size
    qmeet, qjoin = q.meet, q.join

    def first_adj_under():
        for qi in range(nq):
            arow = act[qi]
            urow = under[qi]
            for x in range(nm):
                ax = arow[x]
                for mm in range(nm):
                    if bool(leq[ax][mm]) != bool(leq[x][urow[mm]]):
                        return w((qi,), (x, mm))

    rep.record("action adjunction (under)", first_adj_under())

    def first_adj_over():
        for mm in range(nm):
            orow = over[mm]
            for x in range(nm):
                omx = orow[x]
                for qi in range(nq):
                    if bool(leq[act[qi][x]][mm]) != bool(qleq[qi][omx]):
                        return w((qi,), (x, mm))

    rep.record("action adjunction (over)", first_adj_over())

    def first_isotone():
        for qi in range(nq):
            arow = act[qi]
            for x in range(nm):
                ax = arow[x]
                for y in range(nm):
                    if leq[x][y] and not leq[ax][arow[y]]:
                        return w((qi,), (x, y))
        for q1 in range(nq):
            for q2 in range(nq):
                if not qleq[q1][q2]:
                    continue
                a1, a2 = act[q1], act[q2]
                for x in range(nm):
                    if not leq[a1[x]][a2[x]]:
                        return w((q1, q2), (x,))

    rep.record("action isotone in both coordinates", first_isotone())

    def first_num_meets():
        for qi in range(nq):
            urow = under[qi]
            if urow[m.top] != m.top:
                return w((qi,), (m.top,))
            for x in range(nm):
                mx = meet[x]
                ux = urow[x]
                for y in range(nm):
                    if urow[mx[y]] != meet[ux][urow[y]]:
                        return w((qi,), (x, y))
        for p in range(nm):
            if over[m.top][p] != q.top:
                return w((), (p,))
            for x in range(nm):
                ox = over[x]
                for y in range(nm):
                    if over[meet[x][y]][p] != qmeet[ox[p]][over[y][p]]:
                        return w((), (x, y, p))

    rep.record("residuals preserve numerator meets", first_num_meets())

    def first_den_joins():
        for x in range(nm):
            if under[q.bottom][x] != m.top:
                return w((q.bottom,), (x,))
            for q1 in range(nq):
                u1 = under[q1][x]
                for q2 in range(nq):
                    if under[qjoin[q1][q2]][x] != meet[u1][under[q2][x]]:
                        return w((q1, q2), (x,))
        for mm in range(nm):
            orow = over[mm]
            if orow[m.bottom] != q.top:
                return w((), (mm,))
            for x in range(nm):
                jx = join[x]
                ox = orow[x]
                for y in range(nm):
                    if orow[jx[y]] != qmeet[ox][orow[y]]:
                        return w((), (mm, x, y))

    rep.record("residuals turn denominator joins into meets", first_den_joins())

    def first_over_bound():
        for mm in range(nm):
            orow = over[mm]
            for x in range(nm):
                if not leq[act[orow[x]][x]][mm]:
                    return w((), (mm, x))

    rep.record("over-residual action bound", first_over_bound())

    def first_under_bound():
        for qi in range(nq):
            arow, urow = act[qi], under[qi]
            for mm in range(nm):
                if not leq[arow[urow[mm]]][mm]:
                    return w((qi,), (mm,))

    rep.record("under-residual action bound", first_under_bound())

    def first_expansion():
        for qi in range(nq):
            arow, urow = act[qi], under[qi]
            for mm in range(nm):
                if not leq[mm][urow[arow[mm]]]:
                    return w((qi,), (mm,))

    rep.record("expansion under action round trip", first_expansion())

    def first_exchange():
        # over(under(q, m), n) = q \ over(m, n) in Q
        for qi in range(nq):
            urow = under[qi]
            for mm in range(nm):
                omm = over[mm]
                oum = over[urow[mm]]
                for x in range(nm):
                    if oum[x] != q.lres[qi][omm[x]]:
                        return w((qi,), (mm, x))

    rep.record("residual exchange", first_exchange())

    def first_absorb():
        for mm in range(nm):
            orow = over[mm]
            for x in range(nm):
                if over[act[orow[x]][x]][x] != orow[x]:
                    return w((), (mm, x))

    rep.record("over-residual absorbs its own action", first_absorb())

    def first_self_unit():
        for mm in range(nm):
            if not qleq[q.unit][over[mm][mm]]:
                return w((), (mm,))

    rep.record("self-over dominates the unit", first_self_unit())

    def first_self_fix():
        for mm in range(nm):
            if act[over[mm][mm]][mm] != mm:
                return w((), (mm,))

    rep.record("self-over action is the identity", first_self_fix())
    return rep


# generated submodules and cyclicity -----------------------------------------

def submodule_generated(m: FiniteModule, seeds) -> frozenset:
    """Least subset containing seeds, bottom, all joins and all scalars."""
    current = {m.bottom}
    current.update(seeds)
    act, join = m.act, m.join
    nq = m.q.size
    changed = True
    while changed:
        changed = False
        snapshot = list(current)
        for x in snapshot:
            for qi in range(nq):
                y = act[qi][x]
                if y not in current:
                    current.add(y)
                    changed = True
            for z in snapshot:
                y = join[x][z]
                if y not in current:
                    current.add(y)
                    changed = True
    return frozenset(current)


def orbit_join_closure(m: FiniteModule, seeds) -> frozenset:
    """The set of joins of scalar multiples of the seeds, directly.

    Same subset as submodule_generated; enumerates one scalar per seed
    and folds, so it is only usable when |Q|^|seeds| is small.  Kept as
    an independent route for cross-checks.
    """
    seeds = list(seeds)
    out = set()
    for choice in iproduct(range(m.q.size), repeat=len(seeds)):
        out.add(m.fold_join(m.act[qi][s] for qi, s in zip(choice, seeds)))
    if not seeds:
        out.add(m.bottom)
    return frozenset(out)


def cyclic_generator_check(m: FiniteModule, v: int) -> bool:
    """True iff every element is (over(m, v)) * v, i.e. v generates M."""
    over = m.over
    act = m.act
    by_residual = all(act[over[mm][v]][v] == mm for mm in range(m.size))
    by_closure = len(submodule_generated(m, [v])) == m.size
    if by_residual != by_closure:
        raise QumodError("cyclicity criteria disagree; module tables corrupt")
    return by_residual


# ideals ----------------------------------------------------------------------

@dataclass(frozen=True)
class IdealElement:
    module: FiniteModule
    element: int
    members: frozenset = field(compare=False)


def _interval_below(m: FiniteModule, top_el: int) -> frozenset:
    return frozenset(x for x in range(m.size) if m.leq[x][top_el])


def _verify_ideal(m: FiniteModule, members: frozenset):
    """Join closure, downward closure, action closure; raises on failure."""
    mem = members
    for x in mem:
        for y in mem:
            if m.join[x][y] not in mem:
                raise InvalidAlgebra("ideal candidate not join-closed")
    if m.bottom not in mem:
        raise InvalidAlgebra("ideal candidate misses bottom")
    for x in mem:
        for y in range(m.size):
            if m.leq[y][x] and y not in mem:
                raise InvalidAlgebra("ideal candidate not downward closed")
        for qi in range(m.q.size):
            if m.act[qi][x] not in mem:
                raise InvalidAlgebra("ideal candidate not action closed")


def ideal_elements(m: FiniteModule) -> list:
    """All elements fixed by the top scalar; each gives the ideal below it."""
    topq = m.q.top
    out = []
    for el in range(m.size):
        if m.act[topq][el] == el:
            members = _interval_below(m, el)
            _verify_ideal(m, members)
            out.append(IdealElement(m, el, members))
    return out


def ideal_closure(m: FiniteModule, seeds) -> IdealElement:
    """Smallest ideal containing the seeds: everything below top * (join seeds)."""
    el = m.act[m.q.top][m.fold_join(seeds)]
    members = _interval_below(m, el)
    _verify_ideal(m, members)
    return IdealElement(m, el, members)


# congruences ------------------------------------------------------------------

@dataclass
class Congruence:
    module: FiniteModule
    class_of: list  # element index -> class id
    classes: list   # class id -> sorted tuple of element indices

    def same(self, x, y) -> bool:
        return self.class_of[x] == self.class_of[y]


def partition_to_congruence(m: FiniteModule, class_of) -> Congruence:
    ids = {}
    classes = []
    norm = []
    for x in range(m.size):
        key = class_of[x]
        if key not in ids:
            ids[key] = len(classes)
            classes.append([])
        cid = ids[key]
        classes[cid].append(x)
        norm.append(cid)
    return Congruence(m, norm, [tuple(c) for c in classes])


def is_module_congruence(m: FiniteModule, class_of) -> bool:
    """Compatible with binary joins and with every scalar section."""
    n = m.size
    join, act = m.join, m.act
    for x in range(n):
        cx = class_of[x]
        for y in range(n):
            if class_of[y] != cx:
                continue
            for z in range(n):
                if class_of[join[x][z]] != class_of[join[y][z]]:
                    return False
            for qi in range(m.q.size):
                if class_of[act[qi][x]] != class_of[act[qi][y]]:
                    return False
    return True


def congruence_of_ideal(m: FiniteModule, ideal: IdealElement) -> Congruence:
    """x ~ y iff the largest scalars keeping them inside the ideal agree."""
    over = m.over
    mi = ideal.element
    qx = [over[mi][x] for x in range(m.size)]
    cong = partition_to_congruence(m, qx)
    if not is_module_congruence(m, cong.class_of):
        raise QumodError("ideal congruence failed compatibility; tables corrupt")
    bottom_class = frozenset(cong.classes[cong.class_of[m.bottom]])
    if bottom_class != ideal.members:
        raise QumodError("bottom class does not match the ideal")
    return cong


def _set_partitions(n: int):
    """All partitions of range(n) as class_of lists (restricted growth strings)."""
    class_of = [0] * n

    def rec(i, maxid):
        if i == n:
            yield class_of[:]
            return
        for cid in range(maxid + 2):
            class_of[i] = cid
            yield from rec(i + 1, max(maxid, cid))

    if n == 0:
        yield []
    else:
        yield from rec(1, 0)


def congruence_is_largest(m: FiniteModule, ideal: IdealElement,
                          cong: Congruence, *, max_carrier: int = 6) -> bool:
    """Exhaustively confirm no other congruence with the same bottom class
    escapes cong.  Partition enumeration; gated by carrier size."""
    if m.size > max_carrier:
        raise SizeBound(f"carrier {m.size} exceeds enumeration gate {max_carrier}")
    for class_of in _set_partitions(m.size):
        if not is_module_congruence(m, class_of):
            continue
        bclass = frozenset(x for x in range(m.size)
                           if class_of[x] == class_of[m.bottom])
        if bclass != ideal.members:
            continue
        for x in range(m.size):
            for y in range(x + 1, m.size):
                if class_of[x] == class_of[y] and not cong.same(x, y):
                    return False
    return True


# nuclei and quotients ---------------------------------------------------------

def nucleus_validate(m: FiniteModule, gamma) -> LawReport:
    """Closure-operator laws, structurality, and its four equivalent forms.

    The five characterizations are evaluated independently and the
    report's last line confirms they agree (they must, whenever the
    closure laws hold).
    """
    rep = LawReport()
    n = m.size
    leq, act, under, over = m.leq, m.act, m.under, m.over
    nq = m.q.size
    w = m._witness

    ext = next((x for x in range(n) if not leq[x][gamma[x]]), None)
    rep.record("closure: extensive", None if ext is None else w((), (ext,)))
    mono = next(((x, y) for x in range(n) for y in range(n)
                 if leq[x][y] and not leq[gamma[x]][gamma[y]]), None)
    rep.record("closure: monotone", None if mono is None else w((), mono))
    idem = next((x for x in range(n) if gamma[gamma[x]] != gamma[x]), None)
    rep.record("closure: idempotent", None if idem is None else w((), (idem,)))
    if ext is not None or mono is not None or idem is not None:
        return rep

    def holds_a():
        return all(leq[act[qi][gamma[x]]][gamma[act[qi][x]]]
                   for qi in range(nq) for x in range(n))

    def holds_b():
        return all(gamma[act[qi][gamma[x]]] == gamma[act[qi][x]]
                   for qi in range(nq) for x in range(n))

    def holds_c():
        return all(over[gamma[x]][y] == over[gamma[x]][gamma[y]]
                   for x in range(n) for y in range(n))

    def holds_d():
        return all(leq[gamma[under[qi][x]]][under[qi][gamma[x]]]
                   for qi in range(nq) for x in range(n))

    def holds_e():
        return all(gamma[under[qi][gamma[x]]] == under[qi][gamma[x]]
                   for qi in range(nq) for x in range(n))

    flags = {
        "structural: action slides through": holds_a(),
        "saturated action": holds_b(),
        "over-residual ignores closure of denominator": holds_c(),
        "closure of under-residual stays below": holds_d(),
        "under-residual of closed is closed": holds_e(),
    }
    for law, ok in flags.items():
        rep.record(law, None if ok else "fails somewhere on the carrier")
    agree = len(set(flags.values())) == 1
    rep.record("equivalent characterizations agree",
               None if agree else str(flags))
    return rep


def quotient_module(m: FiniteModule, gamma):
    """The module of gamma-fixed points, with everything re-closed.

    Returns (quotient, projection) where projection[x] is the quotient
    index of gamma(x).  The projection is checked to be a surjective
    join/action homomorphism.
    """
    rep = nucleus_validate(m, gamma)
    if not rep.ok:
        raise InvalidAlgebra("not a nucleus: " + "; ".join(
            r.law for r in rep.failures))
    fixed = [x for x in range(m.size) if gamma[x] == x]
    pos = {x: i for i, x in enumerate(fixed)}
    join = [[pos[gamma[m.join[a][b]]] for b in fixed] for a in fixed]
    act = [[pos[gamma[m.act[qi][a]]] for a in fixed] for qi in range(m.q.size)]
    quot = FiniteModule(m.q, join, pos[gamma[m.bottom]], act,
                        labels=[m.labels[x] for x in fixed])
    proj = [pos[gamma[x]] for x in range(m.size)]
    if set(proj) != set(range(len(fixed))):
        raise QumodError("projection not surjective; tables corrupt")
    hom = module_hom_violation(m, quot, proj)
    if hom is not None:
        raise QumodError(f"projection is not a homomorphism: {hom}")
    return quot, proj


def module_hom_violation(m: FiniteModule, n: FiniteModule, f):
    """First place f: M -> N fails to preserve joins, bottom, or action."""
    if f[m.bottom] != n.bottom:
        return "bottom"
    for x in range(m.size):
        fx = f[x]
        for y in range(m.size):
            if f[m.join[x][y]] != n.join[fx][f[y]]:
                return f"join at {m.labels[x]} {m.labels[y]}"
    for qi in range(m.q.size):
        for x in range(m.size):
            if f[m.act[qi][x]] != n.act[qi][f[x]]:
                return f"action at {m.q.labels[qi]} {m.labels[x]}"
    return None


def nucleus_from_hom(m: FiniteModule, n: FiniteModule, f) -> list:
    """gamma = f_sharp . f where f_sharp(y) is the largest preimage bound.

    f must be a join/action homomorphism M -> N (indices); raises
    NotAHomomorphism otherwise.
    """
    bad = module_hom_violation(m, n, f)
    if bad is not None:
        raise NotAHomomorphism(bad)
    sharp = []
    for y in range(n.size):
        sharp.append(m.fold_join(x for x in range(m.size) if n.leq[f[x]][y]))
    return [sharp[f[x]] for x in range(m.size)]


def interval_module(m: FiniteModule, base: int) -> FiniteModule:
    """The elements above base, acting by a * n = base v (a * n).

    Well-defined whenever no scalar pushes base strictly upward, i.e.
    top * base <= base; integral quantales satisfy this at every base.
    Otherwise action associativity fails and construction raises.
    """
    carrier = [x for x in range(m.size) if m.leq[base][x]]
    pos = {x: i for i, x in enumerate(carrier)}
    join = [[pos[m.join[a][b]] for b in carrier] for a in carrier]
    act = [[pos[m.join[base][m.act[qi][a]]] for a in carrier]
           for qi in range(m.q.size)]
    return FiniteModule(m.q, join, pos[base], act,
                        labels=[m.labels[x] for x in carrier])
