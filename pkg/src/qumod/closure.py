"""Closure operators, meet-closed subsets, and consequence relations.

On a finite lattice the three views are interchangeable: a closure
operator gamma, its image (a meet-closed subset containing top), and
the entailment relation x |- y iff y <= gamma(x).  This module walks
all three directions and enumerates the full posets at lab sizes.
"""

from __future__ import annotations

from itertools import product as iproduct

from . import lattice as latmod
from .errors import InvalidAlgebra, InvalidRelation, SizeBound


def _tables(lat):
    """Accept anything with join/bottom tables, or a (join, bottom) pair."""
    if hasattr(lat, "join") and hasattr(lat, "bottom"):
        return lat.join, lat.bottom
    join, bottom = lat
    return join, bottom


class _Lat:
    def __init__(self, lat):
        self.join, self.bottom = _tables(lat)
        self.size = len(self.join)
        self.leq = latmod.derive_leq(self.join)
        self.top = latmod.top_of(self.join, self.bottom)
        self.meet = latmod.meet_table(self.join, self.leq, self.bottom)

    def fold_meet(self, items):
        acc = self.top
        for x in items:
            acc = self.meet[acc][x]
        return acc

    def fold_join(self, items):
        return latmod.fold_join(self.join, items, self.bottom)


def gamma_of_subset(lat, subset) -> tuple:
    """gamma(x) = meet of the members above x; subset must contain top."""
    L = lat if isinstance(lat, _Lat) else _Lat(lat)
    return tuple(L.fold_meet(y for y in subset if L.leq[x][y])
                 for x in range(L.size))


def is_closure_operator(lat, gamma) -> bool:
    L = lat if isinstance(lat, _Lat) else _Lat(lat)
    n = L.size
    leq = L.leq
    return (all(leq[x][gamma[x]] for x in range(n))
            and all(not leq[x][y] or leq[gamma[x]][gamma[y]]
                    for x in range(n) for y in range(n))
            and all(gamma[gamma[x]] == gamma[x] for x in range(n)))


def closure_operators(lat) -> list:
    """Every closure operator, enumerated as products of principal up-sets."""
    L = lat if isinstance(lat, _Lat) else _Lat(lat)
    n = L.size
    ups = [[y for y in range(n) if L.leq[x][y]] for x in range(n)]
    out = []
    for cand in iproduct(*ups):
        if all(cand[cand[x]] == cand[x] for x in range(n)) and all(
                not L.leq[x][y] or L.leq[cand[x]][cand[y]]
                for x in range(n) for y in range(n)):
            out.append(tuple(cand))
    return out


def meet_closed_subsets(lat) -> list:
    """All subsets containing top and closed under binary meets."""
    L = lat if isinstance(lat, _Lat) else _Lat(lat)
    n = L.size
    rest = [x for x in range(n) if x != L.top]
    out = []
    for bits in range(1 << len(rest)):
        members = [L.top] + [rest[i] for i in range(len(rest)) if bits >> i & 1]
        if all(L.meet[a][b] in members for a in members for b in members):
            out.append(frozenset(members))
    return out


def closure_meetclosed_bijection(lat, *, max_size: int = 8) -> list:
    """Pair each meet-closed-with-top subset with its closure operator.

    Verifies that subset -> operator -> image and operator -> image ->
    operator are both identities, and that the counts match.  Returns
    the list of (subset, gamma) pairs.
    """
    L = _Lat(lat)
    if L.size > max_size:
        raise SizeBound(f"lattice size {L.size} exceeds {max_size}")
    subsets = meet_closed_subsets(L)
    operators = closure_operators(L)
    if len(subsets) != len(operators):
        raise InvalidAlgebra("closure/meet-closed counts differ; not a lattice?")
    pairs = []
    seen = set()
    for s in subsets:
        g = gamma_of_subset(L, s)
        if frozenset(g) != s:
            raise InvalidAlgebra(f"image of derived operator differs for {sorted(s)}")
        seen.add(g)
        pairs.append((s, g))
    for g in operators:
        if g not in seen:
            raise InvalidAlgebra("an operator is not hit by any subset")
        if gamma_of_subset(L, frozenset(g)) != g:
            raise InvalidAlgebra("operator -> image -> operator is not identity")
    pairs.sort(key=lambda p: sorted(p[0]))
    return pairs


# consequence relations --------------------------------------------------------

def relation_matrix(n, pairs):
    rel = [[False] * n for _ in range(n)]
    for x, y in pairs:
        rel[x][y] = True
    return rel


def validate_consequence(lat, rel):
    """Order containment, transitivity, and self-entailment of the
    join of consequences; raises InvalidRelation with the witness."""
    L = lat if isinstance(lat, _Lat) else _Lat(lat)
    n = L.size
    for x in range(n):
        for y in range(n):
            if L.leq[y][x] and not rel[x][y]:
                raise InvalidRelation(f"{x} must entail {y} below it")
    for x in range(n):
        for y in range(n):
            if not rel[x][y]:
                continue
            for z in range(n):
                if rel[y][z] and not rel[x][z]:
                    raise InvalidRelation(f"transitivity fails at {x} {y} {z}")
    for x in range(n):
        total = L.fold_join(y for y in range(n) if rel[x][y])
        if not rel[x][total]:
            raise InvalidRelation(f"{x} does not entail the join of its consequences")


def gamma_of_relation(lat, rel) -> tuple:
    """gamma(x) = join of everything x entails."""
    L = lat if isinstance(lat, _Lat) else _Lat(lat)
    validate_consequence(L, rel)
    return tuple(L.fold_join(y for y in range(L.size) if rel[x][y])
                 for x in range(L.size))


def relation_of_gamma(lat, gamma):
    """x |- y iff y <= gamma(x), as a boolean matrix."""
    L = lat if isinstance(lat, _Lat) else _Lat(lat)
    if not is_closure_operator(L, gamma):
        raise InvalidAlgebra("input table is not a closure operator")
    return [[bool(L.leq[y][gamma[x]]) for y in range(L.size)]
            for x in range(L.size)]


def consequence_closure_roundtrip(lat, data):
    """Convert between the two presentations.

    A flat integer sequence is read as a closure table and produces the
    relation; a matrix (or pair iterable) is read as a relation and
    produces the closure table.
    """
    L = _Lat(lat)
    data = list(data)
    if data and isinstance(data[0], (list, tuple)):
        rel = data if isinstance(data[0], list) else relation_matrix(
            L.size, data)
        return gamma_of_relation(L, rel)
    return relation_of_gamma(L, data)


def theories(lat, rel) -> list:
    """Elements whose consequences never escape them."""
    L = lat if isinstance(lat, _Lat) else _Lat(lat)
    n = L.size
    return [t for t in range(n)
            if all(not rel[t][x] or L.leq[x][t] for x in range(n))]


def fixed_points(gamma) -> list:
    return [x for x in range(len(gamma)) if gamma[x] == x]


def relation_is_structural(module, rel) -> bool:
    """Entailment survives every scalar: x |- y forces q*x |- q*y."""
    act = module.act
    n = module.size
    return all(not rel[x][y] or rel[act[qi][x]][act[qi][y]]
               for qi in range(module.q.size)
               for x in range(n) for y in range(n))


def gamma_is_structural(module, gamma) -> bool:
    act, leq = module.act, module.leq
    return all(leq[act[qi][gamma[x]]][gamma[act[qi][x]]]
               for qi in range(module.q.size) for x in range(module.size))
