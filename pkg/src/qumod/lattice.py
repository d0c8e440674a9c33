"""Order helpers for carriers described by a finite binary join table.

The partial order is always derived from the join (x <= y iff
x v y = y) and never stored independently.  Tables are lists of lists
of element indices.
"""

from __future__ import annotations


def sup_lattice_violation(join, bottom):
    """First violated sup-lattice law, or None.

    Returns (law, witness) where law is one of "join-associativity",
    "join-commutativity", "join-idempotence", "bottom-neutral".
    """
    n = len(join)
    for i in range(n):
        if join[i][i] != i:
            return ("join-idempotence", (i,))
        if join[bottom][i] != i or join[i][bottom] != i:
            return ("bottom-neutral", (i,))
    for i in range(n):
        ji = join[i]
        for j in range(i + 1, n):
            if ji[j] != join[j][i]:
                return ("join-commutativity", (i, j))
    for i in range(n):
        ji = join[i]
        for j in range(n):
            jij = join[ji[j]]
            jj = join[j]
            for k in range(n):
                if jij[k] != ji[jj[k]]:
                    return ("join-associativity", (i, j, k))
    return None


def derive_leq(join):
    """leq[i][j] == 1 iff i <= j, as rows of bytearrays."""
    n = len(join)
    return [bytearray(1 if join[i][j] == j else 0 for j in range(n)) for i in range(n)]


def fold_join(join, items, bottom: int) -> int:
    acc = bottom
    for x in items:
        acc = join[acc][x]
    return acc


def top_of(join, bottom: int) -> int:
    return fold_join(join, range(len(join)), bottom)


def meet_table(join, leq, bottom: int):
    """Binary meets, computed as joins of common lower bounds."""
    n = len(join)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = bottom
            for z in range(n):
                if leq[z][i] and leq[z][j]:
                    acc = join[acc][z]
            row.append(acc)
        table.append(row)
    return table


def is_lattice(join, leq, meets) -> bool:
    """The derived meets really are greatest lower bounds."""
    n = len(join)
    for i in range(n):
        for j in range(n):
            m = meets[i][j]
            if not (leq[m][i] and leq[m][j]):
                return False
    return True
