"""Square-matrix quantales over a finite base quantale.

Entries are base-element indices; a matrix is a flattened row-major
tuple of length n*n.  Product is the usual row-by-column sweep with
the base join standing in for sum, unit is the identity pattern
(e on the diagonal, bottom elsewhere), and join is pointwise.
"""

from __future__ import annotations

import random

from .errors import InvalidAlgebra, SizeBound
from .quantale import FiniteQuantale
from .report import LawReport

FULL_CHECK_BOUND = 10_000
_TABLE_BOUND = 1_500  # memoized op tables above this would not pay for themselves


class MatrixQuantale:
    def __init__(self, q: FiniteQuantale, n: int):
        if n < 1:
            raise InvalidAlgebra("dimension must be at least 1")
        self.q = q
        self.n = n
        self.count = q.size ** (n * n)
        self.bottom = (q.bottom,) * (n * n)
        self.unit = tuple(q.unit if i == j else q.bottom
                          for i in range(n) for j in range(n))
        self.top = (q.top,) * (n * n)

    def matrix(self, rows) -> tuple:
        flat = tuple(x for row in rows for x in row)
        if len(flat) != self.n * self.n:
            raise InvalidAlgebra(f"expected a {self.n}x{self.n} matrix")
        if any(not 0 <= x < self.q.size for x in flat):
            raise InvalidAlgebra("entry out of range for the base quantale")
        return flat

    def rows(self, m):
        n = self.n
        return [list(m[i * n:(i + 1) * n]) for i in range(n)]

    def show(self, m) -> str:
        lab = self.q.labels
        return "[" + ", ".join(
            "[" + ", ".join(lab[x] for x in row) + "]"
            for row in self.rows(m)) + "]"

    def elements(self):
        n2 = self.n * self.n
        size = self.q.size
        for code in range(self.count):
            yield tuple(code // size ** i % size for i in range(n2))

    def random_element(self, rng: random.Random) -> tuple:
        size = self.q.size
        return tuple(rng.randrange(size) for _ in range(self.n * self.n))

    def mul(self, a, b) -> tuple:
        n, q = self.n, self.q
        prod, join, bot = q.prod, q.join, q.bottom
        out = []
        for i in range(n):
            arow = a[i * n:(i + 1) * n]
            for j in range(n):
                acc = bot
                for k in range(n):
                    acc = join[acc][prod[arow[k]][b[k * n + j]]]
                out.append(acc)
        return tuple(out)

    def join2(self, a, b) -> tuple:
        join = self.q.join
        return tuple(join[x][y] for x, y in zip(a, b))

    def le(self, a, b) -> bool:
        leq = self.q.leq
        return all(leq[x][y] for x, y in zip(a, b))

    def is_idempotent(self, m) -> bool:
        return self.mul(m, m) == m


def matrix_quantale(q: FiniteQuantale, n: int) -> MatrixQuantale:
    return MatrixQuantale(q, n)


def _full_check(mq: MatrixQuantale, report: LawReport):
    elems = list(mq.elements())
    count = len(elems)
    use_tables = count <= _TABLE_BOUND
    if use_tables:
        idx = {m: i for i, m in enumerate(elems)}
        prod = [[idx[mq.mul(a, b)] for b in elems] for a in elems]
        join = [[idx[mq.join2(a, b)] for b in elems] for a in elems]
        mul = lambda i, j: prod[i][j]
        sup = lambda i, j: join[i][j]
        universe = range(count)
        unit, bottom = idx[mq.unit], idx[mq.bottom]
    else:
        mul, sup = mq.mul, mq.join2
        universe = elems
        unit, bottom = mq.unit, mq.bottom

    def w(*ms):
        if use_tables:
            ms = [elems[m] for m in ms]
        return " ; ".join(mq.show(m) for m in ms)

    bad = next((a for a in universe if sup(a, a) != a), None)
    report.record("Q1 join-idempotence", None if bad is None else w(bad))
    bad = next((a for a in universe if sup(bottom, a) != a), None)
    report.record("Q1 bottom-neutral", None if bad is None else w(bad))
    bad = next(((a, b) for a in universe for b in universe
                if sup(a, b) != sup(b, a)), None)
    report.record("Q1 join-commutativity", None if bad is None else w(*bad))
    bad = next(((a, b, c) for a in universe for b in universe for c in universe
                if sup(sup(a, b), c) != sup(a, sup(b, c))), None)
    report.record("Q1 join-associativity", None if bad is None else w(*bad))
    bad = next((a for a in universe
                if mul(unit, a) != a or mul(a, unit) != a), None)
    report.record("Q2 unit laws", None if bad is None else w(bad))
    bad = next(((a, b, c) for a in universe for b in universe for c in universe
                if mul(mul(a, b), c) != mul(a, mul(b, c))), None)
    report.record("Q2 product-associativity", None if bad is None else w(*bad))
    bad = next((a for a in universe
                if mul(a, bottom) != bottom or mul(bottom, a) != bottom), None)
    report.record("Q3 empty-join annihilation", None if bad is None else w(bad))
    bad = next(((a, b, c) for a in universe for b in universe for c in universe
                if mul(a, sup(b, c)) != sup(mul(a, b), mul(a, c))), None)
    report.record("Q3 left-distributivity", None if bad is None else w(*bad))
    bad = next(((a, b, c) for a in universe for b in universe for c in universe
                if mul(sup(a, b), c) != sup(mul(a, c), mul(b, c))), None)
    report.record("Q3 right-distributivity", None if bad is None else w(*bad))


def _sampled_check(mq: MatrixQuantale, report: LawReport, samples: int,
                   seed: int):
    rng = random.Random(seed)
    triples = [(mq.random_element(rng), mq.random_element(rng),
                mq.random_element(rng)) for _ in range(samples)]
    checks = [
        ("Q1 join-idempotence (sampled)",
         lambda a, b, c: mq.join2(a, a) == a),
        ("Q1 bottom-neutral (sampled)",
         lambda a, b, c: mq.join2(mq.bottom, a) == a),
        ("Q1 join-commutativity (sampled)",
         lambda a, b, c: mq.join2(a, b) == mq.join2(b, a)),
        ("Q1 join-associativity (sampled)",
         lambda a, b, c: mq.join2(mq.join2(a, b), c) == mq.join2(a, mq.join2(b, c))),
        ("Q2 unit laws (sampled)",
         lambda a, b, c: mq.mul(mq.unit, a) == a and mq.mul(a, mq.unit) == a),
        ("Q2 product-associativity (sampled)",
         lambda a, b, c: mq.mul(mq.mul(a, b), c) == mq.mul(a, mq.mul(b, c))),
        ("Q3 empty-join annihilation (sampled)",
         lambda a, b, c: mq.mul(a, mq.bottom) == mq.bottom
         and mq.mul(mq.bottom, a) == mq.bottom),
        ("Q3 left-distributivity (sampled)",
         lambda a, b, c: mq.mul(a, mq.join2(b, c))
         == mq.join2(mq.mul(a, b), mq.mul(a, c))),
        ("Q3 right-distributivity (sampled)",
         lambda a, b, c: mq.mul(mq.join2(a, b), c)
         == mq.join2(mq.mul(a, c), mq.mul(b, c))),
    ]
    for law, ok in checks:
        bad = next((t for t in triples if not ok(*t)), None)
        report.record(law, None if bad is None else
                      " ; ".join(mq.show(m) for m in bad))


def check_matrix_laws(mq: MatrixQuantale, *, full_bound: int = FULL_CHECK_BOUND,
                      samples: int = 1_000, seed: int = 2026) -> LawReport:
    """Exhaustive sweeps up to full_bound elements, random triples above."""
    report = LawReport()
    if mq.count <= full_bound:
        _full_check(mq, report)
    else:
        _sampled_check(mq, report, samples, seed)
    return report


def to_finite_quantale(mq: MatrixQuantale, *, max_elements: int = 2048,
                       validate: bool = False) -> FiniteQuantale:
    """Materialize the matrix quantale as plain index tables."""
    if mq.count > max_elements:
        raise SizeBound(f"{mq.count} elements exceed {max_elements}")
    elems = list(mq.elements())
    idx = {m: i for i, m in enumerate(elems)}
    join = [[idx[mq.join2(a, b)] for b in elems] for a in elems]
    prod = [[idx[mq.mul(a, b)] for b in elems] for a in elems]
    return FiniteQuantale(join, prod, idx[mq.unit], idx[mq.bottom],
                          labels=[mq.show(m) for m in elems],
                          validate=validate)
