"""Join-table helpers: order derivation, folds, meets."""

from qumod import lattice


def diamond():
    # 0 < 1, 2 < 3 with 1, 2 incomparable
    return [
        [0, 1, 2, 3],
        [1, 1, 3, 3],
        [2, 3, 2, 3],
        [3, 3, 3, 3],
    ]


def test_sup_lattice_violation_none_on_diamond():
    assert lattice.sup_lattice_violation(diamond(), 0) is None


def test_violation_reports_law():
    bad = [[0, 1], [0, 1]]  # join(1, 0) = 0 breaks commutativity
    law, _ = lattice.sup_lattice_violation(bad, 0)
    assert "commut" in law or "neutral" in law


def test_derive_leq():
    leq = lattice.derive_leq(diamond())
    assert leq[0][3] and leq[1][3] and leq[2][3]
    assert not leq[1][2] and not leq[2][1]
    assert all(leq[i][i] for i in range(4))


def test_fold_join_empty_is_bottom():
    assert lattice.fold_join(diamond(), [], 0) == 0
    assert lattice.fold_join(diamond(), [1, 2], 0) == 3


def test_top():
    assert lattice.top_of(diamond(), 0) == 3


def test_meet_table_diamond():
    join = diamond()
    leq = lattice.derive_leq(join)
    meet = lattice.meet_table(join, leq, 0)
    assert meet[1][2] == 0
    assert meet[1][3] == 1
    assert meet[3][2] == 2
    assert meet[0][2] == 0
    assert lattice.is_lattice(join, leq, meet)
