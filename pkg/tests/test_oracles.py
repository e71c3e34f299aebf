import pytest

from torusbundles import oracles
from torusbundles.sl2z import SHEAR, S, T


def test_budget_validation():
    with pytest.raises(ValueError):
        oracles.SearchBudget(0, 9)
    assert oracles.DEFAULT_BUDGET == oracles.SearchBudget(10, 9)


def test_bfs_subgroup_examples():
    a, b = ((0, 1),), ((1, 1),)
    assert oracles.bfs_subgroup_elements((2, 3), [a], 4) == {(), a}
    assert oracles.bfs_subgroup_elements((2, 3), [b], 4) == {(), b, ((1, 2),)}
    ab = oracles.bfs_subgroup_elements((2, 3), [((0, 1), (1, 1))], 4)
    assert {(), ((0, 1), (1, 1)), ((1, 2), (0, 1)), ((0, 1), (1, 1), (0, 1), (1, 1))} <= ab
    assert len(ab) == 9


def test_brute_conjugator_examples():
    ident = ((1, 0), (0, 1))
    assert oracles.brute_conjugator(T.rows(), T.rows()) == ident
    assert oracles.brute_conjugator(S.rows(), (-S).rows()) is None
    assert oracles.brute_conjugator(T.rows(), T.inv().rows()) is None
    q = oracles.brute_conjugator(SHEAR.rows(), (S * SHEAR * S.inv()).rows())
    assert q is not None


def test_sl_ball_size():
    assert len(oracles.sl_ball(oracles.DEFAULT_BUDGET)) == 436


def test_brute_lattice_examples():
    assert oracles.brute_lattice_member((0, 0), [(1, 2), (3, 4)], 2) == [0, 0]
    assert oracles.brute_lattice_member((1, 0), [(2, 0), (0, 2)], 5) is None
    c = oracles.brute_lattice_member((5, 7), [(-1, -1), (1, 0)], 8)
    assert c is not None and (-c[0] + c[1], -c[0]) == (5, 7)


def test_brute_order():
    assert oracles.brute_order(S.rows()) == 4
    assert oracles.brute_order(T.rows()) == 6
    assert oracles.brute_order(SHEAR.rows()) is None
