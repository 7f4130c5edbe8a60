import pytest

from coxkit.core import CoxeterError
from coxkit.families import TruncationTower, adjacency, family, nests, tower_check, truncate
from coxkit.locpar import finite_type_recognize
from coxkit.numberfield import INF


def test_golden_adjacency():
    assert adjacency(family("a1inf"), 4) == [(1, 2, 3), (2, 3, 3), (3, 4, 3)]
    assert adjacency(family("a2inf"), 4) == [(-1, 0, 3), (0, 1, 3), (1, 2, 3)]
    assert adjacency(family("binf"), 4) == [(0, 1, 4), (1, 2, 3), (2, 3, 3)]
    assert adjacency(family("dinf"), 5) == [(-1, 1, 3), (0, 1, 3), (1, 2, 3), (2, 3, 3)]
    assert adjacency(family("ex45", 4), 3) == [(1, 2, 4), (2, 3, 4)]
    assert adjacency(family("ex45", INF), 3) == [(1, 2, INF), (2, 3, INF)]


def test_small_truncations():
    assert str(finite_type_recognize(truncate(family("a1inf"), 3))) == "A3"
    assert str(finite_type_recognize(truncate(family("binf"), 3))) == "B3"
    assert str(finite_type_recognize(truncate(family("dinf"), 5))) == "D5"
    assert truncate(family("dinf"), 2).names[-1] == "s0'"


def test_bad_parameters():
    with pytest.raises(CoxeterError):
        family("ex45", 5)
    with pytest.raises(CoxeterError):
        family("nope")
    with pytest.raises(CoxeterError):
        TruncationTower(family("a1inf"), (4, 3))


@pytest.mark.parametrize("kind", ["a1inf", "a2inf", "binf", "dinf", "ex33"])
def test_towers_nest(kind):
    fam = family(kind)
    assert all(nests(fam, n, n + 1) for n in range(1, 10))


def test_tower_stability():
    rep = tower_check(TruncationTower(family("a1inf"), range(2, 9)), lambda W, n: finite_type_recognize(W).finite)
    assert rep.stable and all(v for _, v in rep.outcomes)
    rep = tower_check(TruncationTower(family("binf"), (5, 5, 5)), lambda W, n: str(finite_type_recognize(W)))
    assert rep.stable
