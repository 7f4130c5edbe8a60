import pytest

from coxkit.numberfield import INF
from coxkit.scenarios import (
    ScenarioError,
    ex33_u_word,
    verify_example_3_3,
    verify_example_4_5,
    verify_remark_g2,
)


def test_u_words():
    assert ex33_u_word(1) == [1]
    assert ex33_u_word(2) == [2, 1, 3]
    assert ex33_u_word(3) == [3, 2, 1, 4, 3, 5]


def test_g2():
    r = verify_remark_g2()
    assert r.passed and len(r.assertions) == 5


def test_ex33_small():
    r = verify_example_3_3(max_i=3)
    assert r.passed, r.failures()


@pytest.mark.parametrize("m", [4, 6, INF])
def test_ex45_small(m):
    r = verify_example_4_5(m, max_i=3, samples=10)
    assert r.passed, r.failures()


def test_bad_inputs():
    with pytest.raises(ScenarioError):
        verify_example_4_5(5)
    with pytest.raises(ScenarioError):
        verify_example_3_3(max_i=9)
