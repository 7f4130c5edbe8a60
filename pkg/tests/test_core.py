import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxkit.core import (
    NEGATIVE,
    NOT_A_UNIT_ROOT,
    POSITIVE,
    CoxeterError,
    CoxeterSystem,
    check_odd_support,
    coset_min,
    enumerate_group,
    is_coset_minimal,
)
from coxkit.families import family, truncate
from coxkit.numberfield import INF

from conftest import chain


def test_reflections_in_A2(A2):
    a, b = A2.simple_root("a"), A2.simple_root("b")
    assert A2.reflect(a, a) == tuple(-x for x in a)
    assert A2.reflect(a, b) == A2.vector({"a": 1, "b": 1})


def test_first_conjugation_in_chain():
    W = truncate(family("a1inf"), 4)
    beta = W.vector({1: 1, 2: 1})
    assert W.element([1]).act(beta) == W.simple_root(2)


def test_classify_root(A2):
    assert A2.classify_root(A2.simple_root("a")) == POSITIVE
    assert A2.classify_root(A2.vector({"a": -1, "b": -1})) == NEGATIVE
    assert A2.classify_root(A2.vector({"a": 1, "b": -1})) == NOT_A_UNIT_ROOT


@pytest.mark.parametrize(
    "W, count",
    [
        (chain(2), 3),
        (CoxeterSystem(["a", "b"], {}), 2),
        (chain(2, [6]), 6),
        (chain(3), 6),
        (chain(3, [4, 3]), 9),
        (chain(3, [5, 3]), 15),
        (chain(4, [3, 4, 3]), 24),
    ],
)
def test_positive_root_counts(W, count):
    en = W.enumerate_positive_roots(30)
    assert en.saturated
    assert len(en.roots) == count


def test_affine_root_enumeration_not_saturated():
    W = chain(3, [4, 4])
    en = W.enumerate_positive_roots(6)
    assert not en.saturated
    assert max(en.depths.values()) == 6


def test_words_in_A2(A2):
    s, t = A2.generator("a"), A2.generator("b")
    assert (s * s).length == 0
    assert (s * t) * (s * t) * (s * t) == A2.identity()
    sts = A2.element("aba")
    assert sts.length == 3 and sts == A2.element("bab")
    assert sts.word == ("a", "b", "a")  # ShortLex


@pytest.mark.parametrize("W, order", [(chain(2), 6), (chain(3), 24), (chain(3, [4, 3]), 48), (chain(2, [6]), 12)])
def test_group_orders(W, order):
    E = enumerate_group(W)
    assert len(E) == order
    assert len(set(E)) == order


def test_enumeration_limit():
    with pytest.raises(CoxeterError):
        enumerate_group(chain(2, [INF]), limit=50)


def test_word_length_matches_descents(B3):
    for w in enumerate_group(B3):
        inv = sum(1 for r in B3.enumerate_positive_roots(20).roots if B3.root_sign(w.act_inverse(r)) < 0)
        assert inv == w.length
        for s in w.right_descents():
            assert (w * B3.generator(s)).length == w.length - 1


def test_coset_min_examples(A2):
    w = A2.element("ab")
    wI, rest = coset_min(w, ["b"])
    assert wI == A2.element("a") and rest == A2.element("b")
    W = CoxeterSystem(["a", "b"], {("a", "b"): 4})
    wI, rest = coset_min(W.element("aba"), ["a"])
    assert wI == W.element("ab") and rest == W.element("a")
    wI, rest = coset_min(A2.element("a"), ["a", "b"])
    assert wI == A2.identity()


def test_coset_min_brute_force(B3):
    E = enumerate_group(B3)
    for k in range(4):
        for I in itertools.combinations(B3.generators, k):
            WI = enumerate_group(B3, [B3.generator(s) for s in I])
            for w in E[::5]:
                wI, rest = coset_min(w, I)
                coset = [w * x for x in WI]
                assert wI == min(coset, key=lambda x: x.length)
                assert wI * rest == w and is_coset_minimal(wI, I)
                assert wI.length + rest.length == w.length


def test_odd_components(A3, B3):
    assert A3.odd_components() == [["a", "b", "c"]]
    assert B3.odd_components() == [["a"], ["b", "c"]]
    W = truncate(family("ex45", 4), 4)
    assert W.odd_components() == [[1], [2], [3], [4]]


def test_odd_support(B3):
    rng = random.Random(3)
    E = enumerate_group(B3)
    assert check_odd_support(B3.identity(), "a")
    for _ in range(500):
        assert check_odd_support(rng.choice(E), rng.choice(B3.generators))


def test_restrict_and_dsl_roundtrip(B3):
    from coxkit.dsl import parse_system

    assert parse_system(B3.to_dsl()) == B3
    assert B3.restrict(["b", "c"]).labels() == {("b", "c"): 3}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["a", "b", "c"]), max_size=12), st.lists(st.sampled_from(["a", "b", "c"]), max_size=12))
def test_group_law_in_H3(u, v):
    W = _H3
    x, y = W.element(u), W.element(v)
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert W.element(list(u) + list(v)) == x * y
    assert W.element((x * y).word) == x * y
    assert (x * y).length <= x.length + y.length


_H3 = chain(3, [5, 3])
