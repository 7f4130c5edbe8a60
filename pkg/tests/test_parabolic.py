import itertools
import random

import pytest

from coxkit.core import CoxeterError, CoxeterSystem, enumerate_group
from coxkit.families import family, truncate
from coxkit.numberfield import INF
from coxkit.parabolic import (
    NO,
    YES,
    ParabolicDescriptor,
    all_parabolics,
    intersect_parabolics_finite,
    is_parabolic,
    maximal_finite_parabolic_over,
    parabolic_closure_bruteforce,
    parabolic_closure_finite,
    verify_certificate,
)
from coxkit.refsub import ReflectionSubgroup

from conftest import chain


def test_descriptor_roots(A2):
    d = ParabolicDescriptor(A2.identity(), ["a"])
    assert d.canonical_roots == [A2.simple_root("a")]
    d = ParabolicDescriptor(A2.element("b"), ["a"])
    assert d.canonical_roots == [A2.vector({"a": 1, "b": 1})]
    # w is replaced by the shortest element of w W_I
    assert ParabolicDescriptor(A2.element("ba"), ["a"]).w == A2.element("b")


def test_descriptor_equality_is_by_subgroup(A2):
    d1 = ParabolicDescriptor(A2.element("b"), ["a"])
    d2 = ParabolicDescriptor(A2.element("a"), ["b"])
    assert d1 == d2
    assert set(d1.elements()) == set(d2.elements())


def test_parabolic_counts(A3, B3):
    assert len(all_parabolics(A3)) == 15
    assert len(all_parabolics(B3)) == 24


def test_intersections(A2, G2):
    Wa = ParabolicDescriptor.standard(A2, ["a"])
    assert intersect_parabolics_finite(A2, Wa, Wa) == Wa
    other = ParabolicDescriptor(A2.element("b"), ["a"])
    assert intersect_parabolics_finite(A2, Wa, other).rank == 0
    s = ParabolicDescriptor.standard(G2, ["s"])
    assert intersect_parabolics_finite(G2, s, ParabolicDescriptor.standard(G2)) == s


def test_closure_examples(A2):
    P, _ = parabolic_closure_finite(A2, [A2.identity()])
    assert P.rank == 0
    r = A2.reflection(A2.vector({"a": 1, "b": 1}))
    P, _ = parabolic_closure_finite(A2, [r])
    assert P == ParabolicDescriptor(A2.element("b"), ["a"])
    P, _ = parabolic_closure_finite(A2, [A2.element("ab")])
    assert P == ParabolicDescriptor.standard(A2)


def test_closure_matches_brute_force_on_pairs(A3):
    E = enumerate_group(A3)
    rng = random.Random(5)
    for _ in range(60):
        X = rng.sample(E, 2)
        P, chain_ = parabolic_closure_finite(A3, X)
        assert P == parabolic_closure_bruteforce(A3, X)
        assert all(a.rank > b.rank for a, b in zip(chain_, chain_[1:]))


def test_infinite_ambient_refused():
    W = chain(3, [4, 4])
    with pytest.raises(CoxeterError):
        parabolic_closure_finite(W, [W.generator("a")])


def test_is_parabolic_examples(A3, G2):
    G = ReflectionSubgroup(A3, A3.simple_roots(["a", "c"]))
    v = is_parabolic(G)
    assert v.status == YES and v.certificate == A3.identity()
    H = ReflectionSubgroup(G2, [G2.simple_root("s"), G2.element("tstst").reflection_root()])
    assert is_parabolic(H).status == NO


def test_is_parabolic_chain_example():
    W = truncate(family("a1inf"), 4)
    G = ReflectionSubgroup(W, [W.vector({1: 1, 2: 1}), W.vector({3: 1, 4: 1})])
    v = is_parabolic(G)
    u2 = W.element([2, 1, 3])
    assert v.status == YES
    assert v.descriptor == ParabolicDescriptor(u2.inverse(), [3, 4])
    assert verify_certificate(W, v.certificate, G.canonical_roots)


def test_orbit_obstruction_in_infinite_group():
    W = truncate(family("ex45", 4), 5)
    r = W.element([2]).act(W.simple_root(1))
    v = is_parabolic(ReflectionSubgroup(W, [W.simple_root(1), r]))
    assert v.status == NO


def test_verdicts_agree_with_brute_force(B3):
    parabolic_sets = {frozenset(d.positive_roots()) for d in all_parabolics(B3)}
    P = sorted({r for d in all_parabolics(B3) for r in d.positive_roots()}, key=B3.root_key)
    for k in (1, 2, 3):
        for sub in itertools.combinations(P, k):
            G = ReflectionSubgroup(B3, sub)
            roots = frozenset(G.orbit_roots())
            assert (is_parabolic(G).status == YES) == (roots in parabolic_sets)


def test_maximal_finite_over():
    affine = CoxeterSystem(["a", "b", "c"], {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3})
    assert maximal_finite_parabolic_over(affine, ["a"]) == ["a", "b"]
    W = CoxeterSystem(["a", "b", "c"], {("a", "b"): 3, ("b", "c"): INF})
    assert maximal_finite_parabolic_over(W, ["c"]) == ["a", "c"]
    assert maximal_finite_parabolic_over(chain(3), ["a", "b", "c"]) == ["a", "b", "c"]
