import itertools
import random

import pytest

from coxkit.core import CoxeterError, CoxeterSystem, enumerate_group
from coxkit.families import family, truncate
from coxkit.numberfield import INF
from coxkit.refsub import (
    NO_IF_SIMPLE,
    YES,
    ReflectionSubgroup,
    _all_positive_roots,
    all_reflection_subgroups,
    canonical_generators,
    dihedral_canonical,
    pi_oracle,
    reflection_membership,
)

from conftest import chain


def test_canonical_examples(A2, A3, G2):
    a, b = A2.simple_roots()
    ab = A2.vector({"a": 1, "b": 1})
    assert canonical_generators(A2, [ab]) == [ab]
    assert canonical_generators(A2, [a, ab]) == [a, b]
    assert canonical_generators(A2, [a, b, ab]) == [a, b]
    assert canonical_generators(A3, A3.simple_roots()) == A3.simple_roots()
    s = G2.simple_root("s")
    tstst = G2.element("tstst").reflection_root()
    assert set(canonical_generators(G2, [s, tstst])) == {s, tstst}
    assert G2.pairing(s, tstst).is_zero()


def test_nonpositive_generator_rejected(A2):
    with pytest.raises(CoxeterError):
        canonical_generators(A2, [A2.vector({"a": -1})])


@pytest.mark.parametrize("W", [chain(2), chain(3), chain(3, [4, 3]), chain(2, [8]), chain(3, [5, 3])], ids=str)
def test_matches_oracle_on_pairs_and_triples(W):
    P = _all_positive_roots(W)
    for k in (1, 2, 3):
        for sub in itertools.combinations(P, k):
            assert set(canonical_generators(W, sub)) == set(pi_oracle(W, sub))


def test_infinite_dihedral_pairs():
    W = chain(2, [INF])
    a, b = W.simple_roots()
    # 2a + b = s_a . b, so <s_a, s_{2a+b}> is all of W
    assert set(dihedral_canonical(W, a, W.vector({"a": 2, "b": 1}))) == {a, b}
    # <b, 3a + 2b> = -1: already canonical, an index-3 subgroup
    r = W.vector({"a": 3, "b": 2})
    assert W.pairing(b, r) == -1
    assert set(canonical_generators(W, [b, r])) == {b, r}
    # {3a + 2b, 5a + 4b} reduces to {a, a + 2b}; check both generate the same group by short words
    old = [r, W.vector({"a": 5, "b": 4})]
    new = canonical_generators(W, old)
    assert set(new) == {a, W.vector({"a": 1, "b": 2})}
    assert _short_words(W, old) & {W.reflection(x) for x in new} == {W.reflection(x) for x in new}
    assert _short_words(W, new) & {W.reflection(x) for x in old} == {W.reflection(x) for x in old}


def _short_words(W, roots, length=5):
    gens = [W.reflection(x) for x in roots]
    seen = {W.identity()}
    layer = seen
    for _ in range(length):
        layer = {g * h for g in layer for h in gens} - seen
        seen |= layer
    return seen


def test_chain_truncation_subgroups():
    W = truncate(family("a1inf"), 8)
    psi = [W.vector({2 * j - 1: 1, 2 * j: 1}) for j in range(1, 4)]
    G = ReflectionSubgroup(W, psi)
    assert set(G.canonical_roots) == set(psi)
    M = G.induced_matrix()
    assert [M[0][1], M[1][2], M[0][2]] == [3, 3, 2]


def test_membership(A2):
    a, b = A2.simple_roots()
    ab = A2.vector({"a": 1, "b": 1})
    G = ReflectionSubgroup(A2, [a, ab])
    assert reflection_membership(G, a).status == YES
    m = reflection_membership(G, b)
    assert m.status == YES and m.element.act(m.root) in (b, tuple(-x for x in b))
    H = ReflectionSubgroup(A2, [ab])
    assert reflection_membership(H, a).status == NO_IF_SIMPLE


def test_induced_matrices(A2, G2):
    assert ReflectionSubgroup(A2, A2.simple_roots()).induced_matrix() == [[1, 3], [3, 1]]
    H = ReflectionSubgroup(G2, [G2.simple_root("s"), G2.element("tstst").reflection_root()])
    assert H.induced_matrix() == [[1, 2], [2, 1]]


def test_subgroup_orders_agree_with_closure(B3):
    rng = random.Random(0)
    P = _all_positive_roots(B3)
    for _ in range(30):
        sub = rng.sample(P, rng.randint(1, 4))
        G = ReflectionSubgroup(B3, sub)
        direct = enumerate_group(B3, [B3.reflection(r) for r in sub])
        assert len(G.elements()) == len(direct)


def test_all_reflection_subgroups_A3(A3):
    subs = all_reflection_subgroups(A3)
    # trivial, 6 of type A1, 3 of type A1xA1, 4 of type A2, W
    assert len(subs) == 15
    assert sorted(G.rank for G in subs).count(2) == 7
