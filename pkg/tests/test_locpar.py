import pytest

from coxkit.core import CoxeterSystem, enumerate_group
from coxkit.dsl import parse_system
from coxkit.families import family
from coxkit.locpar import (
    COUNTEREXAMPLE,
    FULLY_CERTIFIED,
    finite_type_recognize,
    is_locally_parabolic,
    locally_finite_classify,
    lp_closure,
)
from coxkit.numberfield import INF
from coxkit.refsub import ReflectionSubgroup

from conftest import chain


@pytest.mark.parametrize(
    "text, name",
    [
        ("nodes a", "A1"),
        ("nodes a b c; edge a b 3; edge b c 3", "A3"),
        ("nodes a b c; edge a b 4; edge b c 4", "infinite"),
        ("nodes a b c d; edge a b 3; edge b c 4; edge c d 3", "F4"),
        ("nodes a b c d; edge a b 3; edge b c 3; edge b d 3", "D4"),
        ("nodes a b c; edge a b 5; edge b c 3", "H3"),
        ("nodes a b; edge a b 6", "G2"),
        ("nodes a b; edge a b 8", "I2(8)"),
        ("nodes a b c", "A1 x A1 x A1"),
        ("nodes a b c; edge a b 3; edge b c 3; edge a c 3", "infinite"),
        ("nodes a b c d e f; edge a b 3; edge b c 3; edge c d 3; edge d e 3; edge c f 3", "E6"),
    ],
)
def test_recognition(text, name):
    assert str(finite_type_recognize(parse_system(text))) == name


@pytest.mark.parametrize("W", [chain(3), chain(3, [4, 3]), chain(3, [5, 3]), chain(2, [6]), CoxeterSystem(list("abc"), {("a", "b"): 3})])
def test_order_matches_enumeration(W):
    assert finite_type_recognize(W).order == len(enumerate_group(W))


def test_family_classification():
    assert locally_finite_classify(family("a1inf")).verdict == "locally finite, type A_oo<1>"
    c = locally_finite_classify(family("binf"))
    assert c.locally_finite and c.types == ["B_oo"]
    assert locally_finite_classify(family("dinf")).locally_finite
    assert locally_finite_classify(family("a2inf")).locally_finite
    assert locally_finite_classify(family("ex45", INF)).locally_finite is False
    assert locally_finite_classify(parse_system("nodes a b; edge a b oo")).locally_finite is False


def test_locally_parabolic(A3, G2):
    G = ReflectionSubgroup(A3, A3.simple_roots(["a", "b"]))
    assert is_locally_parabolic(G).verdict == FULLY_CERTIFIED
    H = ReflectionSubgroup(G2, [G2.simple_root("s"), G2.element("tstst").reflection_root()])
    rep = is_locally_parabolic(H)
    assert rep.verdict == COUNTEREXAMPLE and len(rep.counterexample) == 2


def test_lp_closure(A2):
    c = lp_closure(A2, [A2.generator("a")])
    assert c.status == "computed" and c.descriptor.rank == 1
    c = lp_closure(A2, [A2.reflection(A2.vector({"a": 1, "b": 1}))])
    assert c.descriptor.canonical_roots == [A2.vector({"a": 1, "b": 1})]
    W = chain(3, [4, 4])
    assert lp_closure(W, [W.element("abc")]).status == "not_stabilized"
