import pytest

from coxkit.dsl import ParseError, parse_root, parse_roots, parse_system, parse_word
from coxkit.numberfield import INF


def test_basic_graphs():
    W = parse_system("nodes a b; edge a b 3")
    assert W.generators == ("a", "b") or list(W.generators) == ["a", "b"]
    assert W.label("a", "b") == 3
    G2 = parse_system("nodes s t; edge s t 6")
    assert G2.label("s", "t") == 6
    W = parse_system("nodes a b c; edge a b 4; edge b c oo")
    assert W.label("a", "c") == 2 and W.label("b", "c") == INF


def test_comments_and_layout():
    text = "# the A3 graph\nnodes a b c ;\nedge a b 3 ;  # first\n\nedge b c 3\n"
    assert parse_system(text).labels() == {("a", "b"): 3, ("b", "c"): 3}


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("nodes a a", 1, 9),
        ("nodes a b;\nedge a c 3", 2, 8),
        ("nodes a b\nedge a c 3", 2, 1),
        ("nodes a b; edge a a 3", 1, 19),
        ("nodes a b; edge a b 1", 1, 21),
        ("nodes a b; edge a b x", 1, 21),
        ("nodes a b; edge a b 3; edge b a 4", 1, 33),
        ("edge a b 3; nodes a b", 1, 1),
        ("", 1, 1),
        ("nodes a b; edge a b", 1, 20),
    ],
)
def test_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse_system(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_root_literals():
    W = parse_system("nodes a b; edge a b 4")
    r2 = W.field.sqrt(2)
    assert parse_root(W, "a + r2 b") == (W.field.one, r2)
    assert parse_root(W, "1/2 a - b") == (W.field(1) / 2, -W.field.one)
    assert len(parse_roots(W, "a; b; a + r2 b")) == 3
    with pytest.raises(ParseError):
        parse_root(W, "a + q")
    with pytest.raises(ParseError):
        parse_root(W, "a b")


def test_words():
    W = parse_system("nodes a b; edge a b 3")
    assert parse_word(W, "a b a") == ["a", "b", "a"]
    assert parse_word(W, "e") == []
