"""Text format for Coxeter graphs.

    nodes a b c ;
    edge a b 3 ;      # labels 3, 4, ... or oo
    edge b c oo ;

Unlisted pairs get label 2.  The final ``;`` may be omitted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from coxkit.core import CoxeterSystem
from coxkit.numberfield import INF

_TOKEN = re.compile(r"\s+|#[^\n]*|;|[^\s;#]+")
_IDENT = re.compile(r"[A-Za-z_0-9][A-Za-z_0-9']*$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        chunk = m.group(0)
        if not chunk.isspace() and not chunk.startswith("#"):
            toks.append(_Tok(chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    toks.append(_Tok("<eof>", line, col))
    return toks


def _statements(toks: list[_Tok]):
    cur: list[_Tok] = []
    for t in toks:
        if t.text in (";", "<eof>"):
            if cur:
                yield cur, t
            cur = []
        else:
            cur.append(t)


def parse_label(text: str):
    if text == "oo":
        return INF
    if not text.isdigit():
        raise ValueError(f"bad label {text!r}")
    return int(text)


def parse_system(text: str) -> CoxeterSystem:
    """Parse the graph format into a CoxeterSystem; errors carry line/column."""
    nodes: list[str] = []
    labels: dict = {}
    seen_nodes = False
    for stmt, end in _statements(_tokenize(text)):
        head = stmt[0]
        if head.text == "nodes":
            if seen_nodes:
                raise ParseError("second 'nodes' statement", head.line, head.col)
            seen_nodes = True
            if len(stmt) == 1:
                raise ParseError("'nodes' needs at least one identifier", end.line, end.col)
            for t in stmt[1:]:
                if not _IDENT.match(t.text) or t.text in ("nodes", "edge", "oo"):
                    raise ParseError(f"bad node name {t.text!r}", t.line, t.col)
                if t.text in nodes:
                    raise ParseError(f"duplicate node {t.text!r}", t.line, t.col)
                nodes.append(t.text)
        elif head.text == "edge":
            if not seen_nodes:
                raise ParseError("'edge' before 'nodes'", head.line, head.col)
            if len(stmt) != 4:
                where = stmt[4] if len(stmt) > 4 else end
                raise ParseError("expected 'edge <id> <id> <label>'", where.line, where.col)
            a, b, lab = stmt[1:]
            for t in (a, b):
                if t.text not in nodes:
                    raise ParseError(f"unknown node {t.text!r}", t.line, t.col)
            if a.text == b.text:
                raise ParseError("edge from a node to itself", b.line, b.col)
            try:
                m = parse_label(lab.text)
            except ValueError:
                raise ParseError(f"bad label {lab.text!r}", lab.line, lab.col) from None
            if m != INF and m < 2:
                raise ParseError(f"label {m} < 2 on distinct pair", lab.line, lab.col)
            key = tuple(sorted((a.text, b.text), key=nodes.index))
            if key in labels and labels[key] != m:
                raise ParseError(f"conflicting labels for {key[0]}-{key[1]}", lab.line, lab.col)
            if m != 2:
                labels[key] = m
            else:
                labels.setdefault(key, 2)
        else:
            raise ParseError(f"unexpected {head.text!r}", head.line, head.col)
    if not seen_nodes:
        raise ParseError("missing 'nodes' statement", 1, 1)
    return CoxeterSystem(nodes, {k: v for k, v in labels.items() if v != 2})


_SURDS = {"r2": 2, "r3": 3, "r6": 6}
_TERM = re.compile(r"\s*([+-])?\s*((?:(?:\d+(?:/\d+)?|r[236])\s*\*?\s*)*)([A-Za-z_][A-Za-z_0-9']*|\d+)\s*")


def parse_root(W: CoxeterSystem, text: str):
    """A vector such as ``a + r2 b - 1/2 c`` in the simple-root basis of W.

    Coefficients are products of rationals and the tokens r2, r3, r6.
    """
    names = {v: k for k, v in W.names.items()}
    coeffs = {}
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty root literal", 1, 1)
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise ParseError(f"cannot read root literal at {text[pos:]!r}", 1, pos + 1)
        sign = -1 if m.group(1) == "-" else 1
        c = W.field(sign)
        for tok in re.findall(r"\d+(?:/\d+)?|r[236]", m.group(2)):
            c = c * (W.field.sqrt(_SURDS[tok]) if tok in _SURDS else W.field(tok))
        name = m.group(3)
        if name not in names:
            raise ParseError(f"unknown generator {name!r}", 1, m.start(3) + 1)
        g = names[name]
        coeffs[g] = coeffs.get(g, W.field.zero) + c
        pos = m.end()
    return W.vector(coeffs)


def parse_roots(W: CoxeterSystem, text: str) -> list:
    return [parse_root(W, part) for part in text.split(";") if part.strip()]


def parse_word(W: CoxeterSystem, text: str) -> list:
    """Space-separated generator names; ``e`` (or nothing) is the identity."""
    names = {v: k for k, v in W.names.items()}
    out = []
    for tok in text.split():
        if tok == "e" and "e" not in names:
            continue
        if tok not in names:
            raise ParseError(f"unknown generator {tok!r}", 1, text.index(tok) + 1)
        out.append(names[tok])
    return out


def parse_words(W: CoxeterSystem, text: str) -> list:
    return [parse_word(W, part) for part in text.split(";")]
