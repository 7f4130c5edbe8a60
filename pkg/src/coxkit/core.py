"""Coxeter systems, their geometric representation, roots and group elements.

Roots are plain tuples of FieldElem indexed like ``system.generators``
(coordinates in the simple-root basis).  Elements store the images of all
simple roots (``cols[j] = w . alpha_j``) together with the same data for
the inverse, so left and right descents are both read off directly.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

import networkx as nx

from coxkit.numberfield import INF, FieldContext, FieldElem, form_entry, make_context

Root = tuple  # tuple[FieldElem, ...]

POSITIVE = "positive"
NEGATIVE = "negative"
NOT_A_UNIT_ROOT = "not_a_unit_root"


class CoxeterError(ValueError):
    pass


class RootEnumeration(NamedTuple):
    roots: list
    saturated: bool
    depths: dict


def _label_key(m):
    return "oo" if m == INF else str(m)


class CoxeterSystem:
    """A finite-rank Coxeter system with its standard geometric representation.

    Parameters
    ----------
    generators : sequence of hashable
        Generator identifiers; their order is the declared order used for
        ShortLex normal forms and all tie-breaking.
    labels : mapping
        ``{(s, t): m}`` for pairs with ``m != 2``; ``m`` is an int >= 2 or
        ``INF``.  Unlisted distinct pairs default to 2.
    """

    def __init__(self, generators: Sequence[Hashable], labels: Mapping | None = None, names: Mapping | None = None):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise CoxeterError("duplicate generator")
        self.generators = gens
        self.index = {g: i for i, g in enumerate(gens)}
        names = dict(names or {})
        self.names = {g: names.get(g, str(g)) for g in gens}
        n = len(gens)
        m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (s, t), label in (labels or {}).items():
            if s not in self.index or t not in self.index:
                raise CoxeterError(f"unknown generator in pair {(s, t)!r}")
            i, j = self.index[s], self.index[t]
            if i == j:
                raise CoxeterError(f"diagonal label for {s!r}")
            if label != INF and (not isinstance(label, int) or label < 2):
                raise CoxeterError(f"invalid label {label!r} for {(s, t)!r}")
            if m[i][j] != 2 and m[i][j] != label:
                raise CoxeterError(f"asymmetric labels for {(s, t)!r}")
            m[i][j] = m[j][i] = label
        self.matrix = tuple(tuple(row) for row in m)
        self.field: FieldContext = make_context(x for row in m for x in row)
        ctx = self.field
        self.form = tuple(tuple(form_entry(ctx, x) for x in row) for row in m)
        # sparse rows of 2<alpha_s, alpha_t> for t != s
        self._twice_row = tuple(
            tuple((j, self.form[i][j] * 2) for j in range(n) if j != i and not self.form[i][j].is_zero())
            for i in range(n)
        )
        self._depth_cache: dict = {}
        self._identity = None

    @classmethod
    def from_matrix(cls, generators: Sequence[Hashable], matrix: Sequence[Sequence]) -> "CoxeterSystem":
        gens = list(generators)
        labels = {}
        for i, j in itertools.combinations(range(len(gens)), 2):
            if matrix[i][j] != matrix[j][i]:
                raise CoxeterError("Coxeter matrix is not symmetric")
            if matrix[i][j] != 2:
                labels[(gens[i], gens[j])] = matrix[i][j]
        return cls(gens, labels)

    # --- basic data ---
    @property
    def rank(self) -> int:
        return len(self.generators)

    def label(self, s, t):
        return self.matrix[self.index[s]][self.index[t]]

    def labels(self) -> dict:
        """Non-default labels ``{(s, t): m}`` with s before t."""
        out = {}
        for i, j in itertools.combinations(range(self.rank), 2):
            if self.matrix[i][j] != 2:
                out[(self.generators[i], self.generators[j])] = self.matrix[i][j]
        return out

    def restrict(self, subset: Iterable) -> "CoxeterSystem":
        """The standard parabolic subsystem on ``subset`` (declared order kept)."""
        keep = set(subset)
        gens = [g for g in self.generators if g in keep]
        return CoxeterSystem(
            gens, {k: v for k, v in self.labels().items() if k[0] in keep and k[1] in keep}, self.names
        )

    def __eq__(self, other):
        return isinstance(other, CoxeterSystem) and self.generators == other.generators and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.generators, self.matrix))

    def __repr__(self):
        nm = self.names
        edges = ", ".join(f"{nm[s]}-{nm[t]}:{_label_key(m)}" for (s, t), m in self.labels().items())
        return f"CoxeterSystem({[nm[g] for g in self.generators]}; {edges})"

    def to_dsl(self) -> str:
        nm = self.names
        lines = ["nodes " + " ".join(nm[g] for g in self.generators) + ";"]
        for (s, t), m in self.labels().items():
            lines.append(f"edge {nm[s]} {nm[t]} {_label_key(m)};")
        return "\n".join(lines)

    def _indices(self, subset: Iterable) -> list[int]:
        out = []
        for g in subset:
            if g not in self.index:
                raise CoxeterError(f"unknown generator {g!r}")
            out.append(self.index[g])
        return sorted(set(out))

    # --- vectors and roots ---
    def zero_vector(self) -> Root:
        return (self.field.zero,) * self.rank

    def simple_root(self, s) -> Root:
        if s not in self.index:
            raise CoxeterError(f"unknown generator {s!r}")
        return self._simple(self.index[s])

    def _simple(self, i: int) -> Root:
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.rank))

    def simple_roots(self, subset: Iterable | None = None) -> list[Root]:
        idx = range(self.rank) if subset is None else self._indices(subset)
        return [self._simple(i) for i in idx]

    def vector(self, coefficients: Mapping) -> Root:
        """Vector from ``{generator: coefficient}``."""
        v = [self.field.zero] * self.rank
        for g, c in coefficients.items():
            if g not in self.index:
                raise CoxeterError(f"unknown generator {g!r}")
            v[self.index[g]] = v[self.index[g]] + self.field(c)
        return tuple(v)

    def coefficients(self, v: Root) -> dict:
        return {g: c for g, c in zip(self.generators, v) if not c.is_zero()}

    def pairing(self, u: Root, v: Root) -> FieldElem:
        """The bilinear form <u, v>."""
        total = self.field.zero
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            acc = v[i]
            for j, b2 in self._twice_row[i]:
                if not v[j].is_zero():
                    acc = acc + b2 * v[j] * Fraction(1, 2)
            total = total + a * acc
        return total

    def pairing_simple(self, i: int, v: Root) -> FieldElem:
        """<alpha_i, v>."""
        acc = v[i]
        for j, b2 in self._twice_row[i]:
            if not v[j].is_zero():
                acc = acc + b2 * v[j] * Fraction(1, 2)
        return acc

    def simple_reflect(self, i: int, v: Root) -> Root:
        """s_i . v; only coordinate i changes."""
        new = -v[i]
        for j, b2 in self._twice_row[i]:
            if not v[j].is_zero():
                new = new - b2 * v[j]
        out = list(v)
        out[i] = new
        return tuple(out)

    def reflect(self, gamma: Root, v: Root) -> Root:
        """s_gamma . v = v - 2<gamma, v> gamma for a unit root gamma."""
        c = self.pairing(gamma, v) * 2
        if c.is_zero():
            return tuple(v)
        return tuple(a - c * g for a, g in zip(v, gamma))

    def root_sign(self, v: Root) -> int:
        """Sign of a root (all its nonzero coefficients share it)."""
        for a in v:
            if not a.is_zero():
                return a.sign()
        return 0

    def is_positive(self, v: Root) -> bool:
        return self.root_sign(v) > 0

    def positive_rep(self, v: Root) -> Root:
        return v if self.root_sign(v) > 0 else tuple(-a for a in v)

    def classify_root(self, v: Root) -> str:
        signs = {a.sign() for a in v if not a.is_zero()}
        if not signs or len(signs) > 1:
            return NOT_A_UNIT_ROOT
        if self.pairing(v, v) != 1:
            return NOT_A_UNIT_ROOT
        return POSITIVE if signs == {1} else NEGATIVE

    def supp(self, v: Root) -> set:
        return {g for g, a in zip(self.generators, v) if not a.is_zero()}

    def supp_plus(self, v: Root) -> set:
        return {g for g, a in zip(self.generators, v) if not a.is_zero() and a.sign() > 0}

    def simple_index(self, v: Root) -> int | None:
        """Index i when v = alpha_i, else None."""
        hit = None
        for i, a in enumerate(v):
            if a.is_zero():
                continue
            if hit is not None or a != 1:
                return None
            hit = i
        return hit

    def depth(self, gamma: Root) -> int:
        """Depth of a positive root: number of simple reflections needed to reach a simple root, plus one."""
        cached = self._depth_cache.get(gamma)
        if cached is not None:
            return cached
        path = []
        v = gamma
        while True:
            known = self._depth_cache.get(v)
            if known is not None:
                d = known
                break
            if self.simple_index(v) is not None:
                d = 1
                self._depth_cache[v] = 1
                break
            step = next((i for i in range(self.rank) if self.pairing_simple(i, v).sign() > 0), None)
            if step is None:
                raise CoxeterError("vector is not a positive root")
            path.append(v)
            v = self.simple_reflect(step, v)
            if self.root_sign(v) <= 0:
                raise CoxeterError("vector is not a positive root")
        for k, u in enumerate(reversed(path), start=1):
            self._depth_cache[u] = d + k
        return self._depth_cache[gamma]

    def root_key(self, v: Root):
        # larger early coefficients sort first, so simple roots follow declared order
        return tuple(tuple(-c for c in a.coeffs) for a in v)

    def format_root(self, v: Root) -> str:
        parts = []
        for g, a in zip(self.generators, v):
            if a.is_zero():
                continue
            text, name = str(a), self.names[g]
            if text == "1":
                term = name
            elif text == "-1":
                term = f"-{name}"
            elif " " in text or "c" in text:
                term = f"({text}) {name}"
            else:
                term = f"{text} {name}"
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def enumerate_positive_roots(self, depth_bound: int, limit: int | None = None) -> RootEnumeration:
        """Positive roots of depth <= depth_bound, found level by level.

        ``saturated`` is true when some level below the bound produced no
        new root, i.e. the returned set is all of the positive roots.
        """
        if depth_bound < 1:
            raise CoxeterError("depth_bound must be >= 1")
        level = self.simple_roots()
        seen = {v: 1 for v in level}
        order = list(level)
        d = 1
        saturated = False
        while True:
            nxt = []
            for v in level:
                for i in range(self.rank):
                    if self.pairing_simple(i, v).sign() < 0:
                        u = self.simple_reflect(i, v)
                        if u not in seen:
                            seen[u] = d + 1
                            nxt.append(u)
            if not nxt:
                saturated = True
                break
            if d + 1 > depth_bound or (limit is not None and len(order) + len(nxt) > limit):
                break
            d += 1
            order.extend(nxt)
            level = nxt
        depths = {v: seen[v] for v in order}
        for v, dv in depths.items():
            self._depth_cache.setdefault(v, dv)
        return RootEnumeration(order, saturated, depths)

    def permutation_model(self) -> "PermutationModel":
        """Elements of a finite W as permutations of its roots (cached)."""
        pm = getattr(self, "_perm_model", None)
        if pm is None:
            pm = self._perm_model = PermutationModel(self)
        return pm

    # --- elements ---
    def identity(self) -> "Element":
        if self._identity is None:
            cols = tuple(self._simple(i) for i in range(self.rank))
            self._identity = Element(self, cols, cols, ())
        return self._identity

    def element(self, word: Iterable) -> "Element":
        """Element from a word of generator identifiers (reduced on demand)."""
        w = self.identity()
        for g in word:
            if g not in self.index:
                raise CoxeterError(f"unknown generator {g!r}")
            w = w.right_mul_simple(self.index[g])
        return w

    def generator(self, s) -> "Element":
        return self.element([s])

    def reflection(self, gamma: Root) -> "Element":
        cols = tuple(self.reflect(gamma, self._simple(j)) for j in range(self.rank))
        return Element(self, cols, cols, None)

    def graph(self) -> "CoxeterGraph":
        return CoxeterGraph.of(self)

    def odd_components(self) -> list[list]:
        return odd_components(self.graph())


class Element:
    """An element of W, identified by its exact action on the simple roots."""

    __slots__ = ("system", "cols", "inv_cols", "_word", "_hash")

    def __init__(self, system: CoxeterSystem, cols: tuple, inv_cols: tuple, word):
        self.system = system
        self.cols = cols
        self.inv_cols = inv_cols
        self._word = word
        self._hash = None

    def __eq__(self, other):
        return isinstance(other, Element) and self.system is other.system and self.cols == other.cols

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.cols)
        return self._hash

    def __repr__(self):
        return f"Element({self.format()})"

    def format(self) -> str:
        nm = self.system.names
        return " ".join(nm[g] for g in self.word) or "e"

    # --- multiplication ---
    def right_mul_simple(self, i: int) -> "Element":
        """w s_i."""
        W = self.system
        cols = list(self.cols)
        ci = cols[i]
        for j in range(W.rank):
            if j == i:
                continue
            b2 = W.form[i][j]
            if not b2.is_zero():
                cols[j] = tuple(a - (b2 * 2) * c for a, c in zip(cols[j], ci))
        cols[i] = tuple(-a for a in ci)
        inv = tuple(W.simple_reflect(i, c) for c in self.inv_cols)
        return Element(W, tuple(cols), inv, None)

    def left_mul_simple(self, i: int) -> "Element":
        """s_i w."""
        return Element(self.system, self.inv_cols, self.cols, None).right_mul_simple(i).inverse()

    def __mul__(self, other: "Element") -> "Element":
        if other.system is not self.system:
            raise CoxeterError("elements of different systems")
        return Element(self.system, _compose(self.cols, other.cols, self.system), _compose(other.inv_cols, self.inv_cols, self.system), None)

    def inverse(self) -> "Element":
        return Element(self.system, self.inv_cols, self.cols, None)

    def conjugate(self, g: "Element") -> "Element":
        """g self g^-1."""
        return g * self * g.inverse()

    def act(self, v: Root) -> Root:
        """w . v."""
        return _apply(self.cols, v, self.system)

    def act_inverse(self, v: Root) -> Root:
        return _apply(self.inv_cols, v, self.system)

    # --- descents and normal form ---
    def is_identity(self) -> bool:
        return self == self.system.identity()

    def right_descents(self) -> list:
        """Generators s with l(ws) < l(w), i.e. w . alpha_s negative."""
        W = self.system
        return [W.generators[i] for i in range(W.rank) if W.root_sign(self.cols[i]) < 0]

    def left_descents(self) -> list:
        W = self.system
        return [W.generators[i] for i in range(W.rank) if W.root_sign(self.inv_cols[i]) < 0]

    def has_right_descent(self, s) -> bool:
        W = self.system
        return W.root_sign(self.cols[W.index[s]]) < 0

    @property
    def word(self) -> tuple:
        """ShortLex normal form (declared generator order), by greedy left-descent extraction."""
        if self._word is None:
            W = self.system
            letters = []
            cur = self
            while True:
                first = next((i for i in range(W.rank) if W.root_sign(cur.inv_cols[i]) < 0), None)
                if first is None:
                    break
                letters.append(W.generators[first])
                cur = cur.left_mul_simple(first)
            self._word = tuple(letters)
        return self._word

    def __len__(self) -> int:
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def support(self) -> set:
        return set(self.word)

    def is_reflection(self) -> bool:
        return self.reflection_root() is not None

    def reflection_root(self) -> Root | None:
        """The positive root gamma with self == s_gamma, if any."""
        W = self.system
        w = self.word
        if not w or len(w) % 2 == 0:
            return None
        k = len(w) // 2
        prefix = W.element(w[:k])
        gamma = W.positive_rep(prefix.act(W.simple_root(w[k])))
        return gamma if W.reflection(gamma) == self else None


def _apply(cols: tuple, v: Root, W: CoxeterSystem) -> Root:
    out = [W.field.zero] * W.rank
    for j, a in enumerate(v):
        if a.is_zero():
            continue
        col = cols[j]
        if a == 1:
            out = [x + y for x, y in zip(out, col)]
        else:
            out = [x + a * y for x, y in zip(out, col)]
    return tuple(out)


def _compose(left: tuple, right: tuple, W: CoxeterSystem) -> tuple:
    # columns of (left o right): left applied to each column of right
    return tuple(_apply(left, c, W) for c in right)


def enumerate_group(W: CoxeterSystem, generators: Sequence[Element] | None = None, limit: int | None = None) -> list[Element]:
    """BFS closure of the given generators (default: the simple reflections).

    Raises CoxeterError when more than ``limit`` elements appear.
    """
    e = W.identity()
    if generators is None:
        gens_idx = list(range(W.rank))
        seen = {e}
        order = [e]
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for i in gens_idx:
                # grow only along right ascents: every element is reached once
                if W.root_sign(x.cols[i]) < 0:
                    continue
                y = x.right_mul_simple(i)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
                    if limit is not None and len(order) > limit:
                        raise CoxeterError(f"group has more than {limit} elements")
        return order
    gens = list(generators)
    seen = {e}
    order = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
                if limit is not None and len(order) > limit:
                    raise CoxeterError(f"group has more than {limit} elements")
    return order


class PermutationModel:
    """A finite W acting on its root set; elements become index tuples.

    Roots are numbered 0..2N-1 with positive roots first.  Composition of
    permutations is much cheaper than exact matrix products, which makes
    brute-force closures over small groups fast.
    """

    def __init__(self, W: CoxeterSystem):
        en = W.enumerate_positive_roots(100_000)
        if not en.saturated:
            raise CoxeterError("permutation model needs a finite group")
        self.system = W
        self.positive = list(en.roots)
        self.roots = self.positive + [tuple(-a for a in r) for r in self.positive]
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.n_positive = len(self.positive)
        self.identity = tuple(range(len(self.roots)))
        self._refl = {}

    def of_element(self, w: Element) -> tuple:
        return tuple(self.index[w.act(r)] for r in self.roots)

    def reflection(self, gamma: Root) -> tuple:
        gamma = self.system.positive_rep(gamma)
        p = self._refl.get(gamma)
        if p is None:
            W = self.system
            p = self._refl[gamma] = tuple(self.index[W.reflect(gamma, r)] for r in self.roots)
        return p

    @staticmethod
    def compose(p: tuple, q: tuple) -> tuple:
        """p o q (apply q first)."""
        return tuple(p[i] for i in q)

    @staticmethod
    def inverse(p: tuple) -> tuple:
        out = [0] * len(p)
        for i, j in enumerate(p):
            out[j] = i
        return tuple(out)

    def closure(self, gens, limit: int | None = None) -> set:
        gens = list(gens)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = tuple(x[i] for i in g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    if limit is not None and len(seen) > limit:
                        raise CoxeterError(f"group has more than {limit} elements")
        return seen

    def reflection_roots(self, perms) -> list[Root]:
        """Positive roots gamma with s_gamma among ``perms``."""
        members = perms if isinstance(perms, (set, frozenset)) else set(perms)
        return [r for r in self.positive if self.reflection(r) in members]

    def is_reflection(self, p: tuple) -> Root | None:
        for r in self.positive:
            if self.reflection(r) == p:
                return r
        return None


def coset_min(w: Element, subset: Iterable) -> tuple[Element, Element]:
    """Split w = w^I . w_I with w^I the shortest element of w W_I.

    Right descents in I are stripped one at a time (smallest generator
    first); at the end w^I . alpha_s is positive for every s in I.
    """
    W = w.system
    idx = W._indices(subset)
    cur = w
    tail: list = []
    while True:
        hit = next((i for i in idx if W.root_sign(cur.cols[i]) < 0), None)
        if hit is None:
            break
        cur = cur.right_mul_simple(hit)
        tail.append(W.generators[hit])
    w_I = W.element(reversed(tail))
    return cur, w_I


def is_coset_minimal(w: Element, subset: Iterable) -> bool:
    W = w.system
    return all(W.root_sign(w.cols[i]) > 0 for i in W._indices(subset))


@dataclass(frozen=True)
class CoxeterGraph:
    """Coxeter graph: vertices S, edges with 3 <= m <= oo; odd edges have odd finite labels."""

    vertices: tuple
    edges: tuple  # ((s, t, m), ...)

    @classmethod
    def of(cls, W: CoxeterSystem) -> "CoxeterGraph":
        edges = tuple((s, t, m) for (s, t), m in W.labels().items() if m != 2)
        return cls(W.generators, edges)

    @property
    def odd_edges(self) -> tuple:
        return tuple((s, t, m) for s, t, m in self.edges if m != INF and m % 2 == 1)

    def to_networkx(self, odd_only: bool = False) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for s, t, m in self.odd_edges if odd_only else self.edges:
            g.add_edge(s, t, label=m)
        return g

    def components(self) -> list[list]:
        return _ordered_components(self.to_networkx(), self.vertices)


def _ordered_components(g: nx.Graph, order: Sequence) -> list[list]:
    pos = {v: i for i, v in enumerate(order)}
    comps = [sorted(c, key=pos.__getitem__) for c in nx.connected_components(g)]
    return sorted(comps, key=lambda c: pos[c[0]])


def odd_components(graph: CoxeterGraph) -> list[list]:
    """Connected components of the odd Coxeter graph, in declared order."""
    return _ordered_components(graph.to_networkx(odd_only=True), graph.vertices)


def check_odd_support(w: Element, s) -> bool:
    """Whether supp(w . alpha_s) meets the odd component of s."""
    W = w.system
    comp = next(c for c in W.odd_components() if s in c)
    return bool(W.supp(w.act(W.simple_root(s))) & set(comp))


def reflect(W: CoxeterSystem, gamma: Root, v: Root) -> Root:
    return W.reflect(gamma, v)


def classify_root(W: CoxeterSystem, v: Root) -> str:
    return W.classify_root(v)


def enumerate_positive_roots(W: CoxeterSystem, depth_bound: int) -> RootEnumeration:
    return W.enumerate_positive_roots(depth_bound)


def element_from_word(W: CoxeterSystem, word: Iterable) -> Element:
    return W.element(word)


def all_subsets(items: Sequence, max_size: int | None = None) -> Iterator[tuple]:
    top = len(items) if max_size is None else min(max_size, len(items))
    for k in range(top + 1):
        yield from itertools.combinations(items, k)
