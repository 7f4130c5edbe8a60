"""Reflection subgroups and their canonical simple systems.

A reflection subgroup G is given by finitely many positive roots (the
reflections generating it).  ``canonical_generators`` computes Pi(G) by
pairwise dihedral reduction: every pair {beta, gamma} in the working set is
replaced by the canonical pair of the dihedral subgroup <s_beta, s_gamma>
until every pair is already canonical.  A set in which every pair is the
canonical pair of the dihedral group it generates is the canonical simple
system of the whole group (Dyer's pairwise criterion), so that is the
stopping condition.  ``pi_oracle`` is an independent brute-force version
used in the tests.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from coxkit import linalg
from coxkit.core import CoxeterError, CoxeterSystem, Element, Root, enumerate_group
from coxkit.numberfield import INF, FieldTooSmallError

YES = "yes"
NO_IF_SIMPLE = "no_if_simple"
UNKNOWN = "unknown"

DIHEDRAL_BOUND = 10_000


class UndeterminedLabel(CoxeterError):
    pass


def root_order_key(W: CoxeterSystem, v: Root):
    return (W.depth(v), W.root_key(v))


def sort_roots(W: CoxeterSystem, roots) -> list:
    return sorted(roots, key=lambda v: root_order_key(W, v))


def _combo(beta: Root, gamma: Root, x, y) -> Root:
    return tuple(x * b + y * g for b, g in zip(beta, gamma))


def dihedral_canonical(W: CoxeterSystem, beta: Root, gamma: Root) -> tuple[Root, Root]:
    """Canonical roots of the dihedral reflection subgroup <s_beta, s_gamma>.

    Roots of the subgroup live in the plane spanned by beta and gamma and
    are tracked there by coordinates (x, y) for x beta + y gamma.
    """
    if beta == gamma:
        raise CoxeterError("dihedral_canonical needs two distinct roots")
    ctx = W.field
    c = W.pairing(beta, gamma)
    if c <= -1:
        return beta, gamma
    one, zero = ctx.one, ctx.zero
    c2 = c * 2

    def s_b(p):
        return (-p[0] - c2 * p[1], p[1])

    def s_g(p):
        return (p[0], -p[1] - c2 * p[0])

    def sign(p):
        return W.root_sign(_combo(beta, gamma, p[0], p[1]))

    if c < 1:
        # positive definite plane: the subgroup is finite, enumerate its roots
        start = [(one, zero), (zero, one)]
        seen = set(start)
        queue = deque(start)
        while queue:
            p = queue.popleft()
            for q in (s_b(p), s_g(p)):
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
                    if len(seen) > DIHEDRAL_BOUND:
                        raise CoxeterError("dihedral orbit did not close")
        # beta, gamma at angle pi - pi/m (m = half the orbit) are the extreme
        # positive roots of the plane, so the pair is already canonical
        if c.sign() <= 0:
            try:
                if c2 == -ctx.cos_multiple(len(seen) // 2):
                    return beta, gamma
            except FieldTooSmallError:
                pass
        pos = [p for p in seen if sign(p) > 0]

        def det(p, q):
            return p[0] * q[1] - p[1] * q[0]

        first = next(p for p in pos if all(det(p, q).sign() >= 0 for q in pos))
        last = next(p for p in pos if all(det(p, q).sign() <= 0 for q in pos))
        out = {first, last}
        if out == {(one, zero), (zero, one)}:
            return beta, gamma
        d1, d2 = (_combo(beta, gamma, *p) for p in (first, last))
        return tuple(sort_roots(W, (d1, d2)))

    # c >= 1: a = beta, b = -gamma is a simple system of an infinite dihedral
    # group.  Walk the two chains of its positive roots; ambient positivity
    # changes sign exactly once along them.
    a, b = (one, zero), (zero, -one)
    a_prev = b_prev = None
    a_cur, b_cur = a, b
    for k in range(1, DIHEDRAL_BOUND):
        if sign(a_cur) < 0:
            pair = (_combo(beta, gamma, *a_prev), _combo(beta, gamma, -a_cur[0], -a_cur[1]))
            return tuple(sort_roots(W, pair))
        if sign(b_cur) > 0:
            pair = (_combo(beta, gamma, *b_cur), _combo(beta, gamma, -b_prev[0], -b_prev[1]))
            return tuple(sort_roots(W, pair))
        a_prev, b_prev = a_cur, b_cur
        # a_k = s_a s_b s_a ... (k letters) applied to a or b; s_{-gamma} acts as s_gamma
        a_cur = _alternate((s_b, s_g), k, a if k % 2 == 0 else b)
        b_cur = _alternate((s_g, s_b), k, b if k % 2 == 0 else a)
    raise CoxeterError("dihedral reduction did not terminate")


def _alternate(ops, length, p):
    for i in reversed(range(length)):
        p = ops[i % 2](p)
    return p


def is_canonical_pair(W: CoxeterSystem, beta: Root, gamma: Root) -> bool:
    return set(dihedral_canonical(W, beta, gamma)) == {beta, gamma}


def canonical_generators(W: CoxeterSystem, roots) -> list[Root]:
    """Pi(<s_r : r in roots>), sorted by (depth, coefficients)."""
    work = set()
    for r in roots:
        r = tuple(r)
        if W.root_sign(r) <= 0:
            raise CoxeterError(f"generating root {W.format_root(r)} is not positive")
        work.add(r)
    R = sort_roots(W, work)
    memo: dict = {}
    while True:
        for i, j in itertools.combinations(range(len(R)), 2):
            key = (R[i], R[j])
            d = memo.get(key)
            if d is None:
                d = memo[key] = dihedral_canonical(W, R[i], R[j])
            if set(d) != {R[i], R[j]}:
                R = sort_roots(W, (set(R) - {R[i], R[j]}) | set(d))
                break
        else:
            return R


def subgroup_elements(W: CoxeterSystem, roots, limit: int | None = 100_000) -> list[Element]:
    gens = [W.reflection(r) for r in roots]
    return enumerate_group(W, gens, limit=limit)


def positive_roots_of_elements(W: CoxeterSystem, elements, all_positive) -> list[Root]:
    """{gamma in Phi+ : s_gamma in the given element set}."""
    members = set(elements)
    return [r for r in all_positive if W.reflection(r) in members]


def _all_positive_roots(W: CoxeterSystem) -> list[Root]:
    en = W.enumerate_positive_roots(10_000)
    if not en.saturated:
        raise CoxeterError("ambient group is not finite")
    return en.roots


def in_open_cone(W: CoxeterSystem, gamma: Root, others) -> bool:
    """Whether gamma is a positive combination of some of ``others``.

    By Caratheodory it suffices to look at linearly independent subsets.
    """
    ctx = W.field
    # nonnegative vectors can only combine to gamma from inside its support
    zero_at = [i for i, a in enumerate(gamma) if a.is_zero()]
    others = [r for r in others if all(r[i].is_zero() for i in zero_at)]
    top = min(len(others), W.rank - len(zero_at))
    for k in range(1, top + 1):
        for sub in itertools.combinations(others, k):
            if linalg.rank(sub, ctx) < k:
                continue
            x = linalg.solve(sub, gamma, ctx)
            if x is not None and all(c.sign() >= 0 for c in x):
                return True
    return False


_ORACLE_CACHE: dict = {}


def pi_oracle(W: CoxeterSystem, roots) -> list[Root]:
    """Pi(G) straight from the definition, for finite W."""
    pm = W.permutation_model()
    elems = pm.closure(pm.reflection(r) for r in roots)
    phi_g = pm.reflection_roots(elems)
    key = (W, frozenset(phi_g))
    if key in _ORACLE_CACHE:
        return list(_ORACLE_CACHE[key])
    out = []
    for g in phi_g:
        others = [r for r in phi_g if r != g]
        if not in_open_cone(W, g, others):
            out.append(g)
    out = sort_roots(W, out)
    _ORACLE_CACHE[key] = tuple(out)
    return out


@dataclass
class Membership:
    status: str
    element: Element | None = None
    root: Root | None = None


def reflection_membership(G: "ReflectionSubgroup", gamma: Root, depth_bound: int = 8) -> Membership:
    """Decide s_gamma in G: exactly when gamma is simple, by bounded orbit search otherwise."""
    W = G.ambient
    gamma = W.positive_rep(tuple(gamma))
    pi = G.canonical_roots
    if gamma in pi:
        return Membership(YES, W.identity(), gamma)
    if W.simple_index(gamma) is not None:
        # Pi(G) meets Phi(W_I) inside Pi(W_I); for I = {s} that is alpha_s itself
        return Membership(NO_IF_SIMPLE)
    refl = [(W.reflection(d), d) for d in pi]
    frontier = [(W.identity(), d) for d in pi]
    seen = {d for d in pi}
    for _ in range(depth_bound):
        nxt = []
        for g, d in frontier:
            for r, _rd in refl:
                h = r * g
                v = W.positive_rep(h.act(d))
                if v == gamma:
                    return Membership(YES, h, d)
                if v not in seen:
                    seen.add(v)
                    nxt.append((h, d))
        frontier = nxt
        if not frontier:
            return Membership(NO_IF_SIMPLE if W.simple_index(gamma) is not None else "no", None, None)
    return Membership(UNKNOWN)


def induced_coxeter_matrix(W: CoxeterSystem, pi: list, order_bound: int = 64) -> list[list]:
    """Coxeter matrix of (G, S(G)) read off the form on Pi(G)."""
    n = len(pi)
    out = [[1] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        c = W.pairing(pi[i], pi[j])
        m = _label_from_form(W, c, order_bound)
        out[i][j] = out[j][i] = m
    return out


def _label_from_form(W: CoxeterSystem, c, order_bound: int):
    if c.is_zero():
        return 2
    if c <= -1:
        return INF
    for k in range(3, order_bound + 1):
        try:
            target = -(W.field.cos_multiple(k) / 2)
        except FieldTooSmallError:
            continue
        if c == target:
            return k
    raise UndeterminedLabel(f"form value {c} matches no -cos(pi/k) with k <= {order_bound}")


@dataclass(eq=False)
class ReflectionSubgroup:
    """Subgroup of ``ambient`` generated by the reflections in ``generating_roots``."""

    ambient: CoxeterSystem
    generating_roots: tuple
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.generating_roots = tuple(tuple(r) for r in self.generating_roots)

    @classmethod
    def from_canonical(cls, W: CoxeterSystem, pi, label: str = "") -> "ReflectionSubgroup":
        G = cls(W, tuple(pi), label)
        G._cache["pi"] = sort_roots(W, pi)
        return G

    @property
    def canonical_roots(self) -> list[Root]:
        if "pi" not in self._cache:
            self._cache["pi"] = canonical_generators(self.ambient, self.generating_roots)
        return self._cache["pi"]

    @property
    def rank(self) -> int:
        return len(self.canonical_roots)

    def canonical_reflections(self) -> list[Element]:
        return [self.ambient.reflection(r) for r in self.canonical_roots]

    def induced_matrix(self, order_bound: int = 64):
        return induced_coxeter_matrix(self.ambient, self.canonical_roots, order_bound)

    def elements(self, limit: int | None = 100_000) -> list[Element]:
        return subgroup_elements(self.ambient, self.canonical_roots, limit)

    def contains_subgroup(self, other: "ReflectionSubgroup") -> bool:
        """H <= G iff adding Pi(H) to Pi(G) does not change the canonical roots."""
        both = canonical_generators(self.ambient, list(self.canonical_roots) + list(other.canonical_roots))
        return set(both) == set(self.canonical_roots)

    def contains_reflection(self, gamma: Root, depth_bound: int = 8) -> Membership:
        return reflection_membership(self, gamma, depth_bound)

    def orbit_roots(self, limit: int = 100_000) -> list[Root]:
        """G . Pi(G), positive representatives (finite subgroups only)."""
        W = self.ambient
        pi = self.canonical_roots
        seen = set(pi)
        queue = deque(pi)
        while queue:
            v = queue.popleft()
            for d in pi:
                u = W.positive_rep(W.reflect(d, v))
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
                    if len(seen) > limit:
                        raise CoxeterError("root orbit exceeds limit")
        return sort_roots(W, seen)

    def describe(self) -> str:
        W = self.ambient
        return "{" + ", ".join(W.format_root(r) for r in self.canonical_roots) + "}"

    def __eq__(self, other):
        return (
            isinstance(other, ReflectionSubgroup)
            and other.ambient == self.ambient
            and set(other.canonical_roots) == set(self.canonical_roots)
        )

    def __hash__(self):
        return hash(frozenset(self.canonical_roots))


def all_reflection_subgroups(W: CoxeterSystem) -> list[ReflectionSubgroup]:
    """Every reflection subgroup of a finite W, one per distinct Pi(G)."""
    phi_plus = _all_positive_roots(W)
    found: dict = {}
    frontier = {frozenset()}
    found[frozenset()] = ReflectionSubgroup.from_canonical(W, [])
    # grow canonical systems one reflection at a time
    while frontier:
        nxt = set()
        for pi in frontier:
            for r in phi_plus:
                if r in pi:
                    continue
                new = frozenset(canonical_generators(W, list(pi) + [r]))
                if new not in found:
                    found[new] = ReflectionSubgroup.from_canonical(W, new)
                    nxt.add(new)
        frontier = nxt
    return sorted(found.values(), key=lambda G: (G.rank, [root_order_key(W, r) for r in G.canonical_roots]))
