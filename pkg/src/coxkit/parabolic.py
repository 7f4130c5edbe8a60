"""Parabolic subgroups w W_I w^-1, their intersections and closures.

Points of the dual space are stored by their values on the simple roots.
The stabilizer of a point x is found by walking x into the closed
fundamental chamber with simple reflections: if u . x is dominant and I is
the set of simple roots where u . x vanishes, then Stab(x) = u^-1 W_I u.
For finite W every point can be walked, and the stabilizer of a generic
point of a subspace is the pointwise stabilizer of that subspace.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field

from coxkit import linalg
from coxkit.core import CoxeterError, CoxeterSystem, Element, Root, coset_min, enumerate_group
from coxkit.refsub import ReflectionSubgroup, canonical_generators, sort_roots

YES, NO, UNKNOWN = "yes", "no", "unknown"


class ParabolicDescriptor:
    """The parabolic subgroup w W_I w^-1, stored with w shortest in w W_I."""

    __slots__ = ("system", "w", "I", "_roots")

    def __init__(self, w: Element, I):
        W = w.system
        keep = set(I)
        self.system = W
        self.I = tuple(g for g in W.generators if g in keep)
        self.w, _ = coset_min(w, self.I)
        self._roots = None

    @classmethod
    def standard(cls, W: CoxeterSystem, I=None) -> "ParabolicDescriptor":
        return cls(W.identity(), W.generators if I is None else I)

    @property
    def rank(self) -> int:
        return len(self.I)

    @property
    def canonical_roots(self) -> list[Root]:
        """w . Pi_I; all positive because w is coset-minimal."""
        if self._roots is None:
            W = self.system
            self._roots = sort_roots(W, [self.w.act(W.simple_root(s)) for s in self.I])
        return self._roots

    def root_set(self) -> frozenset:
        return frozenset(self.canonical_roots)

    def __eq__(self, other):
        return isinstance(other, ParabolicDescriptor) and self.system == other.system and self.root_set() == other.root_set()

    def __hash__(self):
        return hash(self.root_set())

    def __repr__(self):
        nm = self.system.names
        return f"Parabolic(w={self.w.format()}, I={{{', '.join(nm[g] for g in self.I)}}})"

    def contains(self, g: Element) -> bool:
        """g in w W_I w^-1 iff the reduced word of w^-1 g w only uses I."""
        conj = self.w.inverse() * g * self.w
        return set(conj.word) <= set(self.I)

    def positive_roots(self) -> list[Root]:
        """w . Phi_I^+ (finite W_I)."""
        W = self.system
        phi = _finite_roots(W)
        if phi is not None:
            # Phi_I is the set of roots supported on I
            idx = [W.index[g] for g in W.generators if g not in self.I]
            return [self.w.act(r) for r in phi if all(r[i].is_zero() for i in idx)]
        sub = W.restrict(self.I)
        en = sub.enumerate_positive_roots(10_000)
        if not en.saturated:
            raise CoxeterError("W_I is infinite")
        out = []
        for r in en.roots:
            v = W.vector({g: c for g, c in zip(sub.generators, r)}) if sub.rank else ()
            out.append(self.w.act(v))
        return out

    def as_reflection_subgroup(self) -> ReflectionSubgroup:
        return ReflectionSubgroup.from_canonical(self.system, self.canonical_roots)

    def elements(self) -> list[Element]:
        W = self.system
        winv = self.w.inverse()
        return [self.w * x * winv for x in enumerate_group(W, [W.generator(s) for s in self.I])]


# --- points of the dual space ---

def dual_simple(W: CoxeterSystem, i: int, x: tuple) -> tuple:
    """s_i . x, where (s . x)(v) = x(s v)."""
    xi = x[i]
    if xi.is_zero():
        return x
    out = list(x)
    out[i] = -xi
    for j, b2 in W._twice_row[i]:
        out[j] = out[j] - b2 * xi
    return tuple(out)


def dual_act(w: Element, x: tuple) -> tuple:
    """w . x, i.e. the functional v -> x(w^-1 v)."""
    W = w.system
    return tuple(sum((c * xi for c, xi in zip(col, x)), W.field.zero) for col in w.inv_cols)


def evaluate(x: tuple, v: Root):
    total = x[0] * v[0] if x else None
    for a, b in zip(x[1:], v[1:]):
        if not b.is_zero() and not a.is_zero():
            total = total + a * b
    return total


def walk_to_dominant(W: CoxeterSystem, x: tuple, bound: int = 100_000):
    """Letters s_1, ..., s_k with s_k ... s_1 . x dominant, or None past ``bound`` steps."""
    word = []
    for _ in range(bound):
        i = next((i for i in range(W.rank) if x[i].sign() < 0), None)
        if i is None:
            return word, x
        x = dual_simple(W, i, x)
        word.append(W.generators[i])
    return None


def stabilizer(W: CoxeterSystem, x: tuple, bound: int = 100_000) -> ParabolicDescriptor | None:
    walked = walk_to_dominant(W, x, bound)
    if walked is None:
        return None
    word, xf = walked
    I = [g for g, v in zip(W.generators, xf) if v.is_zero()]
    return ParabolicDescriptor(W.element(word), I)


def annihilator(W: CoxeterSystem, roots) -> list[tuple]:
    """Basis of the functionals vanishing on every given vector."""
    rows = [list(r) for r in roots]
    return [tuple(v) for v in linalg.nullspace(rows, W.rank, W.field)]


def fixed_space(W: CoxeterSystem, elements) -> list[tuple]:
    """Basis of the functionals fixed by every given element."""
    rows = []
    ctx = W.field
    for w in elements:
        for t in range(W.rank):
            col = w.inv_cols[t]
            rows.append([c - (ctx.one if j == t else ctx.zero) for j, c in enumerate(col)])
    return [tuple(v) for v in linalg.nullspace(rows, W.rank, ctx)] if rows else annihilator(W, [])


def generic_point(W: CoxeterSystem, basis: list[tuple], test_roots, seed: int = 0, tries: int = 50):
    """A point of span(basis) that vanishes only on roots vanishing on the whole span.

    Genericity is certified against ``test_roots``; returns (point, certified).
    """
    ctx = W.field
    if not basis:
        return tuple(ctx.zero for _ in range(W.rank)), True
    must_avoid = [r for r in test_roots if any(not evaluate(b, r).is_zero() for b in basis)]
    rng = random.Random(seed)
    coeffs = [k + 1 for k in range(len(basis))]
    for _ in range(tries):
        x = tuple(sum((b[j] * c for b, c in zip(basis, coeffs)), ctx.zero) for j in range(W.rank))
        if all(not evaluate(x, r).is_zero() for r in must_avoid):
            return x, True
        coeffs = [rng.randint(1, 997) for _ in basis]
    return x, False


def _finite_roots(W: CoxeterSystem, limit: int = 5_000):
    cached = getattr(W, "_finite_roots_cache", None)
    if cached is None:
        en = W.enumerate_positive_roots(10_000, limit=limit)
        cached = W._finite_roots_cache = (en.roots if en.saturated else False)
    return cached or None


def is_finite(W: CoxeterSystem) -> bool:
    return _finite_roots(W) is not None


# --- parabolicity ---

@dataclass
class ParabolicVerdict:
    status: str
    descriptor: ParabolicDescriptor | None = None
    certificate: Element | None = None  # u with u . Pi(G) inside Pi
    reason: str = ""
    closure: ParabolicDescriptor | None = None

    def __bool__(self):
        return self.status == YES


def verify_certificate(W: CoxeterSystem, u: Element, roots) -> bool:
    return all(W.simple_index(u.act(r)) is not None for r in roots)


def parabolic_closure_of_roots(W: CoxeterSystem, roots, search_bound: int = 100_000):
    """Stabilizer of a generic point of the annihilator of ``roots`` (finite W: the parabolic closure)."""
    test = _finite_roots(W)
    certified_all = test is not None
    if test is None:
        test = W.enumerate_positive_roots(12, limit=2_000).roots
    x, certified = generic_point(W, annihilator(W, roots), test)
    d = stabilizer(W, x, search_bound)
    return d, certified and certified_all


def simple_of_orbit(W: CoxeterSystem, gamma: Root):
    """A generator s with gamma in W . a_s (walks gamma down by depth)."""
    v = gamma
    while W.simple_index(v) is None:
        step = next(i for i in range(W.rank) if W.pairing_simple(i, v).sign() > 0)
        v = W.simple_reflect(step, v)
    return W.generators[W.simple_index(v)]


def _orbit_overflow(W: CoxeterSystem, R):
    """An odd component C met by more than |C| roots of R, or None.

    A conjugator sends R onto distinct simple roots and keeps each root in
    the orbit of its odd component, so parabolic R never overflows.
    """
    comp_of = {}
    for comp in W.odd_components():
        for g in comp:
            comp_of[g] = tuple(comp)
    counts = {}
    for r in R:
        c = comp_of[simple_of_orbit(W, r)]
        counts[c] = counts.get(c, 0) + 1
        if counts[c] > len(c):
            return c
    return None


def is_parabolic(G: ReflectionSubgroup, search_bound: int = 20_000) -> ParabolicVerdict:
    W = G.ambient
    R = G.canonical_roots
    if not R:
        return ParabolicVerdict(YES, ParabolicDescriptor.standard(W, ()), W.identity(), "trivial subgroup")
    if len(R) > W.rank:
        return ParabolicVerdict(NO, reason=f"rank {len(R)} exceeds ambient rank {W.rank}")
    if linalg.rank(R, W.field) < len(R):
        return ParabolicVerdict(NO, reason="canonical roots are linearly dependent")
    if all(W.simple_index(r) is not None for r in R):
        d = ParabolicDescriptor.standard(W, [W.generators[W.simple_index(r)] for r in R])
        return ParabolicVerdict(YES, d, W.identity(), "standard parabolic")
    over = _orbit_overflow(W, R)
    if over is not None:
        names = ", ".join(W.names[g] for g in over)
        return ParabolicVerdict(NO, reason=f"more canonical roots than simple roots in the orbit of {{{names}}}")
    d, certified = parabolic_closure_of_roots(W, R, search_bound)
    if d is not None and d.root_set() == frozenset(R):
        u = d.w.inverse()
        assert verify_certificate(W, u, R)
        return ParabolicVerdict(YES, d, u, "stabilizer of a generic fixed point", closure=d)
    if d is not None and certified:
        return ParabolicVerdict(
            NO, reason=f"the smallest parabolic containing G is {d} and it is strictly larger", closure=d
        )
    found = _descend_roots(W, R, search_bound)
    if found is not None:
        word, I = found
        d = ParabolicDescriptor(W.element(word), I)
        u = W.element(reversed(word))
        return ParabolicVerdict(YES, d, u, "root descent")
    return ParabolicVerdict(UNKNOWN, reason=f"no conjugator found within {search_bound} steps")


def _descend_roots(W: CoxeterSystem, R, bound: int):
    """Best-first search for simple reflections carrying R into Pi.

    Returns (word, I) with s_k ... s_1 . R = Pi_I, word = [s_1, ..., s_k].
    """
    start = frozenset(R)

    def cost(S):
        return sum(W.depth(r) for r in S)

    heap = [(cost(start), 0, start, ())]
    seen = {start}
    tick = 0
    while heap and tick < bound:
        _, _, S, word = heapq.heappop(heap)
        if all(W.simple_index(r) is not None for r in S):
            return list(word), [W.generators[W.simple_index(r)] for r in S]
        for i in range(W.rank):
            if any(W.simple_index(r) == i for r in S):
                continue
            T = frozenset(W.simple_reflect(i, r) for r in S)
            if T in seen:
                continue
            seen.add(T)
            tick += 1
            heapq.heappush(heap, (cost(T), tick, T, word + (W.generators[i],)))
    return None


# --- intersections and closures in finite W ---

def _require_finite(W: CoxeterSystem):
    if not is_finite(W):
        raise CoxeterError("operation needs a finite ambient group; use truncations instead")


def intersect_parabolics_finite(W: CoxeterSystem, d1: ParabolicDescriptor, d2: ParabolicDescriptor) -> ParabolicDescriptor:
    """w1 W_I w1^-1 and w2 W_J w2^-1 meet in a parabolic u W_K u^-1; return it."""
    _require_finite(W)
    common = set(d1.positive_roots()) & set(d2.positive_roots())
    if not common:
        return ParabolicDescriptor.standard(W, ())
    pi = canonical_generators(W, common)
    verdict = is_parabolic(ReflectionSubgroup.from_canonical(W, pi))
    if verdict.status != YES:
        raise CoxeterError("intersection of parabolics failed to be parabolic")
    return verdict.descriptor


def parabolic_closure_finite(W: CoxeterSystem, X) -> tuple[ParabolicDescriptor, list]:
    """Smallest parabolic containing X, by a descending chain of intersections.

    Start from W; intersect with the stabilizer of each basis vector of the
    space fixed by X (each such stabilizer is a parabolic containing X).
    Returns the closure and the strictly descending chain.
    """
    _require_finite(W)
    P = ParabolicDescriptor.standard(W)
    chain = [P]
    for f in fixed_space(W, list(X)):
        Q = stabilizer(W, f)
        P2 = intersect_parabolics_finite(W, P, Q)
        if P2 != P:
            P = P2
            chain.append(P)
    return P, chain


def all_parabolics(W: CoxeterSystem) -> list[ParabolicDescriptor]:
    """Every parabolic subgroup of a finite W, brute force over (w, I)."""
    _require_finite(W)
    cached = getattr(W, "_all_parabolics", None)
    if cached is not None:
        return cached
    elems = enumerate_group(W)
    found = {}
    for k in range(W.rank + 1):
        for I in itertools.combinations(W.generators, k):
            for w in elems:
                d = ParabolicDescriptor(w, I)
                found.setdefault(d.root_set(), d)
    out = sorted(found.values(), key=lambda d: (d.rank, sorted(W.root_key(r) for r in d.canonical_roots)))
    W._all_parabolics = out
    return out


def parabolic_closure_bruteforce(W: CoxeterSystem, X) -> ParabolicDescriptor:
    X = list(X)
    over = [d for d in all_parabolics(W) if all(d.contains(x) for x in X)]
    best = min(over, key=lambda d: len(d.positive_roots()))
    roots = set(best.positive_roots())
    if not all(roots <= set(d.positive_roots()) for d in over):
        raise CoxeterError("no unique minimal parabolic")
    return best


def maximal_finite_parabolic_over(W: CoxeterSystem, I) -> list:
    """Greedy J containing I, maximal with W_J finite (declared order)."""
    from coxkit.locpar import is_finite_subset

    J = [g for g in W.generators if g in set(I)]
    if not is_finite_subset(W, J):
        raise CoxeterError("W_I is infinite")
    for s in W.generators:
        if s not in J and is_finite_subset(W, J + [s]):
            J.append(s)
    return [g for g in W.generators if g in set(J)]


def parabolic_canonical_roots(d: ParabolicDescriptor) -> list[Root]:
    return d.canonical_roots
