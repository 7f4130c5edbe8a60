"""Finite-type recognition, locally parabolic subgroups, locally finite classification."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import networkx as nx

from coxkit.core import CoxeterError, CoxeterGraph, CoxeterSystem, Element
from coxkit.numberfield import INF
from coxkit.parabolic import (
    NO,
    UNKNOWN,
    YES,
    ParabolicDescriptor,
    ParabolicVerdict,
    is_finite,
    is_parabolic,
    parabolic_closure_finite,
)
from coxkit.refsub import ReflectionSubgroup

INFINITE = "infinite"

INFINITE_FAMILY_TYPES = {"a1inf": "A_oo<1>", "a2inf": "A_oo<2>", "binf": "B_oo", "dinf": "D_oo"}


def finite_order(label: str) -> int:
    """Order of the finite irreducible Coxeter group named ``label``."""
    if label.startswith("I2("):
        return 2 * int(label[3:-1])
    kind, n = label[0], int(label[1:])
    if kind == "A":
        return math.factorial(n + 1)
    if kind == "B":
        return 2**n * math.factorial(n)
    if kind == "D":
        return 2 ** (n - 1) * math.factorial(n)
    if kind == "G":
        return 12
    return {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "H3": 120, "H4": 14400}[label]


@dataclass(frozen=True)
class TypeName:
    components: tuple  # ((label, (vertex, ...)), ...)

    @property
    def finite(self) -> bool:
        return all(lab != INFINITE for lab, _ in self.components)

    @property
    def order(self) -> int | None:
        if not self.finite:
            return None
        return math.prod(finite_order(lab) for lab, _ in self.components)

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.components]

    def __str__(self):
        if not self.components:
            return "trivial"
        return " x ".join(self.labels)


def _recognize_component(g: nx.Graph) -> str:
    n = g.number_of_nodes()
    if n == 1:
        return "A1"
    labels = [d["label"] for _, _, d in g.edges(data=True)]
    if INF in labels:
        return INFINITE
    if n == 2:
        m = labels[0]
        return {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
    if not nx.is_tree(g):
        return INFINITE
    big = [e for e in g.edges(data=True) if e[2]["label"] > 3]
    degrees = dict(g.degree())
    branch = [v for v, d in degrees.items() if d >= 3]
    if len(big) > 1 or any(d > 3 for d in degrees.values()) or len(branch) > 1:
        return INFINITE
    if big:
        if branch:
            return INFINITE
        u, v, data = big[0]
        m = data["label"]
        ends = {x for x, d in degrees.items() if d == 1}
        at_end = u in ends or v in ends
        if m == 4:
            if at_end:
                return f"B{n}"
            if n == 4:
                return "F4"
            return INFINITE
        if m == 5 and at_end and n in (3, 4):
            return f"H{n}"
        return INFINITE
    if not branch:
        return f"A{n}"
    c = branch[0]
    arms = sorted(len(nx.node_connected_component(g.subgraph(set(g) - {c}), nb)) for nb in g.neighbors(c))
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{n}"
    return INFINITE


def finite_type_recognize(graph) -> TypeName:
    """Name each connected component of a Coxeter graph (or system)."""
    if isinstance(graph, CoxeterSystem):
        graph = graph.graph()
    g = graph.to_networkx()
    comps = []
    for verts in graph.components():
        comps.append((_recognize_component(g.subgraph(verts)), tuple(verts)))
    return TypeName(tuple(comps))


def is_finite_subset(W: CoxeterSystem, J) -> bool:
    return finite_type_recognize(W.restrict(J)).finite


# --- locally parabolic subgroups ---

FULLY_CERTIFIED = "fully_certified"
CERTIFIED_UP_TO = "locally_parabolic_certified_up_to_k"
COUNTEREXAMPLE = "counterexample"
UNDETERMINED = "undetermined"


@dataclass
class LocallyParabolicReport:
    subgroup: ReflectionSubgroup
    checked: list = field(default_factory=list)  # (subset of Pi(G), ParabolicVerdict)
    verdict: str = UNDETERMINED
    k: int = 0
    counterexample: tuple | None = None

    @property
    def locally_parabolic(self) -> bool | None:
        if self.verdict == FULLY_CERTIFIED:
            return True
        if self.verdict == COUNTEREXAMPLE:
            return False
        return None


def is_locally_parabolic(G: ReflectionSubgroup, k: int | None = None, search_bound: int = 20_000) -> LocallyParabolicReport:
    """Run is_parabolic on every subset of Pi(G) of size <= k (all subsets by default).

    Subsets are visited by increasing size, so a reported counterexample is
    a smallest one.  Each subset of Pi(G) is the canonical system of the
    subgroup it generates.
    """
    pi = G.canonical_roots
    k = len(pi) if k is None else min(k, len(pi))
    report = LocallyParabolicReport(G, k=k)
    W = G.ambient
    pending = False
    for size in range(1, k + 1):
        for sub in itertools.combinations(pi, size):
            v = is_parabolic(ReflectionSubgroup.from_canonical(W, sub), search_bound)
            report.checked.append((sub, v))
            if v.status == NO:
                report.verdict = COUNTEREXAMPLE
                report.counterexample = sub
                return report
            if v.status == UNKNOWN:
                pending = True
    if pending:
        report.verdict = UNDETERMINED
    elif k == len(pi):
        report.verdict = FULLY_CERTIFIED
    else:
        report.verdict = CERTIFIED_UP_TO
    return report


@dataclass
class LPClosure:
    status: str  # "computed" or "not_stabilized"
    descriptor: ParabolicDescriptor | None
    support: tuple
    evidence: str


def lp_closure(W: CoxeterSystem, X) -> LPClosure:
    """LP(X) for finitely many elements X.

    X lies in the standard parabolic W_I with I the union of the supports.
    When W_I is finite, LP(X) = P(X) and it is computed inside W_I.
    """
    X = list(X)
    support = tuple(g for g in W.generators if any(g in x.word for x in X))
    if not X or not support:
        return LPClosure("computed", ParabolicDescriptor.standard(W, ()), (), "trivial")
    sub = W.restrict(support)
    if not is_finite(sub):
        return LPClosure("not_stabilized", None, support, "supporting standard parabolic is infinite")
    Xs = [sub.element(x.word) for x in X]
    P, chain = parabolic_closure_finite(sub, Xs)
    d = ParabolicDescriptor(W.element(P.w.word), P.I)
    return LPClosure("computed", d, support, f"closure inside W_I, chain length {len(chain) - 1}")


# --- locally finite classification ---

@dataclass
class Classification:
    locally_finite: bool | None
    types: list
    verdict: str
    ranks: tuple = ()


def locally_finite_classify(obj, ranks=range(2, 13)) -> Classification:
    """Locally finite verdict for a finite system or a rule-defined family."""
    if isinstance(obj, CoxeterSystem):
        t = finite_type_recognize(obj)
        verdict = "locally finite (finite)" if t.finite else "not locally finite"
        return Classification(t.finite, t.labels, verdict)
    from coxkit.families import truncate

    ranks = tuple(ranks)
    per_rank = [finite_type_recognize(truncate(obj, n)) for n in ranks]
    first_infinite = next((n for n, t in zip(ranks, per_rank) if not t.finite), None)
    if first_infinite is not None:
        return Classification(
            False, [str(t) for t in per_rank], f"not locally finite (rank-{first_infinite} truncation is infinite)", ranks
        )
    if obj.kind in INFINITE_FAMILY_TYPES:
        name = INFINITE_FAMILY_TYPES[obj.kind]
        return Classification(True, [name], f"locally finite, type {name}", ranks)
    if obj.kind == "ex33":
        return Classification(True, [INFINITE_FAMILY_TYPES["a1inf"]], "locally finite, type A_oo<1>", ranks)
    return Classification(None, [str(t) for t in per_rank], f"undetermined (ranks {ranks[0]}..{ranks[-1]} finite)", ranks)
