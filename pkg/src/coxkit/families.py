"""Rule-defined Coxeter systems of infinite rank and their finite truncations.

Generators are integers.  Index conventions:

    a1inf   1, 2, 3, ...            chain, labels 3
    a2inf   ..., -1, 0, 1, ...      chain, labels 3; truncated around 0
    binf    0, 1, 2, ...            m(0, 1) = 4, otherwise chain labels 3
    dinf    -1 (the fork node 0'), 0, 1, 2, ...; both -1 and 0 attach to 1
    ex33    same graph as a1inf
    ex45    1, 2, 3, ...            chain with every label equal to the parameter m
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable

from coxkit.core import CoxeterError, CoxeterSystem
from coxkit.numberfield import INF

KINDS = ("a1inf", "a2inf", "binf", "dinf", "ex33", "ex45")


def _chain(i: int, j: int, m=3):
    return m if abs(i - j) == 1 else 2


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: str
    param: object = None
    label_rule: Callable = field(default=None, compare=False, repr=False)

    def label(self, i: int, j: int):
        if i == j:
            return 1
        return self.label_rule(i, j)

    def indices(self, n: int) -> list[int]:
        """The first n generators."""
        if n < 1:
            raise CoxeterError("rank must be >= 1")
        if self.kind == "a2inf":
            lo = -((n - 1) // 2)
            return list(range(lo, lo + n))
        if self.kind == "binf":
            return list(range(n))
        if self.kind == "dinf":
            return [-1] + list(range(n - 1))
        return list(range(1, n + 1))

    def name(self, i: int) -> str:
        if self.kind == "dinf" and i == -1:
            return "s0'"
        return f"s{i}"

    def __str__(self):
        return self.kind if self.param is None else f"{self.kind}(m={'oo' if self.param == INF else self.param})"


def _dinf_rule(i, j):
    a, b = sorted((i, j))
    if a == -1:
        return 3 if b == 1 else 2
    return _chain(a, b)


def _binf_rule(i, j):
    if sorted((i, j)) == [0, 1]:
        return 4
    return _chain(i, j)


def family(kind: str, param=None) -> FamilyDescriptor:
    """Named family; ``param`` is the edge label m for ex45 (even >= 4 or INF)."""
    if kind in ("a1inf", "a2inf", "ex33"):
        return FamilyDescriptor(kind, None, _chain)
    if kind == "binf":
        return FamilyDescriptor(kind, None, _binf_rule)
    if kind == "dinf":
        return FamilyDescriptor(kind, None, _dinf_rule)
    if kind == "ex45":
        m = 4 if param is None else param
        if m != INF and (not isinstance(m, int) or m < 4 or m % 2):
            raise CoxeterError("ex45 needs an even label >= 4 or oo")
        return FamilyDescriptor(kind, m, lambda i, j, m=m: _chain(i, j, m))
    raise CoxeterError(f"unknown family {kind!r}; expected one of {', '.join(KINDS)}")


_CACHE: dict = {}
_LOCK = threading.Lock()


def truncate(fam: FamilyDescriptor, n: int) -> CoxeterSystem:
    """The standard parabolic on the first n generators (memoized)."""
    key = (fam.kind, fam.param, n)
    with _LOCK:
        hit = _CACHE.get(key)
    if hit is not None:
        return hit
    idx = fam.indices(n)
    labels = {}
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            m = fam.label(idx[a], idx[b])
            if m != 2:
                labels[(idx[a], idx[b])] = m
    W = CoxeterSystem(idx, labels, {i: fam.name(i) for i in idx})
    with _LOCK:
        _CACHE.setdefault(key, W)
        return _CACHE[key]


@dataclass
class TruncationTower:
    family: FamilyDescriptor
    ranks: tuple

    def __post_init__(self):
        self.ranks = tuple(self.ranks)
        if any(b < a for a, b in zip(self.ranks, self.ranks[1:])):
            raise CoxeterError("tower ranks must be non-decreasing")

    def systems(self):
        for n in self.ranks:
            yield n, truncate(self.family, n)


@dataclass
class TowerReport:
    family: str
    check: str
    outcomes: list  # (rank, value)
    stable: bool
    window: int

    def as_dict(self):
        return {
            "family": self.family,
            "check": self.check,
            "outcomes": [[n, v] for n, v in self.outcomes],
            "stable": self.stable,
            "window": self.window,
        }


def tower_check(tower: TruncationTower, check: Callable, name: str = "", window: int = 3) -> TowerReport:
    """Evaluate ``check(system, rank)`` on every rank; stable when the top ``window`` values agree."""
    outcomes = [(n, check(W, n)) for n, W in tower.systems()]
    top = [v for _, v in outcomes[-window:]]
    stable = len(top) > 0 and all(v == top[0] for v in top)
    return TowerReport(str(tower.family), name or getattr(check, "__name__", "check"), outcomes, stable, window)


def nests(fam: FamilyDescriptor, n: int, n2: int) -> bool:
    """Rank-n truncation is the restriction of the rank-n2 one."""
    small, big = truncate(fam, n), truncate(fam, n2)
    return big.restrict(small.generators) == small


def adjacency(fam: FamilyDescriptor, n: int) -> list[tuple]:
    """Edges (i, j, m) with m >= 3 of the rank-n truncation."""
    W = truncate(fam, n)
    return sorted((s, t, m) for (s, t), m in W.labels().items())
