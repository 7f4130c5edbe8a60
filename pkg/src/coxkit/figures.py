"""Matplotlib figures for CLI reports.  Every function writes one file and returns its path."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from coxkit.numberfield import INF  # noqa: E402

_ODD = "#1f4e79"
_EVEN = "#b05a1e"


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def _layout(g: nx.Graph, order):
    # paths and trees read best left to right; anything with a cycle goes on a circle
    if nx.is_forest(g) and max((d for _, d in g.degree()), default=0) <= 2:
        pos, x = {}, 0.0
        for comp in sorted(nx.connected_components(g), key=lambda c: min(order.index(v) for v in c)):
            ends = [v for v in comp if g.degree(v) <= 1]
            start = min(ends, key=order.index)
            for v in nx.dfs_preorder_nodes(g, start):
                pos[v] = (x, 0.0)
                x += 1.0
            x += 0.6
        return pos
    return nx.circular_layout(g.subgraph(order)) if len(order) > 2 else nx.spring_layout(g, seed=0)


def coxeter_graph(W, path, title: str = "", highlight=()):
    """Coxeter graph with odd edges solid and even/oo edges dashed."""
    g = W.graph().to_networkx()
    order = list(W.generators)
    pos = _layout(g, order)
    fig, ax = plt.subplots(figsize=(max(3.0, 0.9 * len(order) + 1), 2.6))
    odd = [(u, v) for u, v, d in g.edges(data=True) if d["label"] != INF and d["label"] % 2]
    even = [(u, v) for u, v, d in g.edges(data=True) if (u, v) not in odd]
    nx.draw_networkx_edges(g, pos, edgelist=odd, edge_color=_ODD, width=1.8, ax=ax)
    nx.draw_networkx_edges(g, pos, edgelist=even, edge_color=_EVEN, style="dashed", width=1.8, ax=ax)
    colors = ["#f2c14e" if v in set(highlight) else "white" for v in g.nodes]
    nx.draw_networkx_nodes(g, pos, node_color=colors, edgecolors="black", node_size=380, ax=ax)
    nx.draw_networkx_labels(g, pos, labels={v: W.names[v] for v in g.nodes}, font_size=9, ax=ax)
    edge_labels = {(u, v): ("oo" if d["label"] == INF else str(d["label"])) for u, v, d in g.edges(data=True) if d["label"] != 3}
    nx.draw_networkx_edge_labels(g, pos, edge_labels=edge_labels, font_size=8, ax=ax)
    ax.set_title(title, fontsize=10)
    ax.axis("off")
    ax.margins(0.15)
    return _finish(fig, path)


def root_depths(depths, path, title: str = "positive roots by depth"):
    counts = {}
    for d in depths:
        counts[d] = counts.get(d, 0) + 1
    xs = sorted(counts)
    fig, ax = plt.subplots(figsize=(4.5, 3))
    ax.bar([x + 1 for x in xs], [counts[x] for x in xs], color=_ODD)
    ax.set_xlabel("depth")
    ax.set_ylabel("roots")
    ax.set_title(title, fontsize=10)
    return _finish(fig, path)


def scenario_summary(result, path):
    """One row per assertion; green for pass, red for failure."""
    rows = result.assertions
    fig, ax = plt.subplots(figsize=(7, 0.22 * len(rows) + 1.2))
    ys = range(len(rows))[::-1]
    ax.barh(list(ys), [1] * len(rows), color=["#3a7d44" if a.passed else "#b23a48" for a in rows])
    ax.set_yticks(list(ys))
    ax.set_yticklabels([a.description[:70] for a in rows], fontsize=6)
    ax.set_xticks([])
    status = "pass" if result.passed else "FAIL"
    ax.set_title(f"{result.name}: {len(rows)} assertions, {status}", fontsize=10)
    return _finish(fig, path)


def tower_orders(ranks, type_names, path, title: str = ""):
    """log10 of the group order per truncation rank; infinite ranks are marked with x."""
    fig, ax = plt.subplots(figsize=(4.5, 3))
    fin = [(n, math.log10(t.order)) for n, t in zip(ranks, type_names) if t.finite]
    inf = [n for n, t in zip(ranks, type_names) if not t.finite]
    if fin:
        ax.plot([n for n, _ in fin], [y for _, y in fin], "o-", color=_ODD, label="finite")
    if inf:
        top = max((y for _, y in fin), default=1.0)
        ax.plot(inf, [top * 1.05 + 0.5] * len(inf), "x", color=_EVEN, label="infinite")
    ax.set_xlabel("truncation rank")
    ax.set_ylabel("log10 |W_n|")
    ax.legend(fontsize=8)
    ax.set_title(title, fontsize=10)
    return _finish(fig, path)
