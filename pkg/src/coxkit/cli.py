"""coxkit command line.

    coxkit classify --inline "nodes a b c; edge a b 3; edge b c 3"
    coxkit pi --inline "nodes a b; edge a b 3" --roots "a; a+b"
    coxkit verify --scenario g2 --json

Exit status: 0 on success, 1 when a verify scenario fails, 2 on usage or input errors.
Roots are written as combinations of node names (``a + r2 b - 1/2 c``), several
roots separated by ``;``.  Group elements are space-separated words (``a b a``;
``e`` is the identity), several separated by ``;``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from coxkit import dsl, families, locpar, parabolic, refsub, scenarios
from coxkit.core import CoxeterError, coset_min
from coxkit.numberfield import INF, FieldError

DEFAULT_DEPTH = 6
DEFAULT_SEARCH = 20_000
DEFAULT_RANKS = "2..12"
DEFAULT_FAMILY_RANK = 6

VERBS = (
    "classify",
    "roots",
    "pi",
    "closure",
    "is-parabolic",
    "intersect",
    "coset-min",
    "odd-components",
    "verify",
    "families",
)


class UsageError(Exception):
    pass


# --- argument parsing ---

def _ranks(text: str) -> tuple:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = tuple(range(int(lo), int(hi) + 1))
        else:
            out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad rank range {text!r}; use e.g. 2..12") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("ranks must be positive")
    return out


def _param(text: str):
    key, _, val = text.partition("=")
    if key.strip() != "m" or not val:
        raise argparse.ArgumentTypeError("expected m=<label>, e.g. m=4 or m=oo")
    val = val.strip()
    if val == "oo":
        return INF
    if not val.isdigit():
        raise argparse.ArgumentTypeError(f"bad label {val!r}")
    return int(val)


def _add_input(p, family=True):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--inline", metavar="DSL", help="graph text, e.g. 'nodes a b; edge a b 3'")
    src.add_argument("--file", metavar="PATH", help="file holding graph text")
    if family:
        src.add_argument("--family", choices=families.KINDS, help="rule-defined family")
        p.add_argument("--param", type=_param, help="family parameter, m=4|6|oo (ex45)")
        p.add_argument("--rank", type=int, help=f"truncation rank for a family (default {DEFAULT_FAMILY_RANK})")


def _add_output(p):
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--figure", metavar="PATH", help="also write a matplotlib figure")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxkit", description="Reflection and parabolic subgroups of Coxeter groups.")
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    p = sub.add_parser("classify", help="finite-type name of a system, or locally finite verdict for a family")
    _add_input(p)
    p.add_argument("--ranks", type=_ranks, default=_ranks(DEFAULT_RANKS), help="truncation ranks for families")
    _add_output(p)

    p = sub.add_parser("roots", help="positive roots up to a depth")
    _add_input(p)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help=f"depth bound (default {DEFAULT_DEPTH})")
    _add_output(p)

    p = sub.add_parser("pi", help="canonical simple roots of the subgroup generated by reflections")
    _add_input(p)
    p.add_argument("--roots", required=True, help="roots separated by ';'")
    _add_output(p)

    p = sub.add_parser("closure", help="smallest parabolic subgroup containing some elements")
    _add_input(p)
    p.add_argument("--elements", required=True, help="words separated by ';'")
    _add_output(p)

    p = sub.add_parser("is-parabolic", help="decide whether a reflection subgroup is parabolic")
    _add_input(p)
    p.add_argument("--roots", required=True, help="roots separated by ';'")
    p.add_argument("--search-bound", type=int, default=DEFAULT_SEARCH, help=f"default {DEFAULT_SEARCH}")
    _add_output(p)

    p = sub.add_parser("intersect", help="intersection of two parabolic subgroups (finite groups)")
    _add_input(p)
    p.add_argument("--left", required=True, metavar="'WORD | I'", help="w W_I w^-1, e.g. 'b | a'")
    p.add_argument("--right", required=True, metavar="'WORD | I'")
    _add_output(p)

    p = sub.add_parser("coset-min", help="w = w^I w_I with w^I shortest in w W_I")
    _add_input(p)
    p.add_argument("--word", required=True)
    p.add_argument("--subset", required=True, help="generator names, space separated")
    _add_output(p)

    p = sub.add_parser("odd-components", help="components of the odd Coxeter graph")
    _add_input(p)
    _add_output(p)

    p = sub.add_parser("verify", help="run a scripted reproduction")
    p.add_argument("--scenario", required=True, choices=sorted(scenarios.SCENARIOS))
    p.add_argument("--max-i", type=int, help="largest index checked")
    p.add_argument("--param", type=_param, help="m=4|6|oo for ex45")
    _add_output(p)

    p = sub.add_parser("families", help="truncation tower of a family")
    p.add_argument("--family", required=True, choices=families.KINDS)
    p.add_argument("--param", type=_param)
    p.add_argument("--ranks", type=_ranks, default=_ranks(DEFAULT_RANKS))
    _add_output(p)
    return parser


# --- inputs ---

def _load(args):
    """(system, input record) from --inline, --file or --family."""
    if getattr(args, "inline", None) is not None:
        return dsl.parse_system(args.inline), {"source": "inline", "text": args.inline}
    if getattr(args, "file", None) is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        return dsl.parse_system(text), {"source": "file", "path": args.file}
    if getattr(args, "family", None) is not None:
        fam = families.family(args.family, args.param)
        n = args.rank or DEFAULT_FAMILY_RANK
        return families.truncate(fam, n), {"source": "family", "family": str(fam), "rank": n}
    raise UsageError("give the system with --inline, --file or --family")


def _fmt_roots(W, roots) -> list:
    return [W.format_root(r) for r in roots]


def _fmt_desc(d) -> dict:
    W = d.system
    return {
        "w": d.w.format(),
        "I": [W.names[g] for g in d.I],
        "canonical_roots": _fmt_roots(W, d.canonical_roots),
    }


def _desc_text(d) -> str:
    W = d.system
    return f"w = {d.w.format()}, I = {{{', '.join(W.names[g] for g in d.I)}}}"


def _matrix(M):
    return [["oo" if x == INF else x for x in row] for row in M]


def _subset(W, text):
    names = {v: k for k, v in W.names.items()}
    out = []
    for tok in text.replace(",", " ").split():
        if tok not in names:
            raise dsl.ParseError(f"unknown generator {tok!r}", 1, text.index(tok) + 1)
        out.append(names[tok])
    return out


def _descriptor(W, text):
    word, bar, I = text.partition("|")
    if not bar:
        raise UsageError(f"expected 'WORD | I', got {text!r}")
    return parabolic.ParabolicDescriptor(W.element(dsl.parse_word(W, word)), _subset(W, I))


# --- verbs; each returns (report, lines, exit code, figure callback) ---

def _classify(args):
    if args.family is not None and args.rank is None:
        fam = families.family(args.family, args.param)
        c = locpar.locally_finite_classify(fam, args.ranks)
        result = {"locally_finite": c.locally_finite, "verdict": c.verdict, "types": c.types}
        params = {"ranks": [args.ranks[0], args.ranks[-1]]}
        names = [locpar.finite_type_recognize(families.truncate(fam, n)) for n in args.ranks]

        def fig(path):
            from coxkit import figures

            return figures.tower_orders(args.ranks, names, path, str(fam))

        return {"source": "family", "family": str(fam)}, params, result, {}, [c.verdict], 0, fig
    W, inp = _load(args)
    t = locpar.finite_type_recognize(W)
    result = {
        "type": str(t),
        "finite": t.finite,
        "order": t.order,
        "components": [{"type": lab, "nodes": [W.names[v] for v in verts]} for lab, verts in t.components],
    }
    if t.finite:
        line = f"{t}, finite, order {t.order}"
    else:
        line = f"{t}, infinite" if len(t.components) > 1 else "infinite"

    def fig(path):
        from coxkit import figures

        return figures.coxeter_graph(W, path, line)

    return inp, {}, result, {}, [line], 0, fig


def _roots(args):
    W, inp = _load(args)
    en = W.enumerate_positive_roots(args.depth)
    result = {
        "count": len(en.roots),
        "saturated": en.saturated,
        "roots": [{"root": W.format_root(r), "depth": en.depths[r]} for r in en.roots],
    }
    lines = [f"{en.depths[r]}  {W.format_root(r)}" for r in en.roots]
    tail = "all positive roots" if en.saturated else f"depth <= {args.depth}, more roots exist"
    lines.append(f"{len(en.roots)} roots ({tail})")

    def fig(path):
        from coxkit import figures

        return figures.root_depths(list(en.depths.values()), path)

    return inp, {"depth": args.depth}, result, {}, lines, 0, fig


def _pi(args):
    W, inp = _load(args)
    roots = dsl.parse_roots(W, args.roots)
    G = refsub.ReflectionSubgroup(W, roots)
    pi = G.canonical_roots
    try:
        M = _matrix(G.induced_matrix())
    except refsub.UndeterminedLabel:
        M = None
    result = {"canonical_roots": _fmt_roots(W, pi), "rank": len(pi), "coxeter_matrix": M}
    return inp, {"roots": args.roots}, result, {}, [", ".join(result["canonical_roots"])], 0, None


def _closure(args):
    W, inp = _load(args)
    X = [W.element(w) for w in dsl.parse_words(W, args.elements)]
    params = {"elements": args.elements}
    if parabolic.is_finite(W):
        P, chain = parabolic.parabolic_closure_finite(W, X)
        result = {"status": "computed", "closure": _fmt_desc(P)}
        certs = {"chain": [_desc_text(d) for d in chain], "contains_all": all(P.contains(x) for x in X)}
        return inp, params, result, certs, [_desc_text(P)], 0, None
    lp = locpar.lp_closure(W, X)
    result = {
        "status": lp.status,
        "closure": _fmt_desc(lp.descriptor) if lp.descriptor else None,
        "support": [W.names[g] for g in lp.support],
    }
    line = _desc_text(lp.descriptor) if lp.descriptor else f"not stabilized: {lp.evidence}"
    return inp, params, result, {"evidence": lp.evidence}, [line], 0, None


def _is_parabolic(args):
    W, inp = _load(args)
    G = refsub.ReflectionSubgroup(W, dsl.parse_roots(W, args.roots))
    v = parabolic.is_parabolic(G, args.search_bound)
    result = {
        "status": v.status,
        "canonical_roots": _fmt_roots(W, G.canonical_roots),
        "descriptor": _fmt_desc(v.descriptor) if v.descriptor else None,
        "reason": v.reason,
    }
    certs = {}
    if v.certificate is not None:
        certs = {
            "u": v.certificate.format(),
            "images": _fmt_roots(W, [v.certificate.act(r) for r in G.canonical_roots]),
            "checked": parabolic.verify_certificate(W, v.certificate, G.canonical_roots),
        }
    line = v.status + (f" ({_desc_text(v.descriptor)})" if v.descriptor else f": {v.reason}")
    params = {"roots": args.roots, "search_bound": args.search_bound}
    return inp, params, result, certs, [line], 0, None


def _intersect(args):
    W, inp = _load(args)
    d1, d2 = _descriptor(W, args.left), _descriptor(W, args.right)
    d = parabolic.intersect_parabolics_finite(W, d1, d2)
    common = set(d1.elements()) & set(d2.elements())
    certs = {"brute_force_order": len(common), "order": len(d.elements())}
    params = {"left": args.left, "right": args.right}
    return inp, params, {"intersection": _fmt_desc(d)}, certs, [_desc_text(d)], 0, None


def _coset_min(args):
    W, inp = _load(args)
    w = W.element(dsl.parse_word(W, args.word))
    I = _subset(W, args.subset)
    wI, rest = coset_min(w, I)
    result = {"w^I": wI.format(), "w_I": rest.format(), "lengths": [w.length, wI.length, rest.length]}
    certs = {"product_ok": wI * rest == w, "length_additive": w.length == wI.length + rest.length}
    line = f"{w.format()} = ({wI.format()}) . ({rest.format()})"
    return inp, {"word": args.word, "subset": args.subset}, result, certs, [line], 0, None


def _odd(args):
    W, inp = _load(args)
    comps = [[W.names[v] for v in c] for c in W.odd_components()]
    lines = ["{" + ", ".join(c) + "}" for c in comps]

    def fig(path):
        from coxkit import figures

        return figures.coxeter_graph(W, path, "odd components")

    return inp, {}, {"components": comps}, {}, lines, 0, fig


def _verify(args):
    kw = {}
    if args.max_i is not None:
        kw["max_i"] = args.max_i
    if args.param is not None:
        if args.scenario != "ex45":
            raise UsageError("--param only applies to ex45")
        kw["m"] = args.param
    if args.scenario == "g2" and kw:
        raise UsageError("g2 takes no options")
    res = scenarios.SCENARIOS[args.scenario](**kw)
    d = res.as_dict()
    result = {"passed": d["passed"], "assertions": d["assertions"], "ranks": d["ranks"]}
    lines = [f"[{'ok' if a.passed else 'FAIL'}] {a.description}" for a in res.assertions]
    for a in res.failures():
        lines.append(f"  expected {a.expected}, computed {a.computed}")
    lines.append(f"{res.name}: {'pass' if res.passed else 'FAIL'}, {len(res.assertions)} assertions")

    def fig(path):
        from coxkit import figures

        return figures.scenario_summary(res, path)

    return {"scenario": args.scenario}, d["params"], result, {}, lines, 0 if res.passed else 1, fig


def _families(args):
    fam = families.family(args.family, args.param)
    tower = families.TruncationTower(fam, args.ranks)
    names = {}

    def type_of(W, n):
        names[n] = locpar.finite_type_recognize(W)
        return str(names[n])

    rep = families.tower_check(tower, type_of, "type")
    c = locpar.locally_finite_classify(fam, args.ranks)
    result = {
        "family": str(fam),
        "per_rank": [{"rank": n, "type": v, "order": names[n].order} for n, v in rep.outcomes],
        "locally_finite": c.locally_finite,
        "verdict": c.verdict,
    }
    certs = {"nested": all(families.nests(fam, a, b) for a, b in zip(args.ranks, args.ranks[1:]))}
    lines = [f"n={n:<3} {v}" for n, v in rep.outcomes] + [c.verdict]

    def fig(path):
        from coxkit import figures

        return figures.tower_orders(args.ranks, [names[n] for n in args.ranks], path, str(fam))

    params = {"ranks": [args.ranks[0], args.ranks[-1]]}
    return {"source": "family", "family": str(fam)}, params, result, certs, lines, 0, fig


DISPATCH = {
    "classify": _classify,
    "roots": _roots,
    "pi": _pi,
    "closure": _closure,
    "is-parabolic": _is_parabolic,
    "intersect": _intersect,
    "coset-min": _coset_min,
    "odd-components": _odd,
    "verify": _verify,
    "families": _families,
}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        inp, params, result, certs, lines, code, fig = DISPATCH[args.verb](args)
    except dsl.ParseError as exc:
        print(f"coxkit: parse error at {exc}", file=err)
        return 2
    except (UsageError, CoxeterError, FieldError, scenarios.ScenarioError) as exc:
        print(f"coxkit: {exc}", file=err)
        return 2
    elapsed = time.perf_counter() - t0
    if args.figure:
        if fig is None:
            print(f"coxkit: no figure for {args.verb}", file=err)
            return 2
        fig(args.figure)
    if args.json:
        report = {
            "verb": args.verb,
            "input": inp,
            "params": params,
            "result": result,
            "certificates": certs,
            "timings": {"seconds": round(elapsed, 3)} if args.timings else {},
        }
        print(dumps(report), file=out)
    else:
        for line in lines:
            print(line, file=out)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
