"""Command-line interface: ``operad-wb <command> ...``.

Output is one JSON object per line unless ``--format text`` is given.
Exit codes: 0 success, 1 failed check, 2 bad arguments, 3 resource limit.
"""

import argparse
from dataclasses import dataclass
import json
import sys

from . import catops, cells, errors, freeops, milgram, ordinals, planar, poset, sc, trees


@dataclass
class RunConfig:
    n: int = 2
    k: int = 3
    fmt: str = "json"
    seed: int = 0
    slow: bool = False

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")


class Emitter:
    def __init__(self, fmt, out):
        self.fmt = fmt
        self.out = out

    def __call__(self, record, text=None):
        if self.fmt == "json":
            self.out.write(json.dumps(record, sort_keys=True) + "\n")
        else:
            self.out.write((text if text is not None else " ".join(f"{k}={v}" for k, v in record.items())) + "\n")
        self.out.flush()


def _write(path, content, out):
    if path == "-":
        out.write(content)
    else:
        with open(path, "w") as fh:
            fh.write(content)


# commands


def cmd_enumerate(args, emit, out):
    n, k = args.n, args.k
    if args.what == "orders":
        items = ordinals.enumerate_total_orders(n, k)
        for x in items:
            emit({"order": str(x), "n": n, "k": k}, str(x))
    elif args.what == "trees":
        items = trees.enumerate_pruned_trees(n, k)
        for T in items:
            emit({"tree": T.compact(), "dim": trees.dimension(T), "n": n, "k": k}, T.compact())
    else:
        items = planar.enumerate_all(n, k)
        for x in items:
            emit({"planar": planar.compact(x), "n": n, "k": k}, planar.compact(x))
    emit({"count": len(items), "what": args.what, "n": n, "k": k}, f"count {len(items)}")
    return 0


def cmd_milgram(args, emit, out):
    P = milgram.build(args.n, args.k)
    if args.dot:
        _write(args.dot, milgram.to_dot(P), out)
    if args.stats or not args.dot:
        s = milgram.order_complex(P)
        emit(
            {
                "n": args.n,
                "k": args.k,
                "elements": len(P),
                "orbits": len(milgram.orbits(P)),
                "chains": s.chains,
                "euler": s.euler,
                "connected": s.connected,
                "components": s.components,
            }
        )
    return 0


def cmd_rh(args, emit, out):
    P = catops.build_rh(args.n, args.k)
    if args.dot:
        _write(args.dot, catops.to_dot(P), out)
    if args.stats or not args.dot:
        rec = {
            "n": args.n,
            "k": args.k,
            "objects": len(P),
            "generators": len(P.generators),
            "corollas": len(P.corollas()),
        }
        if len(P) <= catops.DENSE_LIMIT:
            rec.update(catops.order_complex(P))
        emit(rec)
    return 0


def _cell_dot(summary):
    shapes = [x for x, _ in summary.cells]
    index = {x: i for i, x in enumerate(shapes)}
    edges = set()
    for i, x in enumerate(shapes):
        if planar.is_leaf(x):
            continue
        for c in planar.all_contractions(x):
            j = index.get(c.result)
            if j is not None:
                edges.add((i, j))
    labels = [f"{planar.compact(x)} dim={d}" for x, d in summary.cells]
    return poset.to_dot(labels, sorted(edges), name="cells")


def cmd_cells(args, emit, out):
    if args.tree:
        T = trees.parse_tree(args.tree, n=args.n)
        targets = [T]
    elif args.k:
        targets = trees.enumerate_reduced_trees(args.n, args.k, min_k=args.k)
    else:
        raise ValueError("give --tree or --k")
    for T in targets:
        s = cells.cell_complex(T)
        fv = ",".join(map(str, s.f_vector))
        if args.fvector:
            out.write((fv if len(targets) == 1 else f"{T.compact()} {fv}") + "\n")
        else:
            emit({"tree": T.compact(), "f_vector": list(s.f_vector), "euler_c": s.euler_c, "top_cells": len(s.top_cells)})
        if args.dot:
            _write(args.dot, _cell_dot(s), out)
    return 0


def cmd_census(args, emit, out):
    rows = [cells.fm_stratum_census(args.n, k) for k in range(1, args.k + 1)]
    if args.csv:
        _write(args.csv, cells.census_csv(rows), out)
        return 0
    for c in rows:
        emit(
            {
                "n": c.n,
                "k": c.k,
                "total": c.total,
                "by_dimension": list(c.by_dimension),
                "planar_orbits": c.planar_orbits,
            }
        )
    return 0


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _collection(args):
    if args.collection:
        return freeops.collection_from_json(_load_json(args.collection))
    if args.operad == "random":
        return freeops.random_collection(args.n, max(args.k, 2), args.seed)
    return freeops.one_point(args.n, max(args.k, 2))


def cmd_symmetrise(args, emit, out):
    X = None
    if args.table:
        A = catops.TableOperad.from_json(_load_json(args.table))
    elif args.operad == "terminal" and not args.collection:
        A = catops.TerminalOperad(args.n)
    else:
        X = _collection(args)
        A = catops.FreeOperad(X)
    S = catops.symmetrise(A, args.k, check=False)
    rec = {
        "n": A.n,
        "k": args.k,
        "size": S.size,
        "corolla_size": len(S.restricted),
        "comparison_bijection": S.comparison_is_bijection,
    }
    status = 0 if S.comparison_is_bijection else 1
    if args.oracle:
        if X is None:
            raise ValueError("--oracle needs a free operad (collection, one-point or random)")
        expected = len(freeops.free_symmetric(freeops.s(freeops.c_n(X, max(args.k, 2))), args.k))
        rec["oracle"] = expected
        rec["agree"] = expected == S.size
        if not rec["agree"]:
            status = 1
    emit(rec)
    return status


def cmd_sc(args, emit, out):
    if args.collection:
        A = sc.SCFreeOperad(sc.sc_collection_from_json(_load_json(args.collection)))
    elif args.operad == "terminal":
        A = sc.SCTerminalOperad(args.n)
    elif args.operad == "random":
        A = sc.SCFreeOperad(sc.random_sc_collection(args.n, max(args.k + args.l, 2), args.seed))
    else:
        A = sc.SCFreeOperad(sc.one_point_sc(args.n, max(args.k + args.l, 2)))
    S = sc.sc_symmetrise(A, args.k, args.l)
    R = sc.build_scrh(A.n, args.k, args.l)
    emit(
        {
            "n": A.n,
            "k": args.k,
            "l": args.l,
            "objects": len(R.poset),
            "generators": len(R.poset.generators),
            "size": S.size,
            "corolla_size": len(S.restricted),
        }
    )
    return 0


# check suites


def suite_roundtrip(cfg):
    for n in range(1, cfg.n + 1):
        for k in range(1, cfg.k + 1):
            ts = trees.enumerate_pruned_trees(n, k)
            bad = 0
            for T in ts:
                x = trees.to_ordinal(T)
                S, perm = trees.from_total_order(x)
                if S != T or perm != tuple(range(1, k + 1)):
                    bad += 1
                elif ordinals.from_json(ordinals.to_json(x)) != x:
                    bad += 1
            yield {"n": n, "k": k, "cases": len(ts), "failures": bad, "pass": bad == 0}


def suite_finality(cfg):
    for k in range(2, cfg.k + 1):
        P = catops.build_rh(cfg.n, k)
        res = catops.check_cofinality(P)
        bad = sum(1 for r in res if not (r.nonempty and r.connected))
        yield {"n": cfg.n, "k": k, "cases": len(res), "failures": bad, "pass": bad == 0}


def suite_sym_free(cfg):
    cols = [("one-point", freeops.one_point(cfg.n, max(cfg.k, 2)))]
    cols += [(f"random:{cfg.seed + i}", freeops.random_collection(cfg.n, max(cfg.k, 2), cfg.seed + i)) for i in range(5)]
    for name, X in cols:
        Z = freeops.s(freeops.c_n(X, max(cfg.k, 2)))
        A = catops.FreeOperad(X)
        for k in range(1, cfg.k + 1):
            got = catops.symmetrise(A, k, check=False).size
            want = len(freeops.free_symmetric(Z, k))
            yield {"collection": name, "n": cfg.n, "k": k, "colimit": got, "free_symmetric": want, "pass": got == want}


def suite_euler(cfg):
    for T in trees.enumerate_reduced_trees(cfg.n, cfg.k):
        s = cells.cell_complex(T)
        yield {"tree": T.compact(), "f_vector": list(s.f_vector), "euler_c": s.euler_c, "pass": s.euler_c == 1}


def suite_tamarkin(cfg):
    found = planar.root_first_search(cfg.n, cfg.k, min_k=3, stop_at_first=True, mode="strict")
    rec = {"n": cfg.n, "max_k": cfg.k, "found": len(found), "pass": bool(found)}
    if found:
        T, x = found[0]
        rec["tree"] = T.compact()
        rec["witness"] = planar.compact(x)
    yield rec


def suite_sc_restriction(cfg):
    ops = [("terminal", sc.SCTerminalOperad(cfg.n)), ("one-point", sc.SCFreeOperad(sc.one_point_sc(cfg.n, max(cfg.k, 2))))]
    for name, A in ops:
        for a in range(1, cfg.k + 1):
            r2 = sc.check_colour_two(A, a)
            yield {"operad": name, "side": "(0,l)", "arity": a, "sc": r2.sc_size, "plain": r2.plain_size, "pass": r2.ok}
            r1 = sc.check_colour_one(A, a)
            yield {"operad": name, "side": "(k,0)", "arity": a, "sc": r1.sc_size, "plain": r1.plain_size, "pass": r1.ok}


SUITES = {
    "roundtrip": suite_roundtrip,
    "finality": suite_finality,
    "sym-free": suite_sym_free,
    "euler": suite_euler,
    "tamarkin-search": suite_tamarkin,
    "sc-restriction": suite_sc_restriction,
}


def cmd_check(args, emit, out):
    cfg = RunConfig(args.n, args.k, args.format, args.seed, args.slow)
    failed = 0
    total = 0
    try:
        for rec in SUITES[args.suite](cfg):
            total += 1
            failed += not rec["pass"]
            emit({"suite": args.suite, **rec})
    except errors.ResourceLimitError:
        emit({"suite": args.suite, "aborted": True, "completed": total, "failed": failed})
        raise
    emit({"suite": args.suite, "cases": total, "failed": failed, "status": "pass" if not failed else "fail"})
    return 1 if failed else 0


# parser


def build_parser():
    p = argparse.ArgumentParser(prog="operad-wb", description="Combinatorics of pruned trees, n-operads and symmetrisation.")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--max-objects", type=int, default=None, help="override OPERAD_WB_MAX_OBJECTS")
    sub = p.add_subparsers(dest="command", required=True)

    def nk(q, k_default=3, k_required=False):
        q.add_argument("--n", type=int, default=2)
        q.add_argument("--k", type=int, default=None if k_required else k_default, required=k_required)

    q = sub.add_parser("enumerate", help="list orders, pruned trees or decorated trees")
    q.add_argument("what", choices=["orders", "trees", "planar"])
    nk(q)
    q.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("milgram", help="the poset of total n-orders")
    nk(q)
    q.add_argument("--dot", metavar="FILE")
    q.add_argument("--stats", action="store_true")
    q.set_defaults(func=cmd_milgram)

    q = sub.add_parser("rh", help="the poset of decorated trees")
    nk(q)
    q.add_argument("--dot", metavar="FILE")
    q.add_argument("--stats", action="store_true")
    q.set_defaults(func=cmd_rh)

    q = sub.add_parser("cells", help="cells dominated by a tree")
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--k", type=int, default=None)
    q.add_argument("--tree")
    q.add_argument("--fvector", action="store_true")
    q.add_argument("--dot", metavar="FILE")
    q.set_defaults(func=cmd_cells)

    q = sub.add_parser("census", help="strata counts per arity")
    nk(q)
    q.add_argument("--csv", metavar="FILE")
    q.set_defaults(func=cmd_census)

    q = sub.add_parser("symmetrise", help="set-level symmetrisation of an n-operad")
    nk(q)
    q.add_argument("--operad", choices=["terminal", "one-point", "random"], default="one-point")
    q.add_argument("--collection", metavar="FILE")
    q.add_argument("--table", metavar="FILE")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--oracle", action="store_true")
    q.set_defaults(func=cmd_symmetrise)

    q = sub.add_parser("sc", help="two-coloured operads")
    sq = q.add_subparsers(dest="sc_command", required=True)
    r = sq.add_parser("symmetrise")
    r.add_argument("--n", type=int, default=2)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--l", type=int, required=True)
    r.add_argument("--operad", choices=["terminal", "one-point", "random"], default="one-point")
    r.add_argument("--collection", metavar="FILE")
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_sc)

    q = sub.add_parser("check", help="run a named verification suite")
    q.add_argument("suite", choices=sorted(SUITES))
    nk(q)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--slow", action="store_true")
    q.set_defaults(func=cmd_check)
    return p


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved = errors.MAX_OBJECTS
    if args.max_objects is not None:
        errors.MAX_OBJECTS = args.max_objects
    emit = Emitter(args.format, out)
    try:
        if getattr(args, "n", 1) < 1 or (getattr(args, "k", None) is not None and args.k < 0):
            raise ValueError("n must be positive and k non-negative")
        return args.func(args, emit, out)
    except errors.ResourceLimitError as exc:
        print(f"operad-wb: resource limit: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"operad-wb: {exc}", file=sys.stderr)
        return 2
    finally:
        errors.MAX_OBJECTS = saved


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
