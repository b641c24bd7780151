"""Command-line interface.

Exit codes: 0 success, 1 domain failure (not acyclic / not Berge-acyclic /
orphan / failed verification), 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from .acyclicity import classify
from .canonical import NotBergeAcyclic, canonical_tree
from .core import (
    Hypergraph,
    HypergraphFormatError,
    QueryParseError,
    connected_components,
    line_graph,
    load_hypergraph,
)
from .enumeration import enumerate_edits, equivalent_graph_of
from .mcs import default_root, mcs_tree, validate_join_tree
from .oracle import random_acyclic_hypergraph
from .planconv import Orphan, convert_plan
from .serialize import forest_to_dot, forest_to_json
from .verify import differential_check


class InputError(Exception):
    pass


class DomainError(Exception):
    pass


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def _load(path: str) -> Hypergraph:
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            h = load_hypergraph(path)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        return h
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except (QueryParseError, HypergraphFormatError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _components(h: Hypergraph, root: str | None) -> list[tuple[Hypergraph, str]]:
    """Each component with its root: the requested one where it lives, else the default."""
    if root is not None and root not in h:
        raise InputError(f"unknown root {root!r}")
    return [(c, root if root in c else default_root(c)) for c in connected_components(h)]


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _emit_trees(trees, h: Hypergraph, fmt: str, plot: str | None, title: str) -> None:
    if fmt == "dot":
        sys.stdout.write(forest_to_dot(trees))
    elif fmt == "json":
        sys.stdout.write(_dump(forest_to_json(trees, line_graph(h))))
    else:
        raise InputError(f"format {fmt!r} is not available for this command")
    if plot:
        from .plotting import plot_tree

        plot_tree(trees, plot, title)


def cmd_classify(args) -> int:
    h = _load(args.file)
    comps = []
    for c in connected_components(h):
        doc = classify(c, args.bound).to_json()
        comps.append({"relations": list(c.edges), **doc})
    gammas = [d["gamma"] for d in comps]
    if False in gammas:
        gamma: object = False
    elif "unknown" in gammas:
        gamma = "unknown"
    else:
        gamma = True
    top = {
        "alpha": all(d["alpha"] for d in comps),
        "linear": all(d["linear"] for d in comps),
        "berge": all(d["berge"] for d in comps),
        "gamma": gamma,
        "components": comps,
    }
    sys.stdout.write(_dump(top))
    return 0


def _classify_file(path: Path) -> dict | None:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            h = load_hypergraph(path)
    except (OSError, UnicodeDecodeError, QueryParseError, HypergraphFormatError):
        return None
    cls = [classify(c) for c in connected_components(h)]
    return {
        "alpha": all(c.alpha for c in cls),
        "linear": all(c.linear for c in cls),
        "berge": all(c.berge for c in cls),
        "gamma": all(c.gamma is True for c in cls),
    }


CORPUS_COLUMNS = ["set", "queries", "errors", "alpha", "composite_key", "berge", "gamma"]


def corpus_rows(root: Path) -> list[dict]:
    """One row per file set: files directly under ``root`` form set ``.``, each subdirectory its own set."""
    sets: dict[str, list[Path]] = {}
    for p in sorted(root.rglob("*")):
        if p.is_file() and not p.name.startswith("."):
            rel = p.relative_to(root)
            key = rel.parts[0] if len(rel.parts) > 1 else "."
            sets.setdefault(key, []).append(p)
    rows = []
    for name in sorted(sets):
        row = dict.fromkeys(CORPUS_COLUMNS[1:], 0)
        row["set"] = name
        for p in sets[name]:
            row["queries"] += 1
            res = _classify_file(p)
            if res is None:
                row["errors"] += 1
                continue
            row["alpha"] += res["alpha"]
            row["composite_key"] += res["alpha"] and not res["linear"]
            row["berge"] += res["berge"]
            row["gamma"] += res["gamma"]
        rows.append(row)
    if not rows:
        rows.append({"set": ".", **dict.fromkeys(CORPUS_COLUMNS[1:], 0)})
    return rows


def cmd_corpus(args) -> int:
    root = Path(args.dir)
    if not root.is_dir():
        raise InputError(f"{args.dir} is not a directory")
    rows = corpus_rows(root)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, CORPUS_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    if args.plot:
        from .plotting import plot_corpus

        plot_corpus(rows, args.plot)
    return 0


def _require_alpha(c: Hypergraph, tree) -> None:
    if not validate_join_tree(c, tree):
        raise DomainError(f"component {','.join(c.edges)} is not alpha-acyclic; it has no join tree")


def cmd_mcs(args) -> int:
    h = _load(args.file)
    trees = []
    for c, root in _components(h, args.root):
        t = mcs_tree(c, root)
        _require_alpha(c, t)
        trees.append(t)
    _emit_trees(trees, h, args.format, args.plot, "MCS join tree")
    return 0


def cmd_canonical(args) -> int:
    h = _load(args.file)
    trees = []
    for c, root in _components(h, args.root):
        try:
            trees.append(canonical_tree(c, root))
        except NotBergeAcyclic as exc:
            raise DomainError("not Berge-acyclic") from exc
    _emit_trees(trees, h, args.format, args.plot, "canonical join tree")
    return 0


def cmd_enumerate(args) -> int:
    h = _load(args.file)
    if args.format == "dot":
        raise InputError("format 'dot' is not available for enumerate")
    lg = line_graph(h)
    comps = _components(h, args.root)
    emitted = 0
    limited = False
    json_out = []
    for k, (c, root) in enumerate(comps):
        _require_alpha(c, mcs_tree(c, root))
        clg, _, eg = equivalent_graph_of(c, root)
        to_full = {e.id: lg.edge(e.a, e.b).id for e in clg.edges}

        def ids(s) -> str:
            return " ".join(f"e{i}" for i in sorted(to_full[x] for x in s))

        if len(comps) > 1 and args.format != "json":
            sys.stdout.write(f"# component {k + 1}: {' '.join(c.edges)}\n")
        stream = enumerate_edits(eg)
        if args.format == "edits":
            sys.stdout.write(f"TREE {ids(stream.initial)}".rstrip() + "\n")
            emitted += 1
            for edit in stream:
                if args.limit is not None and emitted >= args.limit:
                    limited = True
                    break
                sys.stdout.write(f"SWAP +e{to_full[edit.add]} -e{to_full[edit.remove]}\n")
                emitted += 1
        else:
            comp_trees = []
            for t in stream.trees():
                if args.limit is not None and emitted >= args.limit:
                    limited = True
                    break
                if args.format == "trees":
                    sys.stdout.write(ids(t) + "\n")
                else:
                    comp_trees.append(sorted(to_full[x] for x in t))
                emitted += 1
            if args.format == "json":
                json_out.append({"relations": list(c.edges), "trees": comp_trees})
        if limited:
            break
    if args.format == "json":
        doc = {"edges": [{"id": e.id, "a": e.a, "b": e.b, "weight": e.weight} for e in lg.edges],
               "components": json_out, "complete": not limited}
        sys.stdout.write(_dump(doc))
    if limited:
        print(f"limit of {args.limit} reached; enumeration incomplete", file=sys.stderr)
    return 0


def cmd_convert_plan(args) -> int:
    h = _load(args.file)
    plan = [s.strip() for s in args.plan.split(",") if s.strip()]
    unknown = [r for r in plan if r not in h]
    if unknown:
        raise InputError(f"unknown relations in plan: {', '.join(unknown)}")
    if sorted(plan) != sorted(h.edges):
        raise InputError("plan must list every relation exactly once")
    out = convert_plan(h, plan)
    if isinstance(out, Orphan):
        raise DomainError(str(out))
    _emit_trees([out], h, args.format, args.plot, "converted plan")
    return 0


def cmd_verify(args) -> int:
    if args.file:
        cases = [(args.file, _load(args.file))]
    else:
        cases = [
            (f"seed {s}", random_acyclic_hypergraph(s, args.kind, max_edges=args.max_edges))
            for s in range(args.seed, args.seed + args.count)
        ]
    failed = 0
    for name, h in cases:
        for comp in differential_check(h):
            checks = {k: v for k, v in comp.items() if k != "relations"}
            bad = [k for k, v in checks.items() if v is False]
            failed += bool(bad)
            status = "FAIL" if bad else "ok"
            detail = ", ".join(f"{k}={v}" for k, v in checks.items())
            print(f"{status} {name} [{' '.join(comp['relations'])}] {detail}")
    print(f"{len(cases)} inputs, {failed} failing components")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jointrees", description="Join trees of acyclic conjunctive queries.")
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="hypergraph JSON or predicate text")
        return sp

    sp = with_file("classify", "acyclicity classes per component, as JSON")
    sp.add_argument("--bound", type=int, default=None, help="edge bound for exhaustive cycle searches")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("corpus", help="acyclicity counts per file set, as CSV")
    sp.add_argument("dir")
    sp.add_argument("--out", help="write the CSV here instead of stdout")
    sp.add_argument("--plot", help="also write a bar chart (PNG/PDF/SVG by extension)")
    sp.set_defaults(func=cmd_corpus)

    for name, func, help in (
        ("mcs", cmd_mcs, "join tree built by maximum cardinality search"),
        ("canonical", cmd_canonical, "shallowest join tree of a Berge-acyclic query"),
    ):
        sp = with_file(name, help)
        sp.add_argument("--root")
        sp.add_argument("--format", choices=["json", "dot"], default="json")
        sp.add_argument("--plot", help="also draw the tree to this image file")
        sp.set_defaults(func=func)

    sp = with_file("enumerate", "every join tree, as edits or tree lists")
    sp.add_argument("--root")
    sp.add_argument("--limit", type=int, default=None, help="stop after this many trees")
    sp.add_argument("--format", choices=["edits", "trees", "json", "dot"], default="edits")
    sp.set_defaults(func=cmd_enumerate)

    sp = with_file("convert-plan", "join tree from a left-deep plan")
    sp.add_argument("--plan", required=True, help="comma-separated relation order")
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.add_argument("--plot", help="also draw the tree to this image file")
    sp.set_defaults(func=cmd_convert_plan)

    sp = sub.add_parser("verify", help="differential checks against brute force")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--seed", type=int, default=0, help="first seed of the random range")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--kind", choices=["alpha", "berge", "gamma"], default="alpha")
    sp.add_argument("--max-edges", type=int, default=7)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "limit", None) is not None and args.limit < 1:
        print("error: --limit must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
