"""Command-line entry point ``weblab``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .cache import Cache
from .errors import WeblabError
from .tableaux import Shape, StandardTableau, boundary_word, check_word, poset, syt_index


def _shape(text: str) -> Shape:
    try:
        return Shape.parse(text)
    except WeblabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _resolve_kind(args) -> str:
    inferred = "sl2" if args.shape.rows == 2 else "sl3"
    if args.kind and args.kind != inferred:
        raise WeblabError(f"--kind {args.kind} does not match shape {args.shape}")
    return inferred


def cmd_enumerate(args) -> str:
    idx = syt_index(args.shape)
    rank = poset(args.shape).rank if args.shape.size <= 18 else None
    if args.emit == "json":
        return _dump([
            {"index": k, "tableau": str(idx.tableau(k)), "word": w, **({"rank": rank[k]} if rank else {})}
            for k, w in enumerate(idx.words)
        ])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "tableau", "word"] + (["rank"] if rank else []))
    for k, w in enumerate(idx.words):
        writer.writerow([k, str(idx.tableau(k)), w] + ([rank[k]] if rank else []))
    return buf.getvalue()


def cmd_web(args) -> str:
    from .skein import web_from_word
    from .webgraph import band_arcs, boundary_word_of_web, faces

    if args.tableau:
        word = boundary_word(StandardTableau.parse(args.tableau))
    elif args.word:
        word = check_word(args.word)
    else:
        raise WeblabError("web needs --tableau or --word")
    w = web_from_word(word)
    if args.emit == "dot":
        return w.to_dot()
    fd = faces(w)
    data = w.to_json()
    data["word"] = boundary_word_of_web(w, fd)
    data["profile"] = fd.profile
    data["band_arcs"] = [list(a) for a in band_arcs(w, fd).arcs]
    return _dump(data)


def cmd_hasse(args) -> str:
    from .orders import hasse_edges

    idx = syt_index(args.shape)
    rank = poset(args.shape).rank
    edges = hasse_edges(args.shape, args.order)
    if args.emit == "json":
        return _dump({
            "shape": str(args.shape),
            "order": args.order,
            "nodes": [{"index": k, "tableau": str(idx.tableau(k)), "rank": rank[k]} for k in range(len(idx))],
            "edges": [{"from": a, "to": b, **({"generator": i} if i else {})} for a, b, i in edges],
        })
    lines = [f'digraph "{args.order}_{args.shape}" {{', "  rankdir=TB;", "  node [shape=box, fontsize=10];"]
    for k in range(len(idx)):
        lines.append(f'  t{k} [label="{idx.tableau(k)}"];')
    for r in sorted(set(rank)):
        same = " ".join(f"t{k};" for k in range(len(idx)) if rank[k] == r)
        lines.append(f"  {{ rank=same; {same} }}")
    for a, b, i in edges:
        label = f' [label="s{i}"]' if i else ""
        lines.append(f"  t{a} -> t{b}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_transition(args) -> str:
    from .reps import transition_matrix

    tm = transition_matrix(_resolve_kind(args), args.shape)
    if args.emit == "json":
        return _dump(tm.to_json())
    return tm.to_csv()


def cmd_scan(args) -> str:
    from .orders import scan_rank_inversions

    if args.n is not None:
        ns = [args.n]
    else:
        ns = list(range(1, (args.max_n or 6) + 1))
    if max(ns) > 7 or (max(ns) == 7 and not args.stretch):
        raise WeblabError("scans beyond n=6 need --stretch (and stop at n=7)")
    results = [scan_rank_inversions(n, threads=args.threads) for n in ns]
    if args.emit == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "tableau_a", "tableau_b", "rank_a", "rank_b", "crossings_a", "crossings_b"])
        for res in results:
            writer.writerows(res.csv_rows())
        return buf.getvalue()
    summary = [{"n": r.n, "pairs": r.pairs, "filtered": r.filtered} for r in results]
    return _dump(summary[0] if len(summary) == 1 else summary)


def cmd_verify(args) -> tuple[str, int]:
    from .verify import run_all

    reports = run_all(max_n=args.max_n, threads=args.threads, only=args.suite)
    failed = [r for r in reports if not r["passed"]]
    body = {"version": __version__, "passed": not failed, "reports": reports}
    if failed:
        body["failures"] = [r["check"] for r in failed]
    return json.dumps(body, indent=2, default=str) + "\n", (1 if failed else 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--no-cache", action="store_true", help="ignore and do not write the cache")

    parser = argparse.ArgumentParser(prog="weblab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"weblab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list standard tableaux of a shape")
    p.add_argument("--shape", type=_shape, required=True)
    p.add_argument("--emit", choices=["json", "csv"], default="csv")

    p = sub.add_parser("web", parents=[common], help="build the reduced web of a tableau")
    p.add_argument("--tableau")
    p.add_argument("--word")
    p.add_argument("--emit", choices=["json", "dot"], default="json")

    p = sub.add_parser("hasse", parents=[common], help="Hasse diagram of either order")
    p.add_argument("--shape", type=_shape, required=True)
    p.add_argument("--order", choices=["tableau", "shadow"], default="tableau")
    p.add_argument("--emit", choices=["dot", "json"], default="dot")

    p = sub.add_parser("transition", parents=[common], help="Specht-to-web transition matrix")
    p.add_argument("--shape", type=_shape, required=True)
    p.add_argument("--kind", choices=["sl2", "sl3"])
    p.add_argument("--emit", choices=["csv", "json"], default="csv")

    p = sub.add_parser("scan", parents=[common], help="count rank-inverting shadow pairs")
    p.add_argument("--n", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--stretch", action="store_true", help="allow n = 7")
    p.add_argument("--emit", choices=["json", "csv"], default="json")

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--max-n", type=int, help="cap every size parameter at N")
    p.add_argument("--suite", action="append", help="run only this check (name or number); repeatable")
    return parser


COMMANDS = {
    "enumerate": cmd_enumerate,
    "web": cmd_web,
    "hasse": cmd_hasse,
    "transition": cmd_transition,
    "scan": cmd_scan,
}


def _cache_key(args) -> str | None:
    if args.command == "enumerate":
        return f"enumerate-{args.shape}-{args.emit}"
    if args.command == "hasse":
        return f"hasse-{args.shape}-{args.order}-{args.emit}"
    if args.command == "transition":
        return f"transition-{args.shape}-{args.emit}"
    if args.command == "scan":
        which = args.n if args.n is not None else f"1-{args.max_n or 6}"
        return f"scan-{which}-{args.emit}"
    return None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be positive")
    try:
        if args.command == "verify":
            text, code = cmd_verify(args)
        else:
            key = None if args.no_cache else _cache_key(args)
            if key is None:
                text = COMMANDS[args.command](args)
            else:
                data, _ = Cache().get_or_compute(key, lambda: COMMANDS[args.command](args).encode())
                text = data.decode()
            code = 0
    except WeblabError as exc:
        print(f"weblab: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
