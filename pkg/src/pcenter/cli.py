"""Command-line front end (``pcenter``).

Exit codes: 0 on success or YES, 1 on a failed verification or NO, 2 on
usage and input errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from math import comb

from . import __version__
from .coloring import ColoringError, format_coloring, read_coloring
from .graph import GraphError, format_partition, quotient, read_edge_list
from .lifting import planar_bound, planar_centered_coloring
from .planar import EmbeddingError, planar_geodesic_partition, read_rotation, trace_faces
from .subiso import naive_subgraph_isomorphism, subgraph_isomorphism
from .surface import format_cutgraph, genus_bound, genus_centered_coloring, tree_cotree_cut_graph
from .treedecomp import (
    DecompositionError,
    format_td,
    greedy_decomposition,
    read_td,
    treewidth_centered_coloring,
    validate_td,
)
from .verify import check_p_centered, min_p_centered_colors, sampled_check

INPUT_ERRORS = (GraphError, ColoringError, DecompositionError, EmbeddingError, OSError, ValueError)


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("p must be at least 1")
    return v


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _stats_line(**fields) -> str:
    return " ".join(f"{k}={v}" for k, v in fields.items())


def _embedding(args, g):
    rot = read_rotation(args.rotation, g.n)
    return trace_faces(g, rot)


def _report_verdict(verdict) -> None:
    if verdict.ok:
        print("OK" + (" (heuristic)" if verdict.heuristic else ""))
    else:
        print("FAIL")
        print("counterexample: " + " ".join(map(str, verdict.counterexample)))
        print("colors: " + " ".join(f"{c}:{k}" for c, k in sorted(verdict.colors.items())))


def cmd_color(args) -> int:
    g = read_edge_list(args.graph)
    t0 = time.perf_counter()
    if args.family == "planar":
        e = _embedding(args, g)
        col = planar_centered_coloring(g, e, args.p)
        bound = planar_bound(args.p)
    elif args.family == "genus":
        e = _embedding(args, g)
        col = genus_centered_coloring(g, e, args.p)
        bound = genus_bound(args.p, e.euler_genus) if e.euler_genus else planar_bound(args.p)
    else:
        if args.decomposition:
            td, n = read_td(args.decomposition)
            if n != g.n:
                raise DecompositionError(f"decomposition is for {n} vertices, graph has {g.n}")
        else:
            td = greedy_decomposition(g)
        col = treewidth_centered_coloring(g, td, args.p)
        bound = comb(args.p + max(td.width, 0), max(td.width, 0))
    ms = (time.perf_counter() - t0) * 1000.0
    _write(args.output, format_coloring(col, args.p))
    if args.stats:
        print(_stats_line(colors=col.num_colors, bound=bound, p=args.p, n=g.n, ms=f"{ms:.1f}"))
    if args.verify:
        verdict = check_p_centered(g, col, args.p)
        if not verdict.ok:
            _report_verdict(verdict)
            return 1
    return 0


def cmd_partition(args) -> int:
    g = read_edge_list(args.graph)
    e = _embedding(args, g)
    t0 = time.perf_counter()
    part, td = planar_geodesic_partition(g, e)
    ms = (time.perf_counter() - t0) * 1000.0
    _write(args.output, format_partition(part))
    td_path = args.td or (args.output + ".td" if args.output and args.output != "-" else None)
    if td_path:
        _write(td_path, format_td(td, len(part)))
    if args.stats:
        print(_stats_line(parts=len(part), width=td.width, n=g.n, ms=f"{ms:.1f}"))
    if args.verify:
        st = validate_td(quotient(g, part), td)
        if not st.valid or st.width > 8:
            print(f"FAIL {st.reason}")
            return 1
    return 0


def cmd_cutgraph(args) -> int:
    g = read_edge_list(args.graph)
    e = _embedding(args, g)
    k = tree_cotree_cut_graph(g, e)
    _write(args.output, format_cutgraph(k))
    if args.stats:
        print(_stats_line(genus=k.genus, vertices=len(k.vertices), edges=len(k.edges), parts=len(k.geodesic_parts), n=g.n))
    return 0


def cmd_verify(args) -> int:
    g = read_edge_list(args.graph)
    col, _ = read_coloring(args.coloring, g.n)
    if args.mode == "sample":
        verdict = sampled_check(g, col, args.p, samples=args.samples, seed=args.seed)
    else:
        verdict = check_p_centered(g, col, args.p)
    text = []
    if verdict.ok:
        text.append("OK" + (" (heuristic)" if verdict.heuristic else ""))
    else:
        text.append("FAIL")
        text.append("counterexample: " + " ".join(map(str, verdict.counterexample)))
        text.append("colors: " + " ".join(f"{c}:{k}" for c, k in sorted(verdict.colors.items())))
    _write(args.output, "\n".join(text) + "\n")
    return 0 if verdict.ok else 1


def cmd_subiso(args) -> int:
    h = read_edge_list(args.pattern)
    g = read_edge_list(args.host)
    if args.p == "auto":
        p = None
    else:
        try:
            p = int(args.p)
        except ValueError:
            raise UsageError(f"-p expects 'auto' or an integer, got {args.p!r}") from None
        if p < h.n:
            raise UsageError(f"-p {p} is smaller than the pattern size {h.n}")
    if args.embedding:
        rot = read_rotation(args.embedding, g.n)

        def colorer(graph, q):
            return planar_centered_coloring(graph, rot, q)
    else:
        td = greedy_decomposition(g)

        def colorer(graph, q):
            return treewidth_centered_coloring(graph, td, q)

    res = subgraph_isomorphism(
        h, g, colorer, p, mode=args.mode, trials=args.trials, seed=args.seed, verify=args.verify
    )
    lines = ["YES" if res.found else "NO"]
    if res.found:
        lines += [f"{x} -> {v}" for x, v in res.embedding.items()]
    _write(args.output, "\n".join(lines) + "\n")
    if args.stats:
        print(_stats_line(p=res.p, colors=res.colors, color_sets=res.stats.color_sets,
                          label_maps=res.stats.label_maps, n=g.n))
    if args.check:
        truth = naive_subgraph_isomorphism(h, g) is not None
        if truth != res.found:
            print(f"MISMATCH naive={'YES' if truth else 'NO'}", file=sys.stderr)
    return 0 if res.found else 1


def cmd_oracle(args) -> int:
    g = read_edge_list(args.graph)
    k = min_p_centered_colors(g, args.p)
    _write(args.output, f"{k}\n")
    return 0


def cmd_bench(args) -> int:
    from .bench import format_records, run_bench

    records = run_bench(tuple(args.sizes), args.p, args.repeat)
    sys.stdout.write(format_records(records, timings=True))
    if args.output:
        _write(args.output, format_records(records, timings=False))
    return 0 if all(r.agree for r in records) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pcenter", description="Centred colourings and their applications.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, with_p=True):
        if with_p:
            sp.add_argument("-p", type=_positive, required=True, help="centredness parameter")
        sp.add_argument("-o", "--output", help="output file (default: stdout)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--stats", action="store_true", help="print a one-line machine-readable summary")

    color = sub.add_parser("color", help="compute a p-centred colouring")
    csub = color.add_subparsers(dest="family", required=True)
    for fam in ("planar", "genus"):
        sp = csub.add_parser(fam)
        sp.add_argument("graph")
        sp.add_argument("rotation")
        common(sp)
        sp.add_argument("--verify", action="store_true")
        sp.set_defaults(func=cmd_color)
    sp = csub.add_parser("treewidth")
    sp.add_argument("graph")
    sp.add_argument("decomposition", nargs="?", help="PACE .td file (default: greedy min-degree)")
    common(sp)
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(func=cmd_color)

    part = sub.add_parser("partition", help="geodesic partition")
    psub = part.add_subparsers(dest="family", required=True)
    sp = psub.add_parser("planar")
    sp.add_argument("graph")
    sp.add_argument("rotation")
    common(sp, with_p=False)
    sp.add_argument("--td", help="write the quotient decomposition here (default: OUTPUT.td)")
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("cutgraph", help="tree-cotree cut graph of a surface embedding")
    sp.add_argument("graph")
    sp.add_argument("rotation")
    common(sp, with_p=False)
    sp.set_defaults(func=cmd_cutgraph)

    ver = sub.add_parser("verify", help="check a colouring")
    vsub = ver.add_subparsers(dest="what", required=True)
    sp = vsub.add_parser("centered")
    sp.add_argument("graph")
    sp.add_argument("coloring")
    common(sp)
    sp.add_argument("--mode", choices=("exact", "sample"), default="exact")
    sp.add_argument("--samples", type=int, default=1000)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("subiso", help="subgraph isomorphism")
    sp.add_argument("pattern")
    sp.add_argument("host")
    sp.add_argument("--embedding", help="rotation file of the host (planar colourer)")
    sp.add_argument("-p", default="auto", help="'auto' (pattern size) or an integer")
    sp.add_argument("--mode", choices=("exhaustive", "randomized"), default="exhaustive")
    sp.add_argument("--trials", type=_positive, default=20)
    sp.add_argument("--verify", action="store_true", help="verify the colouring first")
    sp.add_argument("--check", action="store_true", help="compare with the naive matcher")
    common(sp, with_p=False)
    sp.set_defaults(func=cmd_subiso)

    orc = sub.add_parser("oracle", help="exact small-instance oracles")
    osub = orc.add_subparsers(dest="what", required=True)
    sp = osub.add_parser("mincolors")
    sp.add_argument("graph")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="compiled vs pure-Python kernels")
    sp.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40], help="grid side lengths")
    sp.add_argument("--repeat", type=int, default=3)
    common(sp, with_p=False)
    sp.add_argument("-p", type=_positive, default=2)
    sp.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        ap.error(str(exc))
    except INPUT_ERRORS as exc:
        print(f"pcenter: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
