"""``ubik`` command line: rank, compare, generate, stats, bench.

Exit codes: 0 success, 1 internal error, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from . import baselines, bench, metrics
from .engine import COMBINED, SEMANTICS, STANDARD, run_ubik
from .graph import GraphError, Query, Ranking
from .io import format_ranking, load_graph, load_query, load_skills, write_edges, write_skills
from .synthgen import GenSpec, generate

log = logging.getLogger("ubik")


class UsageError(Exception):
    pass


def _dim_weight(text):
    label, sep, value = text.rpartition("=")
    if not sep or not label:
        raise argparse.ArgumentTypeError(f"expected LABEL=R, got {text!r}")
    try:
        r = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"relevance {value!r} is not a number") from None
    if not r > 0:
        raise argparse.ArgumentTypeError(f"relevance must be positive, got {value}")
    return label, r


def _int_list(text):
    try:
        return [int(float(x)) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_input_args(p):
    p.add_argument("--edges", required=True, help="edge file: source TAB target TAB dimension")
    p.add_argument("--skills", required=True, help="skill file: node TAB skill TAB weight")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--query", help="key=value query file; flags below override it")
    p.add_argument("--alpha", type=float)
    p.add_argument("--delta", type=int)
    p.add_argument("--dim-weight", type=_dim_weight, action="append", default=[],
                   metavar="L=R", help="relevance of dimension L (default 1.0)")
    p.add_argument("--skill", action="append", default=[], metavar="L",
                   help=f"restrict to skill L (repeatable); {COMBINED} selects the combined table")
    p.add_argument("--semantics", choices=SEMANTICS, default=STANDARD)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--use-oracle", action="store_true", help=argparse.SUPPRESS)


def build_parser():
    parser = argparse.ArgumentParser(prog="ubik", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="propagate skills and print per-skill rankings")
    _add_input_args(p)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--out", help="write the full score dump here")

    p = sub.add_parser("compare", help="compare UBIK with degree and PageRank rankings")
    _add_input_args(p)
    p.add_argument("--top", type=int, default=1000, help="q-q series length")
    p.add_argument("--top-k", type=_int_list, default=[100, 250, 500, 1000],
                   help="cut-offs for the clustering share table")
    p.add_argument("--threshold", type=float, default=0.1)
    p.add_argument("--gold", help="reference ranking file: node TAB score")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--out", help="directory for q-q series files")

    p = sub.add_parser("generate", help="write a random network and skill table")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--avg-degree", type=float, default=3.0)
    p.add_argument("--dims", type=int, default=5)
    p.add_argument("--n-skills", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weight-range", type=_float_list, default=[0.0, 100.0], metavar="LO,HI")
    p.add_argument("--out", required=True, help="prefix; writes PREFIX.edges.tsv and PREFIX.skills.tsv")

    p = sub.add_parser("stats", help="summary statistics of a network")
    p.add_argument("--edges", required=True)
    p.add_argument("--skills")
    p.add_argument("--directed", action="store_true")

    p = sub.add_parser("bench", help="time the propagation loop over a generated sweep")
    p.add_argument("--series", choices=("nodes", "degree", "dims", "skills"), required=True)
    p.add_argument("--values", type=_float_list, required=True)
    p.add_argument("--nodes", type=int, default=25_000)
    p.add_argument("--avg-degree", type=float, default=3.0)
    p.add_argument("--dims", type=int, default=5)
    p.add_argument("--n-skills", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--delta", type=int, default=6)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="CSV path (default standard output)")
    return parser


def _query_from_args(args) -> Query:
    base = load_query(args.query) if args.query else Query()
    dims = dict(base.dim_relevance)
    dims.update(dict(args.dim_weight))
    wanted = [s for s in args.skill if s != COMBINED]
    return Query(skill_subset=tuple(wanted) or base.skill_subset,
                 dim_relevance=dims,
                 alpha=base.alpha if args.alpha is None else args.alpha,
                 delta=base.delta if args.delta is None else args.delta)


def _load_inputs(args):
    for path in (args.edges, args.skills):
        if not os.path.exists(path):
            raise UsageError(f"no such file: {path}")
    graph = load_graph(args.edges, directed=args.directed)
    skills = load_skills(args.skills, graph)
    return graph, skills


def _score(args, graph, skills, query):
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    if args.use_oracle:
        from .oracle import run_ubik_naive
        return run_ubik_naive(graph, skills, query, args.semantics)
    return run_ubik(graph, skills, query, args.semantics, threads=args.threads)


def _write(path, text, out):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_rank(args, out=sys.stdout):
    graph, skills = _load_inputs(args)
    query = _query_from_args(args)
    scores = _score(args, graph, skills, query)
    if args.out:
        rows = ["# node\tskill\traw\tnormalized"]
        for i, node in enumerate(scores.nodes):
            for k, s in enumerate(scores.skills):
                rows.append(f"{node}\t{s}\t{float(scores.raw[i, k])!r}\t"
                            f"{float(scores.normalized[i, k])!r}")
            rows.append(f"{node}\t{COMBINED}\t\t{float(scores.combined[i])!r}")
        _write(args.out, "\n".join(rows) + "\n", out)
    tables = [s for s in args.skill if s != COMBINED] + [COMBINED]
    for s in tables:
        out.write(format_ranking(scores.rank(s), args.top, header=f"skill {s}"))
    return 0


def _read_gold(path, graph):
    ranked = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.startswith("#"):
                continue
            node, _, score = line.rstrip("\n").partition("\t")
            try:
                ranked[node.strip()] = float(score)
            except ValueError:
                raise GraphError(f"{path}: line {lineno}: bad score {score!r}") from None
    return Ranking(list(ranked), list(ranked.values()))


def cmd_compare(args, out=sys.stdout):
    graph, skills = _load_inputs(args)
    query = _query_from_args(args)
    scores = _score(args, graph, skills, query)
    rankings = {
        "ubik": scores.rank(COMBINED),
        "degree": baselines.rank_by_degree(graph),
        "pagerank": baselines.pagerank(graph, damping=args.damping),
    }
    if args.gold:
        rankings["gold"] = _read_gold(args.gold, graph)
    names = list(rankings)
    top_n = min(args.top, graph.n_nodes)
    if args.out:
        os.makedirs(args.out, exist_ok=True)

    out.write("# leaders\n# algorithm\ttop nodes\n")
    for name, r in rankings.items():
        out.write(name + "\t" + "\t".join(r.top(10)) + "\n")

    out.write("# distance\n# a\tb\tD\tmean_displacement\tn\n")
    pairs = [("ubik", "ubik")] + [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    for a, b in pairs:
        ra, rb = metrics.restrict_common(rankings[a], rankings[b])
        out.write(f"{a}\t{b}\t{metrics.rank_distance(ra, rb)!r}\t"
                  f"{metrics.mean_rank_displacement(ra, rb)!r}\t{len(ra)}\n")
        if args.out and a != b:
            n = min(top_n, len(ra))
            qq = metrics.qq_series(ra, rb, n)
            _write(os.path.join(args.out, f"qq_{a}_vs_{b}.tsv"),
                   "# i\tj\n" + "".join(f"{i}\t{j}\n" for i, j in qq), out)

    clust = metrics.local_clustering_all(graph)
    cuts = [k for k in args.top_k if 0 < k <= graph.n_nodes] or [graph.n_nodes]
    out.write(f"# clustering share (k > {args.threshold})\n")
    out.write("# algorithm\tmean_k_top" + "".join(f"\ttop{k}" for k in cuts) + "\n")
    for name in ("ubik", "degree", "pagerank"):
        r = rankings[name]
        _, mean_k = metrics.top_k_clustering_share(r, graph, cuts[0], args.threshold, clust)
        shares = [metrics.top_k_clustering_share(r, graph, k, args.threshold, clust)[0]
                  for k in cuts]
        out.write(f"{name}\t{mean_k:.4f}" + "".join(f"\t{s:.4f}" for s in shares) + "\n")
    return 0


def cmd_generate(args, out=sys.stdout):
    if len(args.weight_range) != 2:
        raise UsageError("--weight-range takes LO,HI")
    spec = GenSpec(args.nodes, args.avg_degree, args.dims, args.n_skills, args.seed,
                   tuple(args.weight_range))
    graph, skills = generate(spec)
    write_edges(graph, f"{args.out}.edges.tsv")
    # the edge format cannot express isolated nodes, so their skills are dropped
    linked = [n for n, d in zip(graph.nodes, graph.degrees()) if d > 0]
    if len(linked) < graph.n_nodes:
        log.warning("%d isolated nodes omitted from the output", graph.n_nodes - len(linked))
    write_skills(skills, f"{args.out}.skills.tsv", only=linked)
    out.write(f"{args.out}.edges.tsv\t{graph.n_nodes} nodes\t{graph.n_edges} edges\n")
    return 0


def cmd_stats(args, out=sys.stdout):
    if not os.path.exists(args.edges):
        raise UsageError(f"no such file: {args.edges}")
    graph = load_graph(args.edges, directed=args.directed)
    deg = graph.degrees()
    rows = [("nodes", graph.n_nodes), ("edges", graph.n_edges),
            ("dimensions", graph.n_dims),
            ("duplicates_collapsed", graph.duplicates_collapsed),
            ("mean_degree", float(deg.mean()) if len(deg) else 0.0),
            ("max_degree", int(deg.max()) if len(deg) else 0),
            ("mean_clustering", float(metrics.local_clustering_all(graph).mean())
             if graph.n_nodes else 0.0)]
    counts = np.bincount(graph.dim, minlength=graph.n_dims)
    rows += [(f"edges[{d}]", int(c)) for d, c in zip(graph.dimensions, counts)]
    if args.skills:
        table = load_skills(args.skills, graph)
        rows.append(("skills", table.n_skills))
    out.write("# statistic\tvalue\n" + "".join(f"{k}\t{v}\n" for k, v in rows))
    return 0


def cmd_bench(args, out=sys.stdout):
    base = GenSpec(args.nodes, args.avg_degree, args.dims, args.n_skills, args.seed)
    field, cast = {"nodes": ("n_nodes", int), "degree": ("avg_degree", float),
                   "dims": ("n_dims", int), "skills": ("n_skills", int)}[args.series]
    query = Query(alpha=args.alpha, delta=args.delta)
    points = bench.sweep(base, field, [cast(v) for v in args.values],
                         series=f"increasing {args.series}", query=query,
                         repeats=args.repeats, threads=args.threads)
    _write(args.out, bench.to_csv(points), out)
    return 0


COMMANDS = {"rank": cmd_rank, "compare": cmd_compare, "generate": cmd_generate,
            "stats": cmd_stats, "bench": cmd_bench}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=err)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, GraphError, OSError) as exc:
        err.write(f"ubik {args.command}: error: {exc}\n")
        return 2
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        err.write(f"ubik {args.command}: internal error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
