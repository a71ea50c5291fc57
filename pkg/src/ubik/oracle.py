"""Brute-force reference propagation for small graphs.

A literal nested-loop transcription of the propagation rules with plain
dicts and a fresh copy of the state every iteration.  It rebuilds its own
adjacency from the edge triples and shares no traversal code with
:mod:`ubik.engine`; tests use it to check the optimised engine.
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np

from .engine import EPS, STANDARD, TOY, normalize
from .graph import GraphError

MAX_NODES = 64


def run_ubik_naive(graph, skills, query, semantics=STANDARD):
    if graph.n_nodes > MAX_NODES:
        raise GraphError(f"naive propagation is limited to {MAX_NODES} nodes")
    if semantics not in (STANDARD, TOY):
        raise GraphError(f"unknown semantics {semantics!r}")
    if query.skill_subset:
        unknown = [s for s in query.skill_subset if s not in skills.skills]
        if unknown:
            raise GraphError(f"query skills not in skill table: {unknown}")
    wanted = [s for s in skills.skills if not query.skill_subset or s in query.skill_subset]
    if not wanted:
        raise GraphError("query selects no skills")

    nodes = list(graph.nodes)
    # links[(v, u)] = dimensions along which v hands skills to u
    links = defaultdict(list)
    for a, b, d in graph.edge_labels():
        links[(a, b)].append(d)
        if not graph.directed:
            links[(b, a)].append(d)
    out_nb = defaultdict(set)
    in_nb = defaultdict(set)
    for (v, u) in links:
        out_nb[v].add(u)
        in_nb[u].add(v)

    def denom(v, u):
        if graph.directed:
            return len(out_nb[v]) + len(in_nb[u])
        return len(out_nb[v]) + len(out_nb[u])

    def rel(d):
        return query.dim_relevance.get(d, 1.0)

    w = {}
    for i, n in enumerate(nodes):
        for s in wanted:
            w[(n, s)] = float(skills.values[i, skills.skills.index(s)])

    f = dict(w)
    gained = {key: 0.0 for key in w}
    sent = {}
    alpha = query.alpha
    for ell in range(1, query.delta):
        new_f = dict(f)
        new_gained = {key: 0.0 for key in w}
        new_sent = {}
        for u in sorted(nodes):
            for v in sorted(in_nb[u]):
                dims = sorted(links[(v, u)])
                for s in wanted:
                    if ell == 1:
                        source = w[(v, s)]
                    else:
                        source = gained[(v, s)] - sent.get((u, v, s), 0.0)
                    if source < EPS:
                        source = 0.0
                    if semantics == STANDARD:
                        amount = 0.0
                        for d in dims:
                            amount += (source * rel(d)) ** (1.0 / (ell * alpha)) / denom(v, u)
                        new_sent[(v, u, s)] = amount
                        new_gained[(u, s)] += amount
                        new_f[(u, s)] += amount
                    else:
                        if ell == 1:
                            credit = 0.0
                            mass = 0.0
                            for d in dims:
                                x = source * rel(d) / denom(v, u)
                                credit += x ** (1.0 / alpha)
                                mass += x
                            if mass < EPS:
                                mass = 0.0
                        else:
                            credit = source ** (1.0 / (ell * alpha))
                            mass = source
                        new_sent[(v, u, s)] = mass
                        new_gained[(u, s)] += mass
                        new_f[(u, s)] += credit
        f, gained, sent = new_f, new_gained, new_sent

    raw = np.array([[f[(n, s)] for s in wanted] for n in nodes]).reshape(len(nodes), len(wanted))
    return normalize(raw, nodes, wanted, max(query.delta - 1, 0))
