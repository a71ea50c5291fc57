import io

import numpy as np
import pytest

from ubik.datasets import toy_network
from ubik.graph import MultiGraph, Query, SkillTable


@pytest.fixture(scope="session")
def toy():
    return toy_network()


def make_graph(edges, directed=False, nodes=()):
    return MultiGraph.from_edges([tuple(map(str, e)) for e in edges], directed=directed,
                                 nodes=[str(n) for n in nodes])


def make_skills(graph, weights, skills=None):
    return SkillTable.from_mapping(
        graph, {str(n): {str(s): w for s, w in row.items()} for n, row in weights.items()},
        skills)


def text(s):
    return io.StringIO(s)


def random_instance(rng, max_nodes=8, max_dims=3, max_skills=3, directed=False):
    """Small random graph + skill table + query for oracle comparisons."""
    n = int(rng.integers(1, max_nodes + 1))
    n_dims = int(rng.integers(1, max_dims + 1))
    n_sk = int(rng.integers(1, max_skills + 1))
    edges = []
    for u in range(n):
        for v in range(n):
            if u == v or (not directed and v < u):
                continue
            for d in range(n_dims):
                if rng.random() < 0.3:
                    edges.append((u, v, f"d{d}"))
    graph = make_graph(edges, directed=directed, nodes=range(n))
    vals = rng.uniform(0, 10, size=(n, n_sk))
    vals[rng.random(size=vals.shape) < 0.4] = 0.0
    skills = SkillTable(tuple(f"s{k}" for k in range(n_sk)), vals, graph.nodes)
    rel = {f"d{d}": float(rng.choice([0.2, 0.5, 1.0, 3.0])) for d in range(n_dims)}
    query = Query(dim_relevance=rel, alpha=float(rng.choice([0.5, 1, 2, 3])),
                  delta=int(rng.choice([1, 2, 4, 6])))
    return graph, skills, query


ACCEPTANCE = []


def record(name, ok, detail=""):
    """Log one acceptance criterion; the summary is printed after the run."""
    ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
