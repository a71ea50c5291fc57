"""Seeded random multidimensional networks for scaling benchmarks."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import GraphError, MultiGraph, SkillTable


@dataclass(frozen=True)
class GenSpec:
    n_nodes: int
    avg_degree: float
    n_dims: int = 5
    n_skills: int = 5
    seed: int = 0
    skill_weight_range: tuple[float, float] = (0.0, 100.0)

    def __post_init__(self):
        lo, hi = self.skill_weight_range
        if self.n_nodes < 1:
            raise GraphError("n_nodes must be >= 1")
        if self.avg_degree < 0:
            raise GraphError("avg_degree must be >= 0")
        if self.n_dims < 1 or self.n_skills < 1:
            raise GraphError("n_dims and n_skills must be >= 1")
        if not 0 <= lo <= hi:
            raise GraphError("skill_weight_range must satisfy 0 <= lo <= hi")

    @property
    def n_edges(self) -> int:
        return int(self.n_nodes * self.avg_degree // 2)


def _sample_edges(rng, n, n_dims, m):
    """``m`` distinct ``(u < v, d)`` triples drawn uniformly."""
    pairs = n * (n - 1) // 2
    capacity = pairs * n_dims
    if m > capacity:
        raise GraphError(f"{m} edges requested but only {capacity} fit "
                         f"({n} nodes, {n_dims} dimensions)")
    if m == 0:
        return np.zeros((0,), np.int64), np.zeros((0,), np.int64), np.zeros((0,), np.int64)
    if m > capacity // 2:
        keys = rng.choice(capacity, size=m, replace=False)
        pair, d = keys // n_dims, keys % n_dims
        iu, iv = np.triu_indices(n, k=1)
        u, v = iu[pair], iv[pair]
        return u, v, d
    keys = np.zeros(0, np.int64)
    while len(keys) < m:
        need = m - len(keys)
        batch = int(need * 1.1) + 16
        a = rng.integers(0, n, size=batch)
        b = rng.integers(0, n, size=batch)
        d = rng.integers(0, n_dims, size=batch)
        ok = a != b
        a, b, d = a[ok], b[ok], d[ok]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        new = (lo * n + hi) * n_dims + d
        allk = np.concatenate([keys, new])
        _, first = np.unique(allk, return_index=True)
        first.sort()
        keys = allk[first][:m]
    d = keys % n_dims
    pair = keys // n_dims
    return pair // n, pair % n, d


def generate(spec: GenSpec) -> tuple[MultiGraph, SkillTable]:
    """Uniform random multigraph plus a dense uniform skill table.

    Exactly ``floor(n_nodes * avg_degree / 2)`` undirected edges, each on a
    uniformly drawn node pair with a uniformly drawn dimension.  Every node
    holds every skill.
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.n_nodes
    u, v, d = _sample_edges(rng, n, spec.n_dims, spec.n_edges)
    nodes = [str(i) for i in range(n)]
    dims = [f"d{k}" for k in range(spec.n_dims)]
    graph = MultiGraph(nodes, dims, u, v, d, directed=False)
    lo, hi = spec.skill_weight_range
    vals = rng.uniform(lo, hi, size=(n, spec.n_skills))
    skills = SkillTable(tuple(f"s{k}" for k in range(spec.n_skills)), vals, graph.nodes)
    return graph, skills
