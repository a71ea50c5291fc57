"""Ranking comparison and structural statistics."""
from __future__ import annotations

import numpy as np

from .graph import GraphError, MultiGraph, Ranking


def _check_same(a: Ranking, b: Ranking):
    if a.node_set() != b.node_set():
        raise GraphError("rankings cover different node sets; restrict them first")


def restrict_common(a: Ranking, b: Ranking) -> tuple[Ranking, Ranking]:
    """Intersect the node sets of two rankings and re-densify ranks."""
    common = a.node_set() & b.node_set()
    return a.restrict(common), b.restrict(common)


def qq_series(a: Ranking, b: Ranking, top_n: int | None = None) -> list[tuple[int, int]]:
    """``(i, j)`` pairs: the node at rank ``i`` in ``a`` has rank ``j`` in ``b``.

    Only the first ``top_n`` nodes of ``a`` are included.
    """
    _check_same(a, b)
    if top_n is None:
        top_n = len(a)
    if not 0 <= top_n <= len(a):
        raise GraphError(f"top_n must be between 0 and {len(a)}")
    return [(i, b.rank(node)) for i, node in enumerate(a.top(top_n), 1)]


def _rank_vectors(a, b):
    _check_same(a, b)
    nodes = a.nodes
    ra = np.arange(1, len(nodes) + 1)
    rb = np.array([b.rank(v) for v in nodes])
    return ra, rb


def rank_distance(a: Ranking, b: Ranking) -> float:
    """Average q-q displacement ``(1/|V|) sum_v |r1(v) - r2(v)| / |V|``.

    Both ``1/|V|`` factors are kept, so the value is the summed absolute
    displacement divided by ``|V|**2``.
    """
    ra, rb = _rank_vectors(a, b)
    n = len(ra)
    if n == 0:
        return 0.0
    return float(np.abs(ra - rb).sum() / n / n)


def mean_rank_displacement(a: Ranking, b: Ranking) -> float:
    """Mean absolute rank difference (``rank_distance`` times ``|V|``)."""
    ra, rb = _rank_vectors(a, b)
    return float(np.abs(ra - rb).mean()) if len(ra) else 0.0


def local_clustering_all(graph: MultiGraph) -> np.ndarray:
    """Local clustering of every node on the flattened, undirected graph."""
    adj = graph.flatten()
    adj = ((adj + adj.T) > 0).astype(float).tocsr()
    adj.setdiag(0)
    adj.eliminate_zeros()
    k = np.asarray(adj.sum(axis=1)).ravel()
    # closed 2-walks through each neighbour pair count every triangle twice
    tri2 = np.asarray((adj @ adj).multiply(adj).sum(axis=1)).ravel()
    denom = k * (k - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(k >= 2, tri2 / np.where(denom > 0, denom, 1), 0.0)
    return out


def local_clustering(graph: MultiGraph, node) -> float:
    """``2 |links among N(i)| / (|N(i)| (|N(i)| - 1))``, 0 below two neighbours."""
    i = graph.node_id(node)
    adj = graph.flatten()
    adj = ((adj + adj.T) > 0).tocsr()
    nb = [j for j in adj.indices[adj.indptr[i]:adj.indptr[i + 1]] if j != i]
    k = len(nb)
    if k < 2:
        return 0.0
    sub = adj[nb][:, nb]
    links = sub.nnz // 2
    return 2.0 * links / (k * (k - 1))


def top_k_clustering_share(ranking: Ranking, graph: MultiGraph, k: int,
                           threshold=0.1, clustering=None) -> tuple[float, float]:
    """Share of the top ``k`` nodes with clustering above ``threshold``.

    Returns ``(share, mean clustering of the top k)``.  A precomputed
    per-node ``clustering`` array (graph id order) may be passed.
    """
    if not 0 < k <= len(ranking):
        raise GraphError(f"k must be between 1 and {len(ranking)}")
    if clustering is None:
        clustering = local_clustering_all(graph)
    vals = np.array([clustering[graph.node_id(v)] for v in ranking.top(k)])
    return float(np.mean(vals > threshold)), float(vals.mean())
