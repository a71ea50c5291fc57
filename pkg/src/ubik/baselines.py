"""Degree and PageRank rankings on the dimension-collapsed graph."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .graph import GraphError, MultiGraph, Ranking

log = logging.getLogger(__name__)


def rank_by_degree(graph: MultiGraph) -> Ranking:
    """Rank nodes by number of distinct neighbours."""
    if graph.n_nodes == 0:
        raise GraphError("cannot rank an empty graph")
    return Ranking(graph.nodes, graph.degrees().astype(float))


@dataclass
class PageRankResult:
    scores: np.ndarray
    iterations: int
    converged: bool
    ranking: Ranking


def pagerank_scores(graph: MultiGraph, damping=0.85, tol=1e-10, max_iter=200,
                    keep_multiplicity=False) -> PageRankResult:
    """Power iteration on the flattened graph.

    Parallel edges merge into one unless ``keep_multiplicity`` is set, in
    which case their count becomes the edge weight.  Dangling nodes spread
    their mass uniformly.  Stops when the L1 change drops below ``tol``.
    """
    if not 0 < damping < 1:
        raise GraphError("damping must lie in (0, 1)")
    if not tol > 0:
        raise GraphError("tol must be positive")
    n = graph.n_nodes
    if n == 0:
        raise GraphError("cannot rank an empty graph")
    adj = graph.flatten(keep_multiplicity)
    out_w = np.asarray(adj.sum(axis=1)).ravel()
    dangling = out_w == 0
    inv = np.where(dangling, 0.0, 1.0 / np.where(dangling, 1.0, out_w))
    # column-stochastic transition, applied as P^T x
    trans = (adj.multiply(inv[:, None])).T.tocsr()
    x = np.full(n, 1.0 / n)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        new = damping * (trans @ x)
        new += (damping * x[dangling].sum() + (1.0 - damping)) / n
        new /= new.sum()
        err = np.abs(new - x).sum()
        x = new
        if err < tol:
            converged = True
            break
    if not converged:
        log.warning("pagerank did not converge in %d iterations", max_iter)
    # round off float noise so symmetric nodes tie exactly
    return PageRankResult(x, it, converged, Ranking(graph.nodes, x, decimals=12))


def pagerank(graph: MultiGraph, damping=0.85, tol=1e-10, max_iter=200,
             keep_multiplicity=False) -> Ranking:
    return pagerank_scores(graph, damping, tol, max_iter, keep_multiplicity).ranking
