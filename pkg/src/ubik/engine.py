"""Iterative skill propagation over a multidimensional network.

Each iteration ``l = 1 .. delta-1`` every node ``u`` collects, from every
neighbour ``v`` and every dimension ``d`` linking them::

    (source(v -> u, s) * r(d)) ** (1 / (l * alpha)) / (|N(u)| + |N(v)|)

At ``l = 1`` the source is the original weight ``w(v, s)``.  Afterwards it
is what ``v`` gained in the previous iteration minus what ``u`` itself sent
to ``v`` then (no backflow), clamped at zero.  Increments are computed from
the previous state only and applied together, then every skill column is
max-normalised into ``[0, 1]`` and summed into a combined score.

Computation is organised around *pairs*: distinct directed neighbour
relations ``v -> u``.  The per-dimension relevance terms of a pair are
folded into one coefficient ``sum_d r(d) ** (1/(l alpha))`` during
preprocessing, which is why the iteration cost does not depend on the
number of dimensions.

``semantics="toy"`` selects the path reading used in the worked toy
example: the amount a source hands over its first edge,
``w * r(d) / (|N(u)| + |N(v)|)``, travels on unchanged (minus backflow)
and is only attenuated by the root when credited ``l`` hops away.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .graph import GraphError, MultiGraph, Query, Ranking, SkillTable

STANDARD = "standard"
TOY = "toy"
SEMANTICS = (STANDARD, TOY)
COMBINED = "__combined__"

# sources below this are treated as empty; tiny values would otherwise be
# inflated towards 1 by the fractional root
EPS = 1e-12


@dataclass
class PropagationState:
    """Engine state at an iteration boundary.

    ``current`` holds accumulated values, ``delta_prev`` the increment of
    the last iteration and ``sent_prev`` the per-pair amounts sent in it
    (pairs indexed as in :class:`Propagator`).  In toy mode ``delta_prev``
    and ``sent_prev`` carry the unrooted transferred amounts.
    """

    current: np.ndarray
    delta_prev: np.ndarray
    sent_prev: np.ndarray
    ell: int


@dataclass
class SkillScores:
    nodes: tuple[str, ...]
    skills: tuple[str, ...]
    raw: np.ndarray
    normalized: np.ndarray
    combined: np.ndarray
    iterations_run: int

    def column(self, skill=COMBINED) -> np.ndarray:
        if skill == COMBINED:
            return self.combined
        try:
            return self.normalized[:, self.skills.index(str(skill))]
        except ValueError:
            raise GraphError(f"skill {skill!r} was not part of the query") from None

    def raw_value(self, node, skill) -> float:
        return float(self.raw[self.nodes.index(str(node)), self.skills.index(str(skill))])

    def rank(self, skill=COMBINED) -> Ranking:
        return rank_by_skill(self, skill)


def normalize(raw: np.ndarray, nodes, skills, iterations_run=0) -> SkillScores:
    """Max-normalise each column of ``raw`` and sum the columns.

    All-zero columns stay zero.
    """
    raw = np.asarray(raw, dtype=float)
    peak = raw.max(axis=0) if raw.shape[0] else np.zeros(raw.shape[1])
    scale = np.where(peak > 0, peak, 1.0)
    norm = raw / scale
    norm[:, peak <= 0] = 0.0
    return SkillScores(tuple(nodes), tuple(skills), raw, norm, norm.sum(axis=1),
                       iterations_run)


def rank_by_skill(scores: SkillScores, skill=COMBINED) -> Ranking:
    """Rank nodes by one normalised skill column, or by the combined score."""
    return Ranking(scores.nodes, scores.column(skill))


def _root(x, k):
    if k == 1:
        return x.copy()
    if k == 2:
        return np.sqrt(x)
    return np.power(x, 1.0 / k)


class Propagator:
    """Preprocessed propagation problem; :meth:`run` executes the loop.

    Preprocessing (pair tables, denominators, relevance coefficients) is
    done once in the constructor so that the iteration loop can be timed on
    its own.
    """

    def __init__(self, graph: MultiGraph, skills: SkillTable, query: Query,
                 semantics=STANDARD):
        if semantics not in SEMANTICS:
            raise GraphError(f"semantics must be one of {SEMANTICS}, got {semantics!r}")
        if skills.values.shape[0] != graph.n_nodes:
            raise GraphError("skill table does not match graph size")
        self.graph = graph
        self.query = query
        self.semantics = semantics
        cols = query.resolve_skills(skills)
        self.skill_labels = tuple(skills.skills[k] for k in cols)
        self.weights = np.ascontiguousarray(skills.values[:, cols])

        n = graph.n_nodes
        tail, head = graph.pair_tail, graph.pair_head
        self.tail, self.head = tail, head
        n_pairs = len(tail)
        if graph.directed:
            den = graph.out_degree[tail] + graph.in_degree[head]
        else:
            deg = graph.degrees()
            den = deg[tail] + deg[head]
        self.den = den.astype(float)

        # reverse pair u -> v of each pair v -> u, -1 if absent
        key = tail * n + head
        rkey = head * n + tail
        if n_pairs:
            pos = np.minimum(np.searchsorted(key, rkey), n_pairs - 1)
            found = key[pos] == rkey
        else:
            pos, found = np.zeros(0, np.int64), np.zeros(0, bool)
        self.rev = np.where(found, pos, -1)
        # missing reverses point at a zero row appended to the sent buffer
        self.rev_idx = np.where(found, pos, n_pairs)

        # receiver x pair incidence, each row ordered by ascending sender id
        order = np.lexsort((tail, head))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(head, minlength=n), out=indptr[1:])
        self.gather = sparse.csr_matrix(
            (np.ones(n_pairs), order.astype(np.int64), indptr), shape=(n, n_pairs))

        r = query.relevance(graph)
        arc_r = r[graph.arc_dim]
        self.n_iter = query.delta - 1
        self.coef = []
        for ell in range(1, self.n_iter + 1):
            k = ell * query.alpha
            if semantics == STANDARD:
                rs = np.bincount(graph.arc_pair, weights=arc_r ** (1.0 / k),
                                 minlength=n_pairs)
                self.coef.append(rs / den)
            elif ell == 1:
                rs = np.bincount(graph.arc_pair, weights=arc_r ** (1.0 / k),
                                 minlength=n_pairs)
                self.coef.append(rs / den ** (1.0 / k))
        if semantics == TOY:
            self.first_hop = np.bincount(graph.arc_pair, weights=arc_r,
                                         minlength=n_pairs) / den

    @property
    def n_pairs(self) -> int:
        return len(self.tail)

    def _collect(self, vals, node_order, pool, blocks):
        """Per-receiver sums of pair values; ``vals`` is ``(n_skills, n_pairs)``.

        Every row of the gather matrix is summed sequentially in ascending
        sender order, whichever rows are evaluated first or by which worker.
        """
        out = np.empty((vals.shape[0], self.graph.n_nodes))
        if node_order is None and pool is None:
            for k in range(vals.shape[0]):
                out[k] = self.gather @ vals[k]
            return out
        if node_order is None:
            node_order = np.arange(self.graph.n_nodes)
        parts = [p for p in np.array_split(np.asarray(node_order), blocks) if len(p)]

        def work(rows):
            sub = self.gather[rows]
            for k in range(vals.shape[0]):
                out[k, rows] = sub @ vals[k]

        if pool is None:
            for rows in parts:
                work(rows)
        else:
            list(pool.map(work, parts))
        return out

    def states(self, node_order=None, threads=1, blocks=None):
        """Yield the :class:`PropagationState` after every iteration."""
        if node_order is not None:
            node_order = np.asarray(node_order)
            if sorted(node_order.tolist()) != list(range(self.graph.n_nodes)):
                raise GraphError("node_order must be a permutation of node ids")
        blocks = blocks or max(threads, 1) * 4
        pool = ThreadPoolExecutor(threads) if threads > 1 else None
        try:
            for cur, delta, sent, ell in self._loop(node_order, pool, blocks):
                yield PropagationState(cur.T, delta.T, sent.T, ell)
        finally:
            if pool is not None:
                pool.shutdown()

    def _loop(self, node_order, pool, blocks):
        # skill-major layout: one contiguous row per skill
        w = np.ascontiguousarray(self.weights.T)
        n_sk, n_pairs = w.shape[0], self.n_pairs
        current = w.copy()
        delta = np.zeros_like(w)
        sent = np.zeros((n_sk, n_pairs))
        padded = np.zeros((n_sk, n_pairs + 1))
        alpha = self.query.alpha
        tail, rev = self.tail, self.rev_idx
        for ell in range(1, self.n_iter + 1):
            if ell == 1:
                src = w[:, tail]
            else:
                padded[:, :n_pairs] = sent
                src = delta[:, tail]
                src -= padded[:, rev]
            src[src < EPS] = 0.0
            if self.semantics == STANDARD:
                sent = _root(src, ell * alpha)
                sent *= self.coef[ell - 1]
                delta = self._collect(sent, node_order, pool, blocks)
                current = current + delta
            else:
                if ell == 1:
                    credit = _root(src, alpha) * self.coef[0]
                    sent = src * self.first_hop
                    sent[sent < EPS] = 0.0
                else:
                    credit = _root(src, ell * alpha)
                    sent = src
                current = current + self._collect(credit, node_order, pool, blocks)
                delta = self._collect(sent, node_order, pool, blocks)
            yield current, delta, sent, ell

    def run(self, node_order=None, threads=1) -> np.ndarray:
        """Raw accumulated scores, shape ``(n_nodes, n_query_skills)``."""
        current = self.weights.copy()
        for state in self.states(node_order, threads):
            current = state.current
        return np.ascontiguousarray(current)


def run_ubik(graph: MultiGraph, skills: SkillTable, query: Query,
             semantics=STANDARD, node_order=None, threads=1) -> SkillScores:
    """Propagate the queried skills and return normalised scores.

    ``node_order`` (a permutation of node ids) and ``threads`` change the
    order in which per-node increments are evaluated, never the result.
    """
    prop = Propagator(graph, skills, query, semantics)
    raw = prop.run(node_order, threads)
    return normalize(raw, graph.nodes, prop.skill_labels, prop.n_iter)
