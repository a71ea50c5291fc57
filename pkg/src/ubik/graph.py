"""Multidimensional network, skill table, query and ranking types.

A :class:`MultiGraph` stores edges as parallel integer arrays ``(src, dst,
dim)``.  Node and dimension labels are opaque strings, mapped to dense ids
in order of first appearance.  Derived adjacency (distinct neighbour pairs,
per-dimension counts) is built once at construction; all objects here are
treated as immutable afterwards.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

log = logging.getLogger(__name__)


class GraphError(ValueError):
    """Raised for invalid graph, skill table, or query input."""


class ParseError(GraphError):
    """A line of an input file could not be accepted."""

    def __init__(self, message, lineno=None, source=None):
        self.lineno = lineno
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if lineno is not None:
            where += f"line {lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)


def _intern(labels, index):
    out = np.empty(len(labels), dtype=np.int64)
    for i, lab in enumerate(labels):
        j = index.get(lab)
        if j is None:
            j = index[lab] = len(index)
        out[i] = j
    return out


class MultiGraph:
    """Labeled multigraph ``G = (V, E, D)``.

    At most one edge exists per node pair and dimension; self-loops are
    rejected.  In undirected mode ``(u, v, d)`` and ``(v, u, d)`` are the
    same edge.

    Parameters
    ----------
    nodes : sequence of str
        Node labels, dense id ``i`` is ``nodes[i]``.
    dimensions : sequence of str
        Dimension labels.
    src, dst, dim : array_like of int
        Edge endpoints and dimension ids.  Must already be duplicate free.
    directed : bool
    """

    def __init__(self, nodes, dimensions, src, dst, dim, directed=False):
        self.nodes: tuple[str, ...] = tuple(nodes)
        self.dimensions: tuple[str, ...] = tuple(dimensions)
        self.directed = bool(directed)
        self.node_index = {n: i for i, n in enumerate(self.nodes)}
        self.dim_index = {d: i for i, d in enumerate(self.dimensions)}
        if len(self.node_index) != len(self.nodes):
            raise GraphError("duplicate node labels")
        if len(self.dim_index) != len(self.dimensions):
            raise GraphError("duplicate dimension labels")
        self.src = np.asarray(src, dtype=np.int64)
        self.dst = np.asarray(dst, dtype=np.int64)
        self.dim = np.asarray(dim, dtype=np.int64)
        self.duplicates_collapsed = 0
        self._validate()
        self._build_adjacency()
        for a in (self.src, self.dst, self.dim):
            a.setflags(write=False)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, str]], directed=False,
                   nodes: Iterable[str] = ()) -> "MultiGraph":
        """Build a graph from ``(u, v, d)`` label triples.

        Duplicate edges are collapsed; the number collapsed is stored in
        ``duplicates_collapsed``.  Extra isolated ``nodes`` may be given.
        """
        edges = list(edges)
        node_index: dict[str, int] = {}
        dim_index: dict[str, int] = {}
        _intern(list(nodes), node_index)
        u = np.empty(len(edges), dtype=np.int64)
        v = np.empty(len(edges), dtype=np.int64)
        labels = []
        for k, (a, b, d) in enumerate(edges):
            a, b = str(a), str(b)
            if a == b:
                raise GraphError(f"self-loop on node {a!r}")
            u[k] = _intern([a], node_index)[0]
            v[k] = _intern([b], node_index)[0]
            labels.append(str(d))
        d = _intern(labels, dim_index)
        u, v, d, dups = _dedupe(u, v, d, len(node_index), len(dim_index), directed)
        g = cls(list(node_index), list(dim_index), u, v, d, directed=directed)
        g.duplicates_collapsed = dups
        return g

    def _validate(self):
        n, m = len(self.nodes), len(self.src)
        if not (len(self.dst) == m and len(self.dim) == m):
            raise GraphError("edge arrays differ in length")
        if m == 0:
            return
        if min(self.src.min(), self.dst.min()) < 0 or max(self.src.max(), self.dst.max()) >= n:
            raise GraphError("edge endpoint out of range")
        if self.dim.min() < 0 or self.dim.max() >= len(self.dimensions):
            raise GraphError("edge dimension out of range")
        if np.any(self.src == self.dst):
            raise GraphError("self-loops are not allowed")
        _, _, _, dups = _dedupe(self.src, self.dst, self.dim, n,
                                len(self.dimensions), self.directed)
        if dups:
            raise GraphError(f"{dups} duplicate edges (u, v, d)")

    def _build_adjacency(self):
        n = len(self.nodes)
        nd = max(len(self.dimensions), 1)
        if self.directed:
            a, b, d = self.src, self.dst, self.dim
        else:
            a = np.concatenate([self.src, self.dst])
            b = np.concatenate([self.dst, self.src])
            d = np.concatenate([self.dim, self.dim])
        # arcs sorted by (tail, head, dim): the canonical order used everywhere
        order = np.lexsort((d, b, a))
        self.arc_tail = a[order]
        self.arc_head = b[order]
        self.arc_dim = d[order]
        # distinct neighbour pairs (tail -> head)
        key = self.arc_tail * n + self.arc_head
        first = np.ones(len(key), dtype=bool)
        first[1:] = key[1:] != key[:-1]
        self.pair_tail = self.arc_tail[first]
        self.pair_head = self.arc_head[first]
        self.arc_pair = np.cumsum(first) - 1
        self.out_degree = np.bincount(self.pair_tail, minlength=n)
        self.in_degree = np.bincount(self.pair_head, minlength=n)
        self.out_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.out_degree, out=self.out_ptr[1:])
        if self.directed:
            und = np.concatenate([self.pair_tail * n + self.pair_head,
                                  self.pair_head * n + self.pair_tail])
            und = np.unique(und)
            self._degree = np.bincount(und // n, minlength=n)
        else:
            self._degree = self.out_degree
        self._dim_degree = np.bincount(self.arc_tail * nd + self.arc_dim,
                                       minlength=n * nd).reshape(n, nd)
        if self.directed:
            self._dim_degree = self._dim_degree + np.bincount(
                self.arc_head * nd + self.arc_dim, minlength=n * nd).reshape(n, nd)
        for arr in (self.arc_tail, self.arc_head, self.arc_dim, self.arc_pair,
                    self.pair_tail, self.pair_head, self.out_degree,
                    self.in_degree, self.out_ptr, self._degree, self._dim_degree):
            arr.setflags(write=False)

    # -- basic queries -----------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.src)

    @property
    def n_dims(self) -> int:
        return len(self.dimensions)

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return (f"<MultiGraph {kind}: {self.n_nodes} nodes, {self.n_edges} edges, "
                f"{self.n_dims} dimensions>")

    def node_id(self, node) -> int:
        try:
            return self.node_index[str(node)]
        except KeyError:
            raise GraphError(f"unknown node {node!r}") from None

    def dim_id(self, label) -> int:
        try:
            return self.dim_index[str(label)]
        except KeyError:
            raise GraphError(f"unknown dimension {label!r}") from None

    def degrees(self) -> np.ndarray:
        """Distinct-neighbour counts ``|N(u)|`` for all nodes."""
        return self._degree

    def neighbors(self, node) -> list[str]:
        """Distinct out-neighbours of ``node`` (all neighbours if undirected)."""
        i = self.node_id(node)
        heads = self.pair_head[self.out_ptr[i]:self.out_ptr[i + 1]]
        return [self.nodes[j] for j in heads]

    def edge_labels(self):
        """Iterate edges as ``(u, v, d)`` label triples."""
        for a, b, d in zip(self.src, self.dst, self.dim):
            yield self.nodes[a], self.nodes[b], self.dimensions[d]

    def flatten(self, keep_multiplicity=False):
        """Collapse dimensions into a sparse adjacency matrix.

        Parallel edges merge into a single unit entry unless
        ``keep_multiplicity`` is set, in which case the entry counts them.
        Undirected graphs give a symmetric matrix.
        """
        from scipy import sparse

        n = self.n_nodes
        if keep_multiplicity:
            w = np.ones(len(self.arc_tail))
            m = sparse.csr_matrix((w, (self.arc_tail, self.arc_head)), shape=(n, n))
        else:
            w = np.ones(len(self.pair_tail))
            m = sparse.csr_matrix((w, (self.pair_tail, self.pair_head)), shape=(n, n))
        m.sum_duplicates()
        return m


def _dedupe(u, v, d, n_nodes, n_dims, directed):
    if not directed:
        u, v = np.minimum(u, v), np.maximum(u, v)
    nd = max(n_dims, 1)
    key = (u * n_nodes + v) * nd + d
    _, first = np.unique(key, return_index=True)
    first.sort()
    return u[first], v[first], d[first], len(key) - len(first)


def degree(graph: MultiGraph, node) -> int:
    """Number of distinct neighbours of ``node`` across all dimensions."""
    return int(graph.degrees()[graph.node_id(node)])


def degree_in_dim(graph: MultiGraph, node, dim) -> int:
    """Number of neighbours of ``node`` reachable through dimension ``dim``."""
    return int(graph._dim_degree[graph.node_id(node), graph.dim_id(dim)])


@dataclass(frozen=True, eq=False)
class SkillTable:
    """Non-negative skill weights, one row per graph node.

    ``values[i, k]`` is the weight of skill ``skills[k]`` for node id ``i``
    of the companion graph.  Nodes without entries hold zeros.
    """

    skills: tuple[str, ...]
    values: np.ndarray
    node_labels: tuple[str, ...] = ()

    def __post_init__(self):
        vals = np.array(self.values, dtype=float, copy=True)
        if vals.ndim != 2 or vals.shape[1] != len(self.skills):
            raise GraphError("skill values must be (n_nodes, n_skills)")
        if len(set(self.skills)) != len(self.skills):
            raise GraphError("duplicate skill labels")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise GraphError("skill weights must be finite and non-negative")
        vals.setflags(write=False)
        object.__setattr__(self, "skills", tuple(self.skills))
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, graph: MultiGraph,
                     weights: Mapping[str, Mapping[str, float]],
                     skills: Sequence[str] | None = None) -> "SkillTable":
        """``weights[node][skill] = w``; unknown nodes raise :class:`GraphError`."""
        if skills is None:
            seen: dict[str, None] = {}
            for row in weights.values():
                for s in row:
                    seen.setdefault(str(s))
            skills = list(seen)
        sk_index = {s: k for k, s in enumerate(skills)}
        vals = np.zeros((graph.n_nodes, len(skills)))
        missing = [n for n in weights if str(n) not in graph.node_index]
        if missing:
            raise GraphError(f"skill table names nodes not in graph: {missing}")
        for node, row in weights.items():
            i = graph.node_index[str(node)]
            for s, w in row.items():
                if w < 0:
                    raise GraphError(f"negative weight {w} for ({node}, {s})")
                vals[i, sk_index[str(s)]] += w
        return cls(tuple(skills), vals, graph.nodes)

    @property
    def n_skills(self) -> int:
        return len(self.skills)

    def skill_id(self, skill) -> int:
        try:
            return self.skills.index(str(skill))
        except ValueError:
            raise GraphError(f"unknown skill {skill!r}") from None

    def value(self, node, skill) -> float:
        try:
            i = self.node_labels.index(str(node))
        except ValueError:
            raise GraphError(f"unknown node {node!r}") from None
        return float(self.values[i, self.skill_id(skill)])


@dataclass(frozen=True)
class Query:
    """Parameters of one ranking run.

    ``skill_subset`` empty means all skills.  ``dim_relevance`` maps
    dimension labels to ``r(d) > 0``; unlisted dimensions get 1.0.
    """

    skill_subset: tuple[str, ...] = ()
    dim_relevance: Mapping[str, float] = field(default_factory=dict)
    alpha: float = 2.0
    delta: int = 6

    def __post_init__(self):
        object.__setattr__(self, "skill_subset", tuple(str(s) for s in self.skill_subset))
        object.__setattr__(self, "dim_relevance",
                           {str(k): float(v) for k, v in dict(self.dim_relevance).items()})
        if not self.alpha > 0:
            raise GraphError(f"alpha must be positive, got {self.alpha}")
        if int(self.delta) != self.delta or self.delta < 1:
            raise GraphError(f"delta must be an integer >= 1, got {self.delta}")
        object.__setattr__(self, "delta", int(self.delta))
        bad = {d: r for d, r in self.dim_relevance.items() if not r > 0}
        if bad:
            raise GraphError(f"dimension relevance must be positive: {bad}")

    def relevance(self, graph: MultiGraph) -> np.ndarray:
        """``r(d)`` per dimension id of ``graph``."""
        return np.array([self.dim_relevance.get(d, 1.0) for d in graph.dimensions])

    def resolve_skills(self, table: SkillTable) -> list[int]:
        """Column ids of the queried skills, in table order."""
        if not self.skill_subset:
            ids = list(range(table.n_skills))
        else:
            unknown = [s for s in self.skill_subset if s not in table.skills]
            if unknown:
                raise GraphError(f"query skills not in skill table: {unknown}")
            wanted = set(self.skill_subset)
            ids = [k for k, s in enumerate(table.skills) if s in wanted]
        if not ids:
            raise GraphError("query selects no skills")
        return ids


class Ranking:
    """Nodes ordered by descending score, ties by ascending label.

    ``rank(v)`` is the 1-based position of ``v``.  If ``decimals`` is given
    scores are rounded before ordering so that values equal up to float
    noise tie.
    """

    def __init__(self, nodes: Sequence[str], scores: Sequence[float], decimals=None):
        nodes = [str(n) for n in nodes]
        scores = np.asarray(scores, dtype=float)
        if len(nodes) != len(scores):
            raise GraphError("nodes and scores differ in length")
        if len(set(nodes)) != len(nodes):
            raise GraphError("a node appears more than once in a ranking")
        key = scores if decimals is None else np.round(scores, decimals)
        order = sorted(range(len(nodes)), key=lambda i: (-key[i], nodes[i]))
        self.nodes: tuple[str, ...] = tuple(nodes[i] for i in order)
        self.scores = scores[order]
        self.scores.setflags(write=False)
        self._pos = {n: i + 1 for i, n in enumerate(self.nodes)}

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(zip(self.nodes, self.scores.tolist()))

    def __repr__(self):
        head = ", ".join(self.nodes[:5])
        return f"<Ranking of {len(self)} nodes: {head}{', ...' if len(self) > 5 else ''}>"

    def rank(self, node) -> int:
        try:
            return self._pos[str(node)]
        except KeyError:
            raise GraphError(f"node {node!r} not in ranking") from None

    def top(self, k: int) -> tuple[str, ...]:
        return self.nodes[:k]

    def node_set(self) -> frozenset:
        return frozenset(self.nodes)

    def restrict(self, nodes: Iterable[str]) -> "Ranking":
        """Keep only ``nodes``, preserving order; ranks are re-densified."""
        keep = {str(n) for n in nodes}
        idx = [i for i, n in enumerate(self.nodes) if n in keep]
        r = Ranking.__new__(Ranking)
        r.nodes = tuple(self.nodes[i] for i in idx)
        r.scores = self.scores[idx]
        r._pos = {n: i + 1 for i, n in enumerate(r.nodes)}
        return r

    @classmethod
    def from_order(cls, nodes: Sequence[str]) -> "Ranking":
        """Ranking with the given order; scores are ``n, n-1, ..., 1``."""
        n = len(nodes)
        return cls(nodes, np.arange(n, 0, -1, dtype=float))
