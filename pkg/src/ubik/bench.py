"""Wall-clock scaling sweeps over generated networks.

Only the propagation loop is timed; generation and preprocessing are
excluded.  Each point reports the fastest of ``repeats`` runs.
"""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, replace

from .engine import STANDARD, Propagator
from .graph import Query
from .synthgen import GenSpec, generate

FIELDS = ("series", "n_nodes", "avg_degree", "n_edges", "n_dims", "n_skills",
          "alpha", "delta", "millis")


@dataclass
class BenchPoint:
    series: str
    spec: GenSpec
    n_edges: int
    millis: float
    alpha: float
    delta: int

    def row(self):
        s = self.spec
        return {"series": self.series, "n_nodes": s.n_nodes, "avg_degree": s.avg_degree,
                "n_edges": self.n_edges, "n_dims": s.n_dims, "n_skills": s.n_skills,
                "alpha": self.alpha, "delta": self.delta, "millis": round(self.millis, 3)}


def time_engine(spec: GenSpec, query: Query | None = None, repeats=3,
                semantics=STANDARD, threads=1) -> tuple[float, int]:
    """Best-of-``repeats`` loop time in milliseconds, and the edge count."""
    query = query or Query()
    graph, skills = generate(spec)
    prop = Propagator(graph, skills, query, semantics)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        prop.run(threads=threads)
        best = min(best, time.perf_counter() - t0)
    return best * 1e3, graph.n_edges


def sweep(base: GenSpec, param: str, values, series=None, query=None,
          repeats=3, threads=1) -> list[BenchPoint]:
    """Vary one :class:`GenSpec` field over ``values``."""
    query = query or Query()
    out = []
    for val in values:
        spec = replace(base, **{param: val})
        ms, m = time_engine(spec, query, repeats, threads=threads)
        out.append(BenchPoint(series or f"increasing {param}", spec, m, ms,
                              query.alpha, query.delta))
    return out


def to_csv(points) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, FIELDS, lineterminator="\n")
    writer.writeheader()
    for p in points:
        writer.writerow(p.row())
    return buf.getvalue()
