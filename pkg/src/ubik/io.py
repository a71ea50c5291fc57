"""Readers and writers for the tab-separated edge, skill and query files.

Edge file: ``source<TAB>target<TAB>dimension``.  Skill file:
``node<TAB>skill<TAB>weight``.  Lines starting with ``#`` and blank lines
are ignored.  Query file: ``key=value`` lines (``alpha=2``, ``delta=6``,
``dim.<label>=<r>``, ``skill.<label>``).
"""
from __future__ import annotations

import logging
import os
from collections import defaultdict

import numpy as np

from .graph import GraphError, MultiGraph, ParseError, Query, Ranking, SkillTable

log = logging.getLogger(__name__)


def _lines(source):
    """Yield ``(lineno, text)`` from a path or an open text file."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            yield from enumerate((ln.rstrip("\r\n") for ln in fh), 1)
    else:
        yield from enumerate((ln.rstrip("\r\n") for ln in source), 1)


def _name(source):
    if isinstance(source, (str, os.PathLike)):
        return os.fspath(source)
    return getattr(source, "name", None)


def _records(source):
    for lineno, line in _lines(source):
        if not line.strip() or line.startswith("#"):
            continue
        yield lineno, line.split("\t")


def load_graph(source, directed=False) -> MultiGraph:
    """Read an edge list.

    ``source`` is a path or an open text file.
    Duplicate ``(u, v, d)`` lines are collapsed and counted in
    ``graph.duplicates_collapsed``.
    """
    name = _name(source)
    edges = []
    for lineno, fields in _records(source):
        if len(fields) != 3 or not all(f.strip() for f in fields):
            raise ParseError(f"expected 'source<TAB>target<TAB>dimension', got {fields!r}",
                             lineno, name)
        u, v, d = (f.strip() for f in fields)
        if u == v:
            raise ParseError(f"self-loop on node {u!r}", lineno, name)
        edges.append((u, v, d))
    g = MultiGraph.from_edges(edges, directed=directed)
    if g.duplicates_collapsed:
        log.warning("collapsed %d duplicate edge lines", g.duplicates_collapsed)
    return g


def load_skills(source, graph: MultiGraph) -> SkillTable:
    """Read a skill table for ``graph``; repeated ``(node, skill)`` lines add up."""
    name = _name(source)
    weights: dict[str, dict[str, float]] = defaultdict(lambda: defaultdict(float))
    skills: dict[str, None] = {}
    unknown = []
    for lineno, fields in _records(source):
        if len(fields) != 3:
            raise ParseError(f"expected 'node<TAB>skill<TAB>weight', got {fields!r}",
                             lineno, name)
        node, skill, raw = (f.strip() for f in fields)
        try:
            w = float(raw)
        except ValueError:
            raise ParseError(f"weight {raw!r} is not a number", lineno, name) from None
        if not np.isfinite(w) or w < 0:
            raise ParseError(f"weight must be a non-negative number, got {raw}", lineno, name)
        if node not in graph.node_index:
            unknown.append(node)
            continue
        skills.setdefault(skill)
        weights[node][skill] += w
    if unknown:
        raise GraphError(f"skill table names nodes not in graph: {sorted(set(unknown))}")
    return SkillTable.from_mapping(graph, weights, list(skills))


def load_query(source) -> Query:
    """Parse a ``key=value`` query file."""
    name = _name(source)
    kw: dict = {"dim_relevance": {}, "skill_subset": []}
    for lineno, line in _lines(source):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        try:
            if key == "alpha" and sep:
                kw["alpha"] = float(value)
            elif key == "delta" and sep:
                kw["delta"] = int(value)
            elif key.startswith("dim.") and sep:
                kw["dim_relevance"][key[4:]] = float(value)
            elif key.startswith("skill.") and not value:
                kw["skill_subset"].append(key[6:])
            else:
                raise ParseError(f"unrecognised query line {line!r}", lineno, name)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad value in {line!r}", lineno, name) from None
    return Query(**kw)


def write_edges(graph: MultiGraph, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# source\ttarget\tdimension\n")
        for u, v, d in graph.edge_labels():
            fh.write(f"{u}\t{v}\t{d}\n")


def write_skills(table: SkillTable, path, only=None):
    """Write non-zero weights; ``only`` restricts output to those node labels."""
    keep = None if only is None else set(only)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# node\tskill\tweight\n")
        for i, node in enumerate(table.node_labels):
            if keep is not None and node not in keep:
                continue
            for k, s in enumerate(table.skills):
                w = table.values[i, k]
                if w:
                    fh.write(f"{node}\t{s}\t{float(w)!r}\n")


def format_ranking(ranking: Ranking, top=None, header=None) -> str:
    rows = [f"# {header}"] if header else []
    rows.append("# rank\tnode\tscore")
    for r, (node, score) in enumerate(ranking, 1):
        if top is not None and r > top:
            break
        rows.append(f"{r}\t{node}\t{score!r}")
    return "\n".join(rows) + "\n"
