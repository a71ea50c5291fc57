"""Bundled example data."""
from importlib import resources

from .io import load_graph, load_query, load_skills

TOY_RELEVANCE = {"solid": 1 / 2, "dashed": 1 / 3, "dotted": 1 / 6}


def toy_path(name):
    """Filesystem path of a bundled toy file (``toy_edges.tsv``, ...)."""
    return resources.files("ubik") / "data" / name


def toy_network():
    """The 12-node, three-dimension toy network with four skills.

    Returns ``(graph, skills, query)``; the query sets ``alpha=1``,
    ``delta=6`` and the line-style relevances 1/2, 1/3 and 1/6.
    """
    graph = load_graph(toy_path("toy_edges.tsv"))
    skills = load_skills(toy_path("toy_skills.tsv"), graph)
    query = load_query(toy_path("toy_query.txt"))
    return graph, skills, query
