"""Multi-skill ranking of nodes in multidimensional networks.

Skills held by nodes percolate along labelled edges, weighted by how
relevant each relation type is to the query and attenuated with every
extra hop.  The result is one ranking per skill plus a combined ranking.
"""
from .baselines import pagerank, rank_by_degree
from .engine import COMBINED, Propagator, SkillScores, normalize, rank_by_skill, run_ubik
from .graph import (GraphError, MultiGraph, ParseError, Query, Ranking, SkillTable,
                    degree, degree_in_dim)
from .io import load_graph, load_query, load_skills
from .metrics import (local_clustering, mean_rank_displacement, qq_series, rank_distance,
                      restrict_common, top_k_clustering_share)
from .synthgen import GenSpec, generate

__version__ = "0.1.0"

__all__ = [
    "COMBINED", "GenSpec", "GraphError", "MultiGraph", "ParseError", "Propagator",
    "Query", "Ranking", "SkillScores", "SkillTable", "degree", "degree_in_dim",
    "generate", "load_graph", "load_query", "load_skills", "local_clustering",
    "mean_rank_displacement", "normalize", "pagerank", "qq_series", "rank_by_degree",
    "rank_by_skill", "rank_distance", "restrict_common", "run_ubik",
    "top_k_clustering_share",
]
