"""Same network, different questions: reweighting relation types.

A small collaboration graph where people are tied by `paper` and `project`
edges.  Up-weighting one dimension moves whoever is central in it.
"""
import numpy as np

from ubik import MultiGraph, Query, SkillTable, run_ubik

rng = np.random.default_rng(7)
people = [f"p{i}" for i in range(30)]
edges = set()
while len(edges) < 60:
    u, v = sorted(rng.choice(30, 2, replace=False))
    # p0 collaborates on projects, p1 on papers
    dim = "project" if 0 in (u, v) else "paper" if 1 in (u, v) else rng.choice(["paper", "project"])
    edges.add((people[u], people[v], str(dim)))
for k in range(2, 12):
    edges.add(("p0", people[k + 10], "project"))
    edges.add(("p1", people[k], "paper"))

graph = MultiGraph.from_edges(sorted(edges))
skills = SkillTable(("ml", "db"), rng.uniform(0, 10, size=(30, 2)), graph.nodes)

for weights in ({"paper": 1, "project": 1}, {"paper": 1, "project": 0.05},
                {"paper": 0.05, "project": 1}):
    res = run_ubik(graph, skills, Query(dim_relevance=weights, alpha=2, delta=4))
    print(weights, "->", res.rank().top(5))
