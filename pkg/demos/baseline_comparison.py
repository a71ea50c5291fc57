"""Compare the skill ranking with degree and PageRank on a random graph."""
from ubik import (GenSpec, Query, generate, pagerank, rank_by_degree, rank_distance,
                  run_ubik, top_k_clustering_share)
from ubik.metrics import local_clustering_all, qq_series

graph, skills = generate(GenSpec(400, 36, n_dims=3, n_skills=4, seed=11))
rankings = {
    "ubik": run_ubik(graph, skills, Query()).rank(),
    "degree": rank_by_degree(graph),
    "pagerank": pagerank(graph),
}

names = list(rankings)
for i, a in enumerate(names):
    for b in names[i + 1:]:
        print(f"D({a}, {b}) = {rank_distance(rankings[a], rankings[b]):.4f}")

print("\nq-q, first ten ubik nodes -> rank under pagerank:")
print(qq_series(rankings["ubik"], rankings["pagerank"], 10))

cc = local_clustering_all(graph)
print("\nshare of top-k with clustering > 0.1")
for k in (10, 50, 200):
    row = [f"{top_k_clustering_share(r, graph, k, clustering=cc)[0]:.3f}"
           for r in rankings.values()]
    print(k, *row, sep="\t")
