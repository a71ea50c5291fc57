"""Rank the bundled 12-node toy network, skill by skill."""
from ubik import COMBINED, Propagator, Query, run_ubik
from ubik.datasets import toy_network

graph, skills, query = toy_network()
print(graph)

res = run_ubik(graph, skills, query)
for skill in skills.skills + (COMBINED,):
    r = res.rank(skill)
    print(f"{skill:>14}: " + "  ".join(f"{v}({s:.3f})" for v, s in list(r)[:4]))

# a higher alpha shrinks what travels, so node 1 keeps to its own skill
sharp = run_ubik(graph, skills, Query(dim_relevance=query.dim_relevance, alpha=3, delta=6))
own = sharp.raw_value("1", "a")
other = sum(sharp.raw_value("1", s) for s in "bcd")
print(f"\nalpha=3, node 1: a={own:.2f}, b+c+d={other:.2f}")

# path-reading semantics: node 1 gains ~4.69 of skill d at the second hop
states = list(Propagator(graph, skills, query, semantics="toy").states())
i, d = graph.node_id("1"), skills.skill_id("d")
print(f"toy semantics, skill d gained by node 1 at hop 2: "
      f"{states[1].current[i, d] - states[0].current[i, d]:.5f}")
