"""Exit criteria: one test per criterion, each logs a PASS/FAIL line."""
import math
import time

import numpy as np
import pytest

from ubik.baselines import pagerank_scores
from ubik.datasets import toy_network
from ubik.engine import Propagator, run_ubik
from ubik.graph import Query, Ranking
from ubik.metrics import local_clustering, qq_series, rank_distance, top_k_clustering_share
from ubik.oracle import run_ubik_naive
from ubik.synthgen import GenSpec, generate

from conftest import make_graph, make_skills, random_instance, record


def _loop_times(specs, rounds, query=None):
    """Best propagation-loop time (seconds) per spec, measured interleaved."""
    query = query or Query()
    props = [Propagator(*generate(s), query) for s in specs]
    props[0].run()  # warm-up
    best = [math.inf] * len(props)
    for _ in range(rounds):
        for i, p in enumerate(props):
            t0 = time.perf_counter()
            p.run()
            best[i] = min(best[i], time.perf_counter() - t0)
    return best


def test_toy_outcome():
    t0 = time.perf_counter()
    g, s, q = toy_network()
    res = run_ubik(g, s, q)
    elapsed = time.perf_counter() - t0
    top_all, top_a = res.rank().nodes[0], res.rank("a").nodes[0]
    ok = top_all == "6" and top_a == "1" and elapsed < 1.0
    record("toy outcome: node 6 first overall, node 1 first on skill a, < 1 s", ok,
           f"combined leader {top_all}, skill-a leader {top_a}, {elapsed * 1e3:.1f} ms")
    assert ok


def test_toy_semantics_spot_value():
    g, s, q = toy_network()
    states = list(Propagator(g, s, q, semantics="toy").states())
    i, d = g.node_index["1"], s.skill_id("d")
    gained = states[1].current[i, d] - states[0].current[i, d]
    target = math.sqrt(80 / 6 / 2) + math.sqrt(80 / 6 / 3)
    ok = abs(gained - target) <= 0.01 and abs(gained - 4.690) <= 0.01
    record("toy semantics: node 1 skill-d gain at l=2 is ~4.690 (tol 0.01)", ok,
           f"{gained:.5f}")
    assert ok


def test_oracle_equivalence_200_instances():
    rng = np.random.default_rng(2013)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        g, s, q = random_instance(rng)
        for sem in ("standard", "toy"):
            a = run_ubik(g, s, q, sem).raw
            b = run_ubik_naive(g, s, q, sem).raw
            rel = np.abs(a - b) / np.maximum(np.abs(b), np.finfo(float).tiny)
            rel[(a == 0) & (b == 0)] = 0.0
            worst = max(worst, float(rel.max()) if rel.size else 0.0)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 30
    record("oracle equivalence: 200 random instances, both semantics, rel 1e-9, < 30 s",
           ok, f"max rel err {worst:.2e}, {elapsed:.1f} s")
    assert ok


def test_order_independence():
    g, s = generate(GenSpec(1000, 4, 4, 3, seed=99))
    q = Query()
    ref = run_ubik(g, s, q).raw
    rng = np.random.default_rng(1)
    same = [np.array_equal(run_ubik(g, s, q, node_order=rng.permutation(1000)).raw, ref)
            for _ in range(10)]
    ok = all(same)
    record("order independence: 10 permutations on 1k nodes, bitwise identical", ok,
           f"{sum(same)}/10 identical")
    assert ok


def test_k2_no_backflow():
    g = make_graph([("u", "v", "x")])
    s = make_skills(g, {"u": {"a": 4}})
    ok = True
    for delta in range(2, 7):
        states = list(Propagator(g, s, Query(alpha=1, delta=delta)).states())
        ok &= all(np.array_equal(st.current, states[0].current) for st in states)
    record("no backflow on K2: state after l=1 equals state after l=delta-1, delta 2..6", ok)
    assert ok


def test_linear_edge_scaling():
    t0 = time.perf_counter()
    edges = [100_000, 200_000, 400_000]
    specs = [GenSpec(50_000, 2 * m / 50_000, 5, 5, seed=1) for m in edges]
    times = _loop_times(specs, rounds=5)
    ratios = [times[i + 1] / times[i] for i in range(2)]
    elapsed = time.perf_counter() - t0
    ok = all(1.6 <= r <= 2.6 for r in ratios) and elapsed < 180
    record("linear edge scaling: |E| 100k/200k/400k doubling ratios in [1.6, 2.6], < 3 min",
           ok, "ms " + "/".join(f"{t * 1e3:.0f}" for t in times)
           + ", ratios " + ", ".join(f"{r:.2f}" for r in ratios) + f", {elapsed:.0f} s")
    assert ok


def test_dimension_independence():
    specs = [GenSpec(25_000, 3, d, 5, seed=2) for d in (1, 10, 40)]
    times = _loop_times(specs, rounds=7)
    spread = max(times) / min(times)
    ok = spread <= 1.5
    record("dimension independence: dims 1/10/40, max/min <= 1.5", ok,
           "ms " + "/".join(f"{t * 1e3:.1f}" for t in times) + f", spread {spread:.2f}")
    assert ok


def test_skill_linearity():
    specs = [GenSpec(25_000, 3, 5, k, seed=3) for k in (5, 10, 20, 40)]
    times = _loop_times(specs, rounds=5)
    ratios = [times[i + 1] / times[i] for i in range(3)]
    ok = all(1.5 <= r <= 2.7 for r in ratios)
    record("skill linearity: skills 5/10/20/40 doubling ratios in [1.5, 2.7]", ok,
           "ms " + "/".join(f"{t * 1e3:.0f}" for t in times)
           + ", ratios " + ", ".join(f"{r:.2f}" for r in ratios))
    assert ok


def _hub(name, k, links):
    leaves = [f"{name}.{j}" for j in range(k)]
    pairs = [(leaves[a], leaves[b]) for a in range(k) for b in range(a + 1, k)]
    return [(name, x, "x") for x in leaves] + [(u, v, "y") for u, v in pairs[:links]]


def test_metrics_correctness():
    rng = np.random.default_rng(5)
    checks = {}
    a = Ranking.from_order([str(i) for i in rng.permutation(20)])
    checks["D(a,a)=0"] = rank_distance(a, a) == 0
    sym = True
    for _ in range(100):
        n = int(rng.integers(1, 40))
        x = Ranking.from_order([str(i) for i in rng.permutation(n)])
        y = Ranking.from_order([str(i) for i in rng.permutation(n)])
        sym &= rank_distance(x, y) == rank_distance(y, x)
    checks["D symmetric x100"] = sym
    checks["qq self on diagonal"] = all(i == j for i, j in qq_series(a, a))
    tri = make_graph([(1, 2, "x"), (2, 3, "x"), (3, 1, "y")])
    star = make_graph([("c", i, "x") for i in range(5)])
    checks["triangle k=1"] = local_clustering(tri, "1") == 1.0
    checks["star centre k=0"] = local_clustering(star, "c") == 0.0
    g = make_graph(_hub("p", 3, 0) + _hub("q", 5, 2) + _hub("r", 16, 6) + _hub("s", 4, 3))
    top = Ranking.from_order(list("pqrs") + [n for n in g.nodes if n not in "pqrs"])
    share, _ = top_k_clustering_share(top, g, 4, threshold=0.1)
    checks["top-4 share 0.5"] = share == 0.5
    ok = all(checks.values())
    record("metrics correctness", ok, ", ".join(k for k, v in checks.items() if not v) or
           "D(a,a)=0, symmetry, clustering, share 0.5")
    assert ok


def test_pagerank_baseline():
    worst_dev, worst_sum = 0.0, 0.0
    for n in (3, 5, 8, 13):
        g = make_graph([(i, (i + 1) % n, "xy"[i % 2]) for i in range(n)])
        res = pagerank_scores(g)
        worst_dev = max(worst_dev, float(np.abs(res.scores - 1 / n).max()))
        worst_sum = max(worst_sum, abs(float(res.scores.sum()) - 1))
    g, _ = generate(GenSpec(2000, 3, 3, 1, seed=4))
    worst_sum = max(worst_sum, abs(float(pagerank_scores(g).scores.sum()) - 1))
    ok = worst_dev <= 1e-9 and worst_sum <= 1e-9
    record("pagerank: uniform on cycles and sums to 1 (1e-9)", ok,
           f"max deviation {worst_dev:.1e}, max |sum-1| {worst_sum:.1e}")
    assert ok
