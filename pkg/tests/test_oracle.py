import numpy as np
import pytest

from ubik.engine import run_ubik
from ubik.graph import GraphError, Query
from ubik.oracle import run_ubik_naive
from ubik.synthgen import GenSpec, generate

from conftest import make_graph, make_skills, random_instance


def test_k2():
    g = make_graph([("u", "v", "x")])
    s = make_skills(g, {"u": {"a": 4}})
    res = run_ubik_naive(g, s, Query(alpha=1, delta=6))
    assert res.raw_value("v", "a") == pytest.approx(2.0, rel=1e-12)
    assert res.raw_value("u", "a") == 4.0


def test_isolated_node():
    g = make_graph([], nodes=["n"])
    res = run_ubik_naive(g, make_skills(g, {"n": {"a": 5}}), Query())
    assert res.normalized[0, 0] == 1.0


def test_size_guard():
    g, s = generate(GenSpec(65, 2, 1, 1, seed=1))
    with pytest.raises(GraphError):
        run_ubik_naive(g, s, Query())


def test_random_8_node_instance_seed_42():
    g, s, q = random_instance(np.random.default_rng(42))
    for sem in ("standard", "toy"):
        a = run_ubik(g, s, q, sem).raw
        b = run_ubik_naive(g, s, q, sem).raw
        np.testing.assert_allclose(a, b, rtol=1e-9, atol=0)


@pytest.mark.parametrize("seed", range(40))
def test_directed_instances(seed):
    g, s, q = random_instance(np.random.default_rng(1000 + seed), directed=True)
    for sem in ("standard", "toy"):
        np.testing.assert_allclose(run_ubik(g, s, q, sem).raw,
                                   run_ubik_naive(g, s, q, sem).raw, rtol=1e-9, atol=0)


def test_skill_subset():
    g, s, q = random_instance(np.random.default_rng(7), max_skills=3)
    q = Query(skill_subset=(s.skills[-1],), alpha=1, delta=4)
    a, b = run_ubik(g, s, q), run_ubik_naive(g, s, q)
    assert a.skills == b.skills == (s.skills[-1],)
    np.testing.assert_allclose(a.raw, b.raw, rtol=1e-9, atol=0)
