import random

import pytest

from tncg import (
    CostVector,
    DirectedTemporalGraph,
    StrategyProfile,
    TemporalGraph,
    agent_cost,
    created_graph,
    empty_profile,
    gen_random_host,
    gen_random_profile,
    social_cost,
)

from oracles import brute_agent_cost


def test_cost_vector_is_lexicographic():
    assert CostVector(0, 5) < CostVector(1, 0)
    assert CostVector(1, 0) < CostVector(1, 1)
    assert CostVector(2, 3) == CostVector(2, 3)
    assert max(CostVector(0, 9), CostVector(1, 0)) == CostVector(1, 0)


def test_numeric_cost_agrees_with_lex_for_large_k():
    rng = random.Random(7)
    n = 9
    k = n * n
    for _ in range(300):
        a = CostVector(rng.randint(0, n - 1), rng.randint(0, n * (n - 1)))
        b = CostVector(rng.randint(0, n - 1), rng.randint(0, n * (n - 1)))
        lex = (a.key() > b.key()) - (a.key() < b.key())
        num = (a.numeric(k) > b.numeric(k)) - (a.numeric(k) < b.numeric(k))
        assert lex == num, (a, b)


def test_cost_vector_sum_and_dict():
    c = CostVector(1, 2) + CostVector(0, 3)
    assert c == CostVector(1, 5)
    assert c.as_dict() == {"unreached": 1, "edges": 5}
    assert c.as_dict(k=10) == {"unreached": 1, "edges": 5, "numeric": 15}


def test_profile_validation():
    with pytest.raises(ValueError):
        StrategyProfile(3, [{0}, set(), set()])  # self-purchase
    with pytest.raises(ValueError):
        StrategyProfile(3, [{3}, set(), set()])  # endpoint out of range
    with pytest.raises(ValueError):
        StrategyProfile(3, [set(), set()])  # wrong length
    p = StrategyProfile(3, {0: [1, 2]})
    assert p[0] == frozenset({1, 2}) and p[1] == frozenset()


def test_profile_arcs_and_canonical():
    p = StrategyProfile(4, [{2, 1}, set(), {0}, set()])
    assert p.arcs() == [(0, 1), (0, 2), (2, 0)]
    assert p.arc_count == 3
    assert p.canonical() == ((1, 2), (), (0,), ())
    q = p.with_strategy(2, set())
    assert q[2] == frozenset() and p[2] == frozenset({0})
    assert p == StrategyProfile(4, [{1, 2}, (), (0,), ()])


def test_created_graph_copies_host_labels():
    host = TemporalGraph(3, {(0, 1): 2, (0, 2): 1, (1, 2): 3})
    p = StrategyProfile(3, [{1}, {2}, set()])
    g = created_graph(host, p)
    assert g.arcs == {(0, 1): 2, (1, 2): 3}
    with pytest.raises(ValueError):
        created_graph(TemporalGraph(3, {(0, 1): 1}), StrategyProfile(3, [{2}, set(), set()]))


def test_antiparallel_and_undirected():
    g = DirectedTemporalGraph(3, {(0, 1): 2, (1, 0): 2, (1, 2): 1})
    assert g.has_antiparallel()
    und = g.undirected()
    assert und.edges == {(0, 1): 2, (1, 2): 1}
    with pytest.raises(ValueError):
        DirectedTemporalGraph(3, {(0, 1): 2, (1, 0): 3}).undirected()


def test_agent_cost_empty_profile():
    host = gen_random_host(5, 2, 1)
    p = empty_profile(5)
    for v in range(5):
        assert agent_cost(host, p, v) == CostVector(4, 0)
    assert social_cost(host, p) == CostVector(20, 0)


def test_agent_cost_star():
    host = TemporalGraph(4, {(u, v): 1 for u in range(4) for v in range(u + 1, 4)})
    p = StrategyProfile(4, [{1, 2, 3}, set(), set(), set()])
    assert agent_cost(host, p, 0) == CostVector(0, 3)
    # leaves reach everyone through the center: directions are ignored
    for v in (1, 2, 3):
        assert agent_cost(host, p, v) == CostVector(0, 0)
    assert social_cost(host, p) == CostVector(0, 3)


def test_agent_cost_matches_oracle_randomized():
    rng = random.Random(55)
    for _ in range(120):
        n = rng.randint(3, 6)
        host = gen_random_host(n, rng.randint(1, 3), rng.randrange(10**6))
        arcs = rng.randint(0, n * (n - 1) // 2)
        p = gen_random_profile(host, arcs, rng.randrange(10**6))
        for v in range(n):
            assert agent_cost(host, p, v) == brute_agent_cost(host, p, v)
