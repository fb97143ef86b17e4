import random

import pytest

from tncg import (
    TemporalGraph,
    compress_labels,
    is_temporal_path,
    is_temporal_spanner,
    is_temporally_connected,
    mask_to_set,
    reach,
    set_to_mask,
)
from tncg.core import reach_evaluations, reset_reach_evaluations

from oracles import brute_reach


def path_graph(labels):
    return TemporalGraph(len(labels) + 1, {(i, i + 1): lab for i, lab in enumerate(labels)})


def random_graph(rng, n, t, p=0.5):
    edges = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges[(u, v)] = rng.randint(1, t)
    return TemporalGraph(n, edges)


def test_reach_ascending_path():
    g = path_graph([1, 2, 3])
    assert reach(g, 0) == {0, 1, 2, 3}
    assert reach(g, 3) == {2, 3}  # one hop back, then labels decrease


def test_reach_descending_path_blocks():
    g = path_graph([2, 1])
    assert reach(g, 0) == {0, 1}
    assert reach(g, 2) == {0, 1, 2}


def test_reach_equal_labels_flow_both_ways():
    g = path_graph([2, 2, 2])
    for u in range(4):
        assert reach(g, u) == {0, 1, 2, 3}


def test_reach_singleton_and_isolated():
    g = TemporalGraph(3, {(0, 1): 1})
    assert reach(g, 2) == {2}
    assert reach(g, 0) == {0, 1}


def test_reach_start_label_filters_classes():
    g = path_graph([1, 2])
    # edge 0-1 has label 1 < 2 so it is invisible from start 2
    assert mask_to_set(g.reach_mask(0, start_label=2)) == {0}
    assert mask_to_set(g.reach_mask(1, start_label=2)) == {1, 2}


def test_graph_validation():
    with pytest.raises(ValueError):
        TemporalGraph(2, {(0, 0): 1})
    with pytest.raises(ValueError):
        TemporalGraph(2, {(0, 1): 0})
    with pytest.raises(ValueError):
        TemporalGraph(2, {(0, 2): 1})
    with pytest.raises(ValueError):
        TemporalGraph(0, {})


def test_pairs_normalized():
    g = TemporalGraph(3, {(2, 0): 4, (1, 2): 1})
    assert g.label(0, 2) == 4
    assert g.label(2, 0) == 4
    assert g.has_edge(2, 1)
    assert g.label(0, 1) is None
    assert g.edge_count == 2
    assert g.lifetime == 4


def test_validate_host_completeness_and_labels():
    full = TemporalGraph(3, {(0, 1): 1, (0, 2): 2, (1, 2): 1})
    full.validate_host()
    missing_pair = TemporalGraph(3, {(0, 1): 1, (0, 2): 2})
    with pytest.raises(ValueError):
        missing_pair.validate_host()
    gap = TemporalGraph(3, {(0, 1): 1, (0, 2): 3, (1, 2): 1})
    with pytest.raises(ValueError):
        gap.validate_host()


def test_mask_round_trip():
    s = {0, 3, 5}
    assert mask_to_set(set_to_mask(s)) == s
    assert set_to_mask(mask_to_set(0b101101)) == 0b101101


def test_is_temporal_path():
    g = path_graph([1, 2, 2])
    assert is_temporal_path(g, [0, 1, 2, 3])
    assert is_temporal_path(g, [0])
    assert not is_temporal_path(g, [3, 2, 1, 0])  # 2,2,1 decreasing at the end
    assert is_temporal_path(g, [3, 2, 1])
    assert not is_temporal_path(g, [0, 1, 0])  # not simple
    assert not is_temporal_path(g, [0, 2])  # no such edge


def test_temporally_connected():
    assert is_temporally_connected(path_graph([1, 1]))
    assert not is_temporally_connected(path_graph([2, 1]))  # 0 cannot reach 2
    assert is_temporally_connected(TemporalGraph(1, {}))


def test_spanner_predicate_requires_subgraph():
    host = TemporalGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 2})
    sub = TemporalGraph(3, {(0, 1): 1, (0, 2): 1})
    assert is_temporal_spanner(host, sub)
    relabeled = TemporalGraph(3, {(0, 1): 2, (0, 2): 1})
    with pytest.raises(ValueError):
        is_temporal_spanner(host, relabeled)
    extra = TemporalGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 2})
    assert is_temporal_spanner(host, extra)
    disconnected = TemporalGraph(3, {(0, 1): 1})
    assert not is_temporal_spanner(host, disconnected)


def test_compress_labels_keeps_order_and_reach():
    g = TemporalGraph(4, {(0, 1): 3, (1, 2): 7, (2, 3): 7, (0, 3): 9})
    c = compress_labels(g)
    assert sorted(set(c.edges.values())) == [1, 2, 3]
    assert c.label(0, 1) == 1 and c.label(1, 2) == 2 and c.label(0, 3) == 3
    for u in range(4):
        assert reach(c, u) == reach(g, u)


def test_reach_against_path_enumeration_randomized():
    rng = random.Random(90125)
    for _ in range(400):
        n = rng.randint(2, 7)
        t = rng.randint(1, 5)
        g = random_graph(rng, n, t, p=rng.uniform(0.2, 0.9))
        for u in range(n):
            assert reach(g, u) == brute_reach(g, u), (g.edges, u)


def test_reach_monotone_in_start_label():
    rng = random.Random(3)
    for _ in range(50):
        g = random_graph(rng, 6, 4)
        for u in range(6):
            prev = None
            for start in range(1, 6):
                cur = g.reach_mask(u, start_label=start)
                if prev is not None:
                    assert cur & prev == cur  # raising the start never adds nodes
                prev = cur


def test_reach_evaluation_counter():
    g = path_graph([1, 2])
    reset_reach_evaluations()
    g.reach_mask(0)
    g.reach_mask(1)
    assert reach_evaluations() == 2


def test_without_edge():
    g = path_graph([1, 2])
    h = g.without_edge(0, 1)
    assert h.edge_count == 1 and not h.has_edge(0, 1)
    assert g.edge_count == 2  # original untouched
