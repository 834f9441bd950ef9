import itertools
import random

import pytest

from splitcircle.catalog import make_fsc
from splitcircle.errors import TooLarge
from splitcircle.graph import Graph
from splitcircle.matrix import EnrichedMatrix
from splitcircle.oracle import (
    OracleConfig,
    enumerate_graphs,
    enumerate_split_graphs,
    oracle_is_2nested,
    oracle_is_circle,
    random_split_graph,
)
from splitcircle.split import is_split_partition


def _is_split_brute(g):
    return any(is_split_partition(g, [v for v in range(g.n) if mask >> v & 1], [v for v in range(g.n) if not mask >> v & 1])
               for mask in range(1 << g.n))


def test_split_graph_counts_match_filtered_enumeration():
    for n in range(1, 7):
        want = sum(1 for g in enumerate_graphs(n) if _is_split_brute(g))
        assert sum(1 for _ in enumerate_split_graphs(n)) == want


def test_split_graph_small_counts():
    counts = [sum(1 for _ in enumerate_split_graphs(n)) for n in range(1, 5)]
    # n = 4 drops C4 and 2K2, the two non-split classes
    assert counts == [1, 2, 4, 9]


def test_graph_class_counts():
    assert [sum(1 for _ in enumerate_graphs(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]


def test_enumeration_limits():
    with pytest.raises(TooLarge):
        next(enumerate_split_graphs(9))
    with pytest.raises(TooLarge):
        next(enumerate_graphs(7))


def test_oracle_circle_examples(tent):
    assert oracle_is_circle(tent)
    assert not oracle_is_circle(make_fsc("TentJoinK1").graph)
    assert not oracle_is_circle(make_fsc("EvenSun", 4).graph)


def test_oracle_circle_relabel_invariant():
    rng = random.Random(41)
    for _ in range(20):
        g = random_split_graph(rng, 8)
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
        assert oracle_is_circle(g) == oracle_is_circle(h)


def test_oracle_2nested_examples():
    assert oracle_is_2nested(EnrichedMatrix.from_rows([("L", "red", "10")]))[0]


def test_oracle_cap(monkeypatch):
    monkeypatch.setenv("SPLIT_CIRCLE_CAP", "5")
    cfg = OracleConfig.from_env()
    assert cfg.circle_cap == 5
    with pytest.raises(TooLarge):
        oracle_is_circle(Graph.empty(6), cfg)
    with pytest.raises(ValueError):
        OracleConfig(circle_cap=0)


def test_random_split_graph_is_split():
    rng = random.Random(43)
    for _ in range(20):
        g = random_split_graph(rng, rng.choice((8, 9)))
        assert _is_split_brute(g)
