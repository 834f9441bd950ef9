import pytest

from splitcircle.errors import NotDecomposable, NotSplit, WrongCase
from splitcircle.graph import Graph, are_isomorphic
from splitcircle.partition import partition_K
from splitcircle.split import (
    anchor_graph,
    decompose_on_split,
    detect_case,
    dispatch_net,
    is_split_partition,
    recompose,
    reduce_co4tent_prime,
    split_partition,
)


def _extend(g, extra_edges, extra=1):
    return Graph.from_edges(g.n + extra, g.edges() + extra_edges)


def test_split_partition_tent(tent):
    sp = split_partition(tent)
    assert sp.K == (0, 1, 2) and sp.S == (3, 4, 5)


def test_split_partition_complete():
    sp = split_partition(Graph.complete(5))
    assert sp.K == (0, 1, 2, 3, 4) and sp.S == ()


def test_split_partition_c4_not_split():
    with pytest.raises(NotSplit):
        split_partition(Graph.cycle(4))


def test_split_partition_max_clique_tie_break():
    # P3: {0,1} and {1,2} are both maximum; the least is chosen
    sp = split_partition(Graph.path(3))
    assert sp.K == (0, 1)
    assert is_split_partition(Graph.path(3), sp.K, sp.S)


def test_detect_case(tent):
    assert detect_case(tent, split_partition(tent)).kind == "Tent"
    g = anchor_graph("FourTent")
    assert detect_case(g, split_partition(g)).kind == "FourTent"
    g = anchor_graph("CoFourTent")
    assert detect_case(g, split_partition(g)).kind == "CoFourTent"
    g = anchor_graph("Net")
    assert detect_case(g, split_partition(g)).kind == "Net"
    pendant = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    assert detect_case(pendant, split_partition(pendant)).kind == "None"


def test_co4tent_prime_reduction_drops_private_vertex():
    # co-4-tent plus a stable vertex 7 seeing only k5 (index 2); K2 and K4 are empty
    g = _extend(anchor_graph("CoFourTent"), [(7, 2)])
    sp = split_partition(g)
    emb = detect_case(g, sp).embedding
    K = partition_K(g, sp, "CoFourTent", emb)
    assert not K[4] and K[5] == (2,)
    d = reduce_co4tent_prime(g, sp, K)
    assert 7 not in d.map1 and 7 in d.map2
    assert are_isomorphic(recompose(d), g)


def test_co4tent_prime_reduction_precondition():
    # a clique vertex seeing s1, s13, s35 fills K2; one seeing s5, s13, s35 fills K4
    base = anchor_graph("CoFourTent")
    k = [0, 1, 2]
    g = Graph.from_edges(9, base.edges() + [(7, v) for v in k] + [(8, v) for v in k] + [(7, 8)]
                         + [(7, 5), (7, 3), (7, 4), (8, 6), (8, 3), (8, 4)])
    sp = split_partition(g)
    K = partition_K(g, sp, "CoFourTent", detect_case(g, sp).embedding)
    assert K[2] and K[4]
    with pytest.raises(NotDecomposable):
        reduce_co4tent_prime(g, sp, K)
    with pytest.raises(WrongCase):
        reduce_co4tent_prime(g, sp, {1: (), 2: ()})


def test_dispatch_net_plain_decomposes():
    g = anchor_graph("Net")
    action, d = dispatch_net(g, split_partition(g))
    assert action == "Decompose"
    assert are_isomorphic(recompose(d), g)


def test_dispatch_net_two_even_classes_gives_four_tent():
    # net k1,k3,k5 / s1,s3,s5 plus clique vertices seeing (s1,s3) and (s3,s5)
    net = anchor_graph("Net")
    g = Graph.from_edges(8, net.edges() + [(6, v) for v in (0, 1, 2)] + [(7, v) for v in (0, 1, 2, 6)]
                         + [(6, 3), (6, 4), (7, 4), (7, 5)])
    sp = split_partition(g)
    emb = {"k1": 0, "k3": 1, "k5": 2, "s1": 3, "s3": 4, "s5": 5}
    action, payload = dispatch_net(g, sp, emb)
    assert action == "FourTent" and set(payload) == {"k1", "k2", "k4", "k5", "s12", "s24", "s45"}


def test_dispatch_net_wrong_case(tent):
    with pytest.raises(WrongCase):
        dispatch_net(tent, split_partition(tent))


def test_decompose_on_split_rejects_non_split():
    with pytest.raises(NotDecomposable):
        decompose_on_split(Graph.path(4), [0, 2])
