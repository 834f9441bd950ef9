import pytest

from splitcircle.catalog import make_fsc
from splitcircle.errors import ForbiddenFound, WrongCase
from splitcircle.graph import Graph
from splitcircle.matrix import EnrichedMatrix
from splitcircle.partition import (
    Partition,
    build_case_matrices,
    case_verdict,
    class_name,
    color_empty_lr_rows,
    partition,
    partition_K,
    partition_S,
)
from splitcircle.split import anchor_graph, detect_case, split_partition


def _setup(g, kind):
    sp = split_partition(g)
    cw = detect_case(g, sp)
    assert cw.kind == kind
    return sp, cw.embedding


def _clique_vertex(g, seen, extra_k=()):
    """Add a clique vertex adjacent to every clique vertex and to ``seen``."""
    sp = split_partition(g)
    v = g.n
    return Graph.from_edges(v + 1, g.edges() + [(v, k) for k in sp.K + tuple(extra_k)] + [(v, s) for s in seen])


def test_tent_k_partition(tent):
    sp, emb = _setup(tent, "Tent")
    K = partition_K(tent, sp, "Tent", emb)
    assert K == {1: (0,), 2: (), 3: (1,), 4: (), 5: (2,), 6: ()}


def test_tent_k_vertex_seeing_all_anchor_stables(tent):
    g = _clique_vertex(tent, (3, 4, 5))
    sp = split_partition(g)
    emb = {"k1": 0, "k3": 1, "k5": 2, "s13": 3, "s35": 4, "s51": 5}
    with pytest.raises(ForbiddenFound):
        partition_K(g, sp, "Tent", emb)


def test_co4tent_k_vertex_seeing_s1_s5():
    g = _clique_vertex(anchor_graph("CoFourTent"), (5, 6))
    sp = split_partition(g)
    emb = {"k1": 0, "k3": 1, "k5": 2, "s13": 3, "s35": 4, "s1": 5, "s5": 6}
    with pytest.raises(ForbiddenFound):
        partition_K(g, sp, "CoFourTent", emb)


def test_partition_k_wrong_case(tent):
    with pytest.raises(WrongCase):
        partition_K(tent, split_partition(tent), "Net", {})


def test_tent_s13_complete_to_k2(tent):
    g = _clique_vertex(tent, (3,))  # vertex 6 lands in K2
    v = g.n
    g = Graph.from_edges(v + 1, g.edges() + [(v, 0), (v, 6), (v, 1)])
    sp, emb = _setup(g, "Tent")
    K = partition_K(g, sp, "Tent", emb)
    assert K[2] == (6,)
    S, isolated = partition_S(g, sp, "Tent", K)
    assert class_name(S[v]) == "S13" and isolated == ()


def test_tent_s_vertex_seeing_three_odd_classes(tent):
    g = _clique_vertex(tent, (3,))  # vertex 6 in K2 keeps the clique larger than N(7)
    g = Graph.from_edges(8, g.edges() + [(7, 0), (7, 1), (7, 2)])
    sp, emb = _setup(g, "Tent")
    K = partition_K(g, sp, "Tent", emb)
    with pytest.raises(ForbiddenFound):
        partition_S(g, sp, "Tent", K)


def test_four_tent_s16_bracket():
    ft = anchor_graph("FourTent")  # k1,k2,k4,k5 = 0..3
    g = _clique_vertex(ft, ())  # 7 in K6
    g = _clique_vertex(g, ())  # 8 in K6
    v = g.n
    g = Graph.from_edges(v + 1, g.edges() + [(v, k) for k in (0, 1, 2, 3, 7)])
    sp, emb = _setup(g, "FourTent")
    K = partition_K(g, sp, "FourTent", emb)
    assert K[6] == (7, 8)
    S, _ = partition_S(g, sp, "FourTent", K)
    assert class_name(S[v]) == "S[16"


def test_tent_case_matrices_trivial(tent):
    sp, emb = _setup(tent, "Tent")
    cm = build_case_matrices(tent, partition(tent, sp, "Tent", emb))
    assert all(a.m <= 1 for a in cm.classes.values())
    assert all(r.ok for r in case_verdict(cm))


def test_tent_a3_row_labels(tent):
    sp, emb = _setup(tent, "Tent")
    cm = build_case_matrices(tent, partition(tent, sp, "Tent", emb))
    a3 = cm.classes[3]
    rows = sorted(zip(a3.names, a3.labels, a3.colors))
    assert rows == [("S13", "L", "blue"), ("S35", "R", "red")]


def test_f0_member_fails_some_matrix():
    g = make_fsc("F0").graph
    sp = split_partition(g)
    cw = detect_case(g, sp)
    try:
        cm = build_case_matrices(g, partition(g, sp, cw.kind, cw.embedding))
    except ForbiddenFound:
        return
    assert not all(r.ok for r in case_verdict(cm))


def _b6(spec):
    return EnrichedMatrix.from_rows(spec)


def test_empty_lr_coloring_one_red_l_row():
    a = color_empty_lr_rows(_b6([("L", "red", "10"), ("LR", None, "00")]))
    assert a.colors[1] == "blue"


def test_empty_lr_coloring_free_without_labels():
    a = color_empty_lr_rows(_b6([("U", None, "10"), ("LR", None, "00")]))
    assert a.colors[1] is None


def test_empty_lr_coloring_conflict():
    with pytest.raises(ForbiddenFound):
        color_empty_lr_rows(_b6([("L", "red", "10"), ("L", "blue", "11"), ("LR", None, "00")]))


def test_partition_dataclass_masks(tent):
    p = Partition("Tent", {1: (0, 2)}, {})
    assert p.class_mask(1) == 0b101 and p.nclasses == 6
