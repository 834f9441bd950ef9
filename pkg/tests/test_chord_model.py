import itertools
import random

import pytest

from splitcircle.catalog import make_fsc, wheel
from splitcircle.chord import (
    ChordModel,
    all_words,
    format_model,
    interlacement,
    oracle_model_search,
    parse_model,
    rotate,
)
from splitcircle.errors import InvalidState, NotDoubleOccurrence, ParseError, TooLarge
from splitcircle.graph import Graph, are_isomorphic
from splitcircle.model import two_sat
from splitcircle.recognize import analyze, build_model, recognize
from splitcircle.split import anchor_graph


def test_interlacement_examples():
    assert interlacement([0, 1, 0, 1]) == Graph.complete(2)
    assert interlacement([0, 0, 1, 1]) == Graph.empty(2)
    assert interlacement([0, 1, 2, 0, 1, 2]) == Graph.complete(3)


def test_interlacement_rotation_and_reversal_invariant():
    w = (0, 1, 2, 0, 3, 1, 3, 2)
    g = interlacement(w)
    for k in range(len(w)):
        assert interlacement(rotate(w, k)) == g
    assert interlacement(tuple(reversed(w))) == g


@pytest.mark.parametrize("word", [(0, 1, 0), (0, 0, 1, 1, 1, 1), (1, 1, 2, 2)])
def test_malformed_words(word):
    with pytest.raises(NotDoubleOccurrence):
        ChordModel(word)


def test_model_text_round_trip():
    m = ChordModel((0, 1, 0, 1))
    assert parse_model(format_model(m)) == m
    with pytest.raises(ParseError):
        parse_model("0 a 0 a")


def test_oracle_model_search_examples():
    m = oracle_model_search(Graph.cycle(5))
    assert m is not None and interlacement(m) == Graph.cycle(5)
    assert oracle_model_search(wheel(5)) is None
    m = oracle_model_search(Graph.complete(4))
    assert interlacement(m) == Graph.complete(4)
    with pytest.raises(TooLarge):
        oracle_model_search(Graph.empty(10), cap=9)


def test_all_words_counts():
    # (2n)! / (2^n n!) diagrams, each counted once per starting position of chord 0
    assert sum(1 for _ in all_words(3)) == 15
    for w in all_words(3):
        assert w[0] == 0


def test_oracle_model_search_matches_all_words():
    from splitcircle.oracle import enumerate_graphs

    # all_words fixes first-occurrence order, so compare up to isomorphism
    realised = {interlacement(w) for w in all_words(6)}
    for g in enumerate_graphs(6):
        assert (oracle_model_search(g) is not None) == any(are_isomorphic(g, h) for h in realised)


def test_two_sat():
    # literal 2v is x_v, 2v+1 is not x_v
    sol = two_sat(3, [(0, 2), (1, 2), (3, 4)])
    assert sol is not None and sol[1] and sol[2]
    assert two_sat(1, [(0, 0), (1, 1)]) is None


def test_two_sat_matches_truth_tables():
    rng = random.Random(37)
    for _ in range(200):
        n = rng.randint(1, 4)
        clauses = [(rng.randrange(2 * n), rng.randrange(2 * n)) for _ in range(rng.randint(1, 7))]

        def holds(assign):
            lit = lambda x: assign[x // 2] != bool(x & 1)  # noqa: E731
            return all(lit(a) or lit(b) for a, b in clauses)

        sol = two_sat(n, clauses)
        feasible = any(holds(t) for t in itertools.product((False, True), repeat=n))
        assert (sol is not None) == feasible
        if sol is not None:
            assert holds(sol)


def test_tent_model_has_twelve_arcs(tent):
    m = recognize(tent).model
    assert interlacement(m) == tent
    assert len(m.segments) == 12
    assert set(m.arcs) <= set(m.segments)


def test_four_tent_model():
    g = anchor_graph("FourTent")
    m = recognize(g).model
    assert interlacement(m) == g


def test_tent_plus_s12_vertex(tent):
    # a stable vertex seeing k1 only, inside the K1/K2 region
    g = Graph.from_edges(7, tent.edges() + [(6, 0)])
    m = recognize(g).model
    assert interlacement(m) == g
    h = interlacement(m)
    assert h.neighbors(6) == g.neighbors(6)


def test_build_model_requires_circle():
    g = make_fsc("TentJoinK1").graph
    with pytest.raises(InvalidState):
        build_model(g, analyze(g))
