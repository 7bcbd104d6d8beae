import networkx as nx
import pytest
from hypothesis import given, strategies as st

from potcycles.errors import PreconditionError
from potcycles.fixtures import load_figure
from potcycles.graphcore import (
    SimpleGraph,
    cycle_lengths,
    cycle_spectrum,
    degree_sequence,
    has_cycle_of_length,
    hoist,
    hoist_subgraph,
    is_cycle,
    parse_edge_list,
    realize,
    top_ranked,
    two_swap,
)
from potcycles.oracle import enumerate_graphic_sequences
from potcycles.seqcore import DegreeSequence, parse_sequence
from strategies import graphs


def nx_lengths(g):
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from(g.edges)
    return {len(c) for c in nx.simple_cycles(h)}


def test_simple_graph_rejects_loops_and_bad_labels():
    with pytest.raises(ValueError):
        SimpleGraph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        SimpleGraph.from_edges(3, [(1, 4)])
    with pytest.raises(ValueError):
        SimpleGraph.from_edges(3, [(1, 2), (2, 1)])


def test_degree_sequence_examples():
    assert degree_sequence(load_figure(1)) == parse_sequence("4^4,3^2,2^2")
    assert degree_sequence(SimpleGraph(3, frozenset())) == DegreeSequence((0, 0, 0))
    assert degree_sequence(SimpleGraph.complete(4)) == DegreeSequence((3, 3, 3, 3))


@pytest.mark.parametrize("text", ["2,2,2", "4^4,3^2,2^2", "1,1,1,1", "5,3^3,2^2,1^2", "0^3"])
def test_realize_examples(text):
    seq = parse_sequence(text)
    assert degree_sequence(realize(seq)) == seq


def test_realize_exhaustive_small():
    for n in range(1, 9):
        for seq in enumerate_graphic_sequences(n):
            assert degree_sequence(realize(seq)) == seq


def test_realize_rejects_non_graphic():
    with pytest.raises(PreconditionError):
        realize(DegreeSequence((3, 3, 1, 1)))


def test_edge_list_and_dot():
    g = load_figure(1)
    text = g.to_edge_list()
    assert text.splitlines()[0] == "n 8"
    assert parse_edge_list(text) == g
    assert parse_edge_list("# comment\nn 3\n1 2\n\n2 3  # trailing\n").size == 2
    dot = g.to_dot()
    assert "x1 -- x7" in dot and "x8" in dot


def test_has_cycle_examples():
    g = load_figure(1)
    found, cyc = has_cycle_of_length(g, 7)
    assert found and len(cyc) == 7 and is_cycle(g, cyc)
    assert is_cycle(g, (1, 7, 3, 4, 8, 2, 5, 1))
    assert not has_cycle_of_length(SimpleGraph.cycle(5), 4)[0]
    assert has_cycle_of_length(SimpleGraph.complete(4), 3)[0]


def test_cycle_spectrum_examples():
    assert cycle_spectrum(load_figure(2), 8).present == frozenset(range(3, 9))
    assert cycle_spectrum(SimpleGraph.cycle(6), 6).present == frozenset({6})
    assert cycle_spectrum(SimpleGraph.complete(5), 5).covers(3, 5)


def test_restricted_spectrum_uses_only_given_vertices():
    g = load_figure(1)
    spec = cycle_spectrum(g, 5, within=[1, 2, 3, 4, 5])
    for r, cyc in spec.witnesses.items():
        assert set(cyc) <= {1, 2, 3, 4, 5} and is_cycle(g, cyc) and len(cyc) == r


@given(graphs(max_n=8))
def test_cycle_lengths_match_naive_enumeration(g):
    assert cycle_lengths(g) == nx_lengths(g)


@given(graphs(max_n=8), st.data())
def test_has_cycle_matches_cycle_lengths(g, data):
    r = data.draw(st.integers(3, max(3, g.n)))
    found, cyc = has_cycle_of_length(g, r) if r <= g.n else (False, ())
    assert found == (r in cycle_lengths(g))
    if found:
        assert len(cyc) == r and is_cycle(g, cyc)


def test_two_swap_examples():
    path = SimpleGraph.from_edges(4, [(1, 2), (2, 3), (3, 4)])
    out = two_swap(path, [(1, 2), (3, 4)], [(1, 3), (2, 4)])
    assert out.degrees() == path.degrees() and out.has_edge(1, 3)
    assert two_swap(path, [(1, 2), (3, 4)], [(1, 2), (3, 4)]) == path
    with pytest.raises(PreconditionError):
        two_swap(path, [(1, 2), (3, 4)], [(1, 4), (2, 3)])  # 2-3 already present
    with pytest.raises(PreconditionError):
        two_swap(path, [(1, 3), (2, 4)], [(1, 2), (3, 4)])  # removed edges absent


@given(st.data())
def test_random_legal_swaps_keep_every_degree(data):
    g = load_figure(3)
    edges = g.sorted_edges()
    for _ in range(10):
        (a, b), (c, d) = data.draw(st.permutations(edges))[:2]
        if len({a, b, c, d}) < 4 or g.has_edge(a, c) or g.has_edge(b, d):
            continue
        h = two_swap(g, [(a, b), (c, d)], [(a, c), (b, d)])
        assert h.degrees() == g.degrees()
        assert degree_sequence(h) == parse_sequence("4^6,2^2")
        g, edges = h, h.sorted_edges()


def test_top_ranked_ties_by_label():
    g = SimpleGraph.from_edges(4, [(3, 4), (2, 4)])
    assert top_ranked(g, 4) == [4, 2, 3, 1]


def test_hoist_identity_when_already_on_top():
    g = SimpleGraph.complete(4).with_edges()
    assert hoist_subgraph(g, [1, 2, 3]) == g


def test_hoist_moves_low_triangle_to_top():
    # the only triangles of this (3^6,2) realization avoid labels 1..3
    g = SimpleGraph.from_edges(7, [(1, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 4), (3, 6),
                                   (5, 6), (5, 7), (6, 7)])
    assert not has_cycle_of_length(g, 3, within=[1, 2, 3])[0]
    assert has_cycle_of_length(g, 3, within=[5, 6, 7])[0]
    res = hoist(g, [5, 6, 7], [1, 2, 3])
    assert res.graph.degrees() == g.degrees()
    assert 3 in cycle_lengths(res.graph, [1, 2, 3])
    assert res.vertices == frozenset({1, 2, 3})


@given(graphs(min_n=5, max_n=8), st.data())
def test_hoist_keeps_degrees_and_witness_spectrum(g, data):
    k = data.draw(st.integers(3, g.n))
    witness = data.draw(st.permutations(range(1, g.n + 1)))[:k]
    before = cycle_lengths(g, witness)
    try:
        res = hoist(g, witness)
    except PreconditionError:
        return
    assert res.graph.degrees() == g.degrees()
    assert cycle_lengths(res.graph, res.vertices) >= before
    assert res.vertices == frozenset(top_ranked(g, k))
