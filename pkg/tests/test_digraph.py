import random

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import DiGraphMatcher, categorical_edge_match

from toric_schubert import PreconditionError, make_word, parse_type, parse_word
from toric_schubert.digraph import (LabeledDigraph, are_isomorphic, canonical_form, connected_components,
                                    digraph_of_orientation, digraph_of_word, find_isomorphism, indegrees,
                                    is_connected, is_fano, is_weak_fano, sinks, sources)
from toric_schubert.weyl_words import orientations, random_toric_word, word_from_orientation


def to_nx(G):
    H = nx.DiGraph()
    H.add_nodes_from(G.vertices)
    for a, b, lab in G.edges:
        H.add_edge(a, b, label=lab)
    return H


def nx_iso(G, H):
    return DiGraphMatcher(to_nx(G), to_nx(H), edge_match=categorical_edge_match("label", 0)).is_isomorphic()


def test_example_edges():
    G = digraph_of_word(parse_word(parse_type("A5"), "3,1,4,5,2"))
    assert set(G.edges) == {(2, 1, 1), (2, 3, 1), (4, 3, 1), (5, 4, 1)}
    assert sinks(G) == {1, 3}
    assert sources(G) == {2, 5}


def test_labels_non_simply_laced():
    d = parse_type("B2")
    assert set(digraph_of_word(make_word(d, (1, 2))).edges) == {(2, 1, 1)}
    assert set(digraph_of_word(make_word(d, (2, 1))).edges) == {(1, 2, 2)}
    g = parse_type("G2")
    assert set(digraph_of_word(make_word(g, (1, 2))).edges) == {(2, 1, 3)}


def test_orientation_agrees_with_word():
    for t in ["D5", "E6", "F4"]:
        d = parse_type(t)
        for o in orientations(d):
            assert digraph_of_orientation(o) == digraph_of_word(word_from_orientation(o))


def test_validation():
    with pytest.raises(PreconditionError):
        LabeledDigraph.build([1, 2], [(1, 2, 1), (2, 1, 1)])
    with pytest.raises(PreconditionError):
        LabeledDigraph.build([1, 2], [(1, 2, 4)])
    with pytest.raises(PreconditionError):
        LabeledDigraph.build([1], [(1, 2, 1)])


def test_fano_by_indegree():
    d = parse_type("A3")
    assert is_fano(digraph_of_word(make_word(d, (1, 2, 3))))
    assert is_fano(digraph_of_word(make_word(d, (1, 3, 2))))
    assert not is_fano(digraph_of_word(make_word(d, (2, 1, 3))))
    assert is_weak_fano(digraph_of_word(make_word(d, (2, 1, 3))))
    D = parse_type("D4")
    G = digraph_of_word(make_word(D, (1, 3, 4, 2)))
    assert indegrees(G)[2] == 0 and not is_weak_fano(digraph_of_word(make_word(D, (2, 1, 3, 4))))


def test_components():
    G = digraph_of_word(make_word(parse_type("A5"), (1, 3, 5)))
    assert len(connected_components(G)) == 3 and not is_connected(G)
    assert is_connected(digraph_of_word(make_word(parse_type("A5"), (1, 2, 3))))


@pytest.mark.parametrize("seed", range(6))
def test_canonical_form_vs_networkx(seed):
    rng = random.Random(seed)
    d = parse_type(rng.choice(["A6", "B6", "C5", "D6", "E6", "F4"]))
    words = [random_toric_word(d, rng, min_len=1) for _ in range(25)]
    graphs = [digraph_of_word(w) for w in words]
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            G, H = graphs[i], graphs[j]
            if G.vertices and len(G.vertices) == len(H.vertices):
                assert (canonical_form(G) == canonical_form(H)) == nx_iso(G, H)


def test_canonical_invariant_under_relabel():
    rng = random.Random(1)
    d = parse_type("E7")
    for _ in range(30):
        G = digraph_of_word(random_toric_word(d, rng, min_len=1))
        vs = sorted(G.vertices)
        perm = vs[:]
        rng.shuffle(perm)
        H = G.relabel(dict(zip(vs, perm)))
        assert canonical_form(G) == canonical_form(H)
        f = find_isomorphism(G, H)
        assert f is not None
        assert {(f[a], f[b], lab) for a, b, lab in G.edges} == set(H.edges)


def test_label_matters():
    G = LabeledDigraph.build([1, 2], [(2, 1, 1)])
    H = LabeledDigraph.build([1, 2], [(2, 1, 2)])
    assert not are_isomorphic(G, H)
    assert find_isomorphism(G, H) is None


def test_dot_and_json():
    G = digraph_of_word(parse_word(parse_type("A3"), "2,1"))
    assert '"1" -> "2" [label=1];' in G.to_dot()
    assert G.to_json() == {"vertices": [1, 2], "edges": [[1, 2, 1]]}
