import random

import numpy as np
import pytest

from toric_schubert import PreconditionError, make_word, parse_type, parse_word
from toric_schubert.bott_fan import (all_choices, bott_fan, cone_stack, degrees, degrees_by_cone_search,
                                     fan_iso_from_digraph_iso, hirzebruch_index, integer_det,
                                     is_complete_sample_check, is_fano_batyrev, is_unimodular,
                                     is_weak_fano_batyrev, maximal_cone_matrix, maps_cones_bijectively,
                                     primitive_collections, primitive_relation,
                                     primitive_relation_by_cone_search, reduced_char_matrix)
from toric_schubert.digraph import digraph_of_word, find_isomorphism, is_fano, is_weak_fano
from toric_schubert.weyl_words import random_toric_word, toric_words


def test_a5_matrix():
    w = parse_word(parse_type("A5"), "3,1,4,5,2")
    M = reduced_char_matrix(w)
    assert [list(r) for r in M] == [[-1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [1, 0, -1, 0, 0],
                                    [0, 0, 1, -1, 0], [1, 1, 0, 0, -1]]
    f = bott_fan(w)
    # v_3 + w_3 = v_4 + v_2 in the letters' names; positions 3 and 5
    assert primitive_relation(f, 1) == {3: 1, 5: 1}
    assert primitive_relation(f, 2) == {5: 1}
    assert primitive_relation(f, 4) == {} and primitive_relation(f, 5) == {}


def test_b2_matrices():
    d = parse_type("B2")
    assert [list(r) for r in reduced_char_matrix(make_word(d, (1, 2)))] == [[-1, 0], [1, -1]]
    assert [list(r) for r in reduced_char_matrix(make_word(d, (2, 1)))] == [[-1, 0], [2, -1]]
    assert primitive_relation(bott_fan(make_word(d, (2, 1))), 1) == {2: 2}


def test_primitive_collections():
    f = bott_fan(parse_word(parse_type("D4"), "2,1,3,4"))
    pcs = primitive_collections(f)
    assert [p.letter for p in pcs] == [2, 1, 3, 4]
    for p in pcs:
        assert np.array_equal(np.add(p.v, p.w), np.array(f.v_ray(p.k)) + np.array(f.w_ray(p.k)))


def test_integer_det():
    rng = np.random.default_rng(0)
    for _ in range(30):
        M = rng.integers(-4, 5, size=(5, 5))
        assert integer_det(M.tolist()) == round(np.linalg.det(M))


@pytest.mark.parametrize("t", ["A4", "B4", "C4", "D4", "F4", "G2"])
def test_all_cones_unimodular(t):
    for w in list(toric_words(parse_type(t)))[::7]:
        f = bott_fan(w)
        assert all(is_unimodular(maximal_cone_matrix(f, c)) for c in all_choices(f.m))


def test_relations_two_routes():
    rng = random.Random(3)
    for t in ["A6", "B5", "C5", "D6", "E6", "F4", "G2"]:
        d = parse_type(t)
        for _ in range(5):
            f = bott_fan(random_toric_word(d, rng, min_len=1))
            for k in range(1, f.m + 1):
                via_cones = primitive_relation_by_cone_search(f, k)
                assert via_cones == {("v", j): a for j, a in primitive_relation(f, k).items()}
            assert degrees(f) == degrees_by_cone_search(f)


def test_fano_criteria_agree_c3():
    w = make_word(parse_type("C3"), (1, 2, 3))
    f, G = bott_fan(w), digraph_of_word(w)
    assert not is_fano_batyrev(f) and is_weak_fano_batyrev(f)
    assert not is_fano(G) and is_weak_fano(G)


def test_completeness_check():
    f = bott_fan(parse_word(parse_type("D5"), "3,1,4,5,2"))
    assert is_complete_sample_check(f, n_samples=500, seed=1)


def test_completeness_detects_missing_cone():
    # negative control: drop one maximal cone and the check must fail
    f = bott_fan(parse_word(parse_type("A4"), "2,1,3,4"))
    choices = list(all_choices(f.m))[1:]
    assert not is_complete_sample_check(f, n_samples=2000, seed=0, cones=choices)


def test_cone_stack_shape():
    f = bott_fan(parse_word(parse_type("A3"), "1,2,3"))
    assert cone_stack(f).shape == (8, 3, 3)


def test_fan_isomorphism_from_digraph():
    d = parse_type("A5")
    w, w2 = make_word(d, (3, 1, 4, 5, 2)), make_word(d, (1, 3, 2, 4, 5))
    iso = find_isomorphism(digraph_of_word(w), digraph_of_word(w2))
    if iso is not None:
        P = fan_iso_from_digraph_iso(w, w2, iso)
        assert P is not None and maps_cones_bijectively(P, bott_fan(w), bott_fan(w2))
    # image of w under the diagram flip i -> 6 - i
    w3 = make_word(d, (3, 5, 2, 1, 4))
    iso = find_isomorphism(digraph_of_word(w), digraph_of_word(w3))
    assert iso is not None
    P = fan_iso_from_digraph_iso(w, w3, iso)
    assert maps_cones_bijectively(P, bott_fan(w), bott_fan(w3))
    w4 = make_word(d, (5, 4, 2, 1, 3))
    assert find_isomorphism(digraph_of_word(w), digraph_of_word(w4)) is None


@pytest.mark.parametrize("t,word,a", [("G2", "1,2", 3), ("G2", "2,1", 1), ("C3", "1,3", 0), ("C3", "2,3", 2),
                                      ("B3", "3,2", 2), ("F4", "3,2", 2), ("A2", "1,2", 1)])
def test_hirzebruch(t, word, a):
    assert hirzebruch_index(parse_word(parse_type(t), word)) == a


def test_hirzebruch_needs_two_letters():
    with pytest.raises(PreconditionError):
        hirzebruch_index(parse_word(parse_type("A3"), "1,2,3"))


def test_empty_word():
    f = bott_fan(parse_word(parse_type("A3"), ""))
    assert f.m == 0 and degrees(f) == []
