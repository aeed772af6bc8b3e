import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toric_schubert import PreconditionError, commutation_equal, is_toric, make_word, parse_type, parse_word
from toric_schubert.root_data import diagram_automorphisms
from toric_schubert.weyl_words import (apply_automorphism, coxeter_words, orientation_of_word, orientations,
                                       random_toric_word, toric_words, word_from_orientation)


def test_parse_and_str():
    w = parse_word(parse_type("A5"), "3,1,4,5,2")
    assert w.letters == (3, 1, 4, 5, 2)
    assert str(w) == "3,1,4,5,2"
    assert w.position()[5] == 3
    assert parse_word(parse_type("A3"), "").m == 0


@pytest.mark.parametrize("text", ["1,1", "0,2", "7", "a,b", "1,,2"])
def test_bad_words(text):
    with pytest.raises(PreconditionError):
        parse_word(parse_type("A5"), text)


def test_is_toric():
    d = parse_type("D4")
    assert is_toric(d, (1, 2, 3, 4))
    assert not is_toric(d, (1, 2, 1))


def test_counts():
    d = parse_type("A4")
    assert len(list(orientations(d))) == 8
    assert len(list(coxeter_words(d))) == 24
    # sum over m of 4!/(4-m)!
    assert len(list(toric_words(d))) == 4 + 12 + 24 + 24


def test_commutation_classes_match_orientations():
    # oracle: closure of each word under swaps of adjacent commuting letters
    for t in ["A4", "D4", "B3", "G2"]:
        d = parse_type(t)
        seen = set()
        classes = 0
        for p in itertools.permutations(range(1, d.rank + 1)):
            if p in seen:
                continue
            classes += 1
            stack = [p]
            seen.add(p)
            while stack:
                q = stack.pop()
                for i in range(len(q) - 1):
                    if d.c(q[i], q[i + 1]) == 0:
                        s = q[:i] + (q[i + 1], q[i]) + q[i + 2:]
                        if s not in seen:
                            seen.add(s)
                            stack.append(s)
        assert classes == 2 ** (d.rank - 1)


@pytest.mark.parametrize("t", ["A5", "D5", "E6", "F4", "C4"])
def test_orientation_roundtrip(t):
    d = parse_type(t)
    for o in orientations(d):
        assert orientation_of_word(word_from_orientation(o)) == o
    for w in coxeter_words(d):
        assert commutation_equal(w, word_from_orientation(orientation_of_word(w)))


def test_commutation_equal():
    d = parse_type("A3")
    assert commutation_equal(make_word(d, (1, 3, 2)), make_word(d, (3, 1, 2)))
    assert not commutation_equal(make_word(d, (1, 2, 3)), make_word(d, (2, 1, 3)))


def test_apply_automorphism():
    d = parse_type("D4")
    theta = next(a for a in diagram_automorphisms(d) if tuple(a.perm) == (3, 2, 1, 4))
    assert apply_automorphism(theta, make_word(d, (2, 1, 3, 4))).letters == (2, 3, 1, 4)


@given(st.integers(0, 10**6))
def test_random_word_is_toric(seed):
    rng = random.Random(seed)
    d = parse_type(rng.choice(["A6", "B5", "D5", "E7", "F4", "G2"]))
    w = random_toric_word(d, rng, min_len=1)
    assert 1 <= w.m <= d.rank and len(set(w.letters)) == w.m
