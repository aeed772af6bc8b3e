import itertools

import pytest

from toric_schubert import PreconditionError, cartan_matrix, diagram_automorphisms, parse_type
from toric_schubert.root_data import DiagramAutomorphism, bond_label, symmetrizer

ALL_TYPES = ([f"A{r}" for r in range(1, 9)] + [f"B{r}" for r in range(2, 9)] + [f"C{r}" for r in range(3, 9)]
             + [f"D{r}" for r in range(4, 9)] + ["E6", "E7", "E8", "F4", "G2"])


@pytest.mark.parametrize("t", ALL_TYPES)
def test_cartan_shape(t):
    d = parse_type(t)
    C = d.cartan
    for i in range(d.rank):
        assert C[i][i] == 2
        for j in range(d.rank):
            if i != j:
                assert C[i][j] <= 0
                assert (C[i][j] == 0) == (C[j][i] == 0)
    # a tree: rank - 1 bonds
    assert len(d.bonds) == d.rank - 1


@pytest.mark.parametrize("t", ALL_TYPES)
def test_symmetrizable(t):
    d = parse_type(t)
    D = symmetrizer(d)
    for i, j in itertools.product(range(d.rank), repeat=2):
        assert D[i] * d.cartan[i][j] == D[j] * d.cartan[j][i]


def test_nonsimply_laced_entries():
    assert cartan_matrix("B", 3)[1][2] == -2
    assert cartan_matrix("B", 3)[2][1] == -1
    assert cartan_matrix("C", 3)[2][1] == -2
    assert cartan_matrix("F", 4)[1][2] == -2
    assert cartan_matrix("G", 2)[1][0] == -3
    assert cartan_matrix("G", 2)[0][1] == -1


def test_e_branch():
    d = parse_type("E6")
    assert d.neighbors(4) == [2, 3, 5]
    assert d.neighbors(2) == [4]


def test_bond_label():
    d = parse_type("G2")
    assert bond_label(d, 2, 1) == 3
    assert bond_label(d, 1, 2) == 1


@pytest.mark.parametrize("t,order", [("A1", 1), ("A2", 2), ("A5", 2), ("B4", 1), ("C5", 1), ("D4", 6),
                                     ("D5", 2), ("D8", 2), ("E6", 2), ("E7", 1), ("E8", 1), ("F4", 1),
                                     ("G2", 1)])
def test_automorphism_orders(t, order):
    d = parse_type(t)
    auts = diagram_automorphisms(d)
    assert len(auts) == order
    for a in auts:
        for i, j in itertools.product(range(1, d.rank + 1), repeat=2):
            assert d.c(a(i), a(j)) == d.c(i, j)


def test_automorphisms_brute_force():
    # oracle: all permutations that preserve the Cartan matrix
    for t in ["A4", "D4", "D5", "E6", "F4"]:
        d = parse_type(t)
        r = d.rank
        brute = {p for p in itertools.permutations(range(1, r + 1))
                 if all(d.c(p[i] , p[j]) == d.c(i + 1, j + 1) for i in range(r) for j in range(r))}
        assert {tuple(a.perm) for a in diagram_automorphisms(d)} == brute


def test_compose_identity():
    a = DiagramAutomorphism((3, 2, 1))
    assert a.compose(a).is_identity


@pytest.mark.parametrize("bad", ["H3", "A0", "C2", "D3", "E9", "F5", "G3", "B1", "", "A-2", "5A"])
def test_bad_types(bad):
    with pytest.raises(PreconditionError):
        parse_type(bad)


def test_parse_forms():
    assert parse_type("d_4").name == parse_type("D4").name == "D4"
