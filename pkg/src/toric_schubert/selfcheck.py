"""Built-in oracle comparisons and fixtures, run by ``toric-schubert selfcheck``."""

from __future__ import annotations

import random

from .bott_fan import (all_choices, bott_fan, degrees, degrees_by_cone_search, hirzebruch_index,
                       is_complete_sample_check, is_fano_batyrev, is_unimodular, is_weak_fano_batyrev,
                       maximal_cone_matrix, primitive_relation, primitive_relation_by_cone_search,
                       reduced_char_matrix)
from .cohomology import (betti_numbers, brute_force_eigenspace, eigen_data, mod2_structure, presentation,
                         square_zero_closed_form, square_zero_primitives)
from .digraph import are_isomorphic, digraph_of_word, is_fano, is_weak_fano
from .enumeration import CLOSED_FORM_TYPES, classify_coxeter, table3_closed_form
from .errors import PreconditionError
from .recovery import obfuscate, random_unimodular, recover
from .root_data import cartan_datum, parse_type
from .weyl_words import coxeter_words, parse_word, random_toric_word, toric_words


def check_closed_forms():
    bad = [t for t in CLOSED_FORM_TYPES if classify_coxeter(t).totals != table3_closed_form(t)]
    return not bad, ", ".join(bad)


def check_fano_criteria(quick=False):
    types = ["A4", "B3", "C3", "G2"] if quick else ["A5", "B5", "C5", "D5", "F4", "G2"]
    n = bad = 0
    for t in types:
        for w in toric_words(parse_type(t)):
            G, f = digraph_of_word(w), bott_fan(w)
            n += 1
            bad += (is_fano(G) != is_fano_batyrev(f)) + (is_weak_fano(G) != is_weak_fano_batyrev(f))
    return bad == 0, f"{n} words, {bad} mismatches"


def check_fans(seed=0, quick=False):
    rng = random.Random(seed)
    fams = [("A", 5), ("B", 4), ("C", 4), ("D", 5), ("E", 6), ("F", 4), ("G", 2)]
    n = 10 if quick else 40
    for i in range(n):
        d = cartan_datum(*fams[i % len(fams)])
        w = random_toric_word(d, rng, min_len=1)
        f = bott_fan(w)
        if not all(is_unimodular(maximal_cone_matrix(f, c)) for c in all_choices(f.m)):
            return False, f"non-unimodular cone for {d.name} {w}"
        if any({("v", j): a for j, a in primitive_relation(f, k).items()} != primitive_relation_by_cone_search(f, k)
               for k in range(1, f.m + 1)):
            return False, f"relation mismatch for {d.name} {w}"
        if degrees(f) != degrees_by_cone_search(f):
            return False, f"degree mismatch for {d.name} {w}"
        if not is_complete_sample_check(f, n_samples=100 if quick else 300, seed=seed + i):
            return False, f"completeness failed for {d.name} {w}"
    return True, f"{n} fans"


def check_fixtures():
    w = parse_word(parse_type("A5"), "3,1,4,5,2")
    M = [[-1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [1, 0, -1, 0, 0], [0, 0, 1, -1, 0], [1, 1, 0, 0, -1]]
    if [list(r) for r in reduced_char_matrix(w)] != M:
        return False, "A5 characteristic matrix"
    B2 = parse_type("B2")
    if [list(r) for r in reduced_char_matrix(parse_word(B2, "1,2"))] != [[-1, 0], [1, -1]]:
        return False, "B2 s1s2 matrix"
    if [list(r) for r in reduced_char_matrix(parse_word(B2, "2,1"))] != [[-1, 0], [2, -1]]:
        return False, "B2 s2s1 matrix"
    ring = presentation(w)
    rel = ["x3^2 = 0", "x1^2 = 0", "x4^2 = x4*(x3)", "x5^2 = x5*(x4)", "x2^2 = x2*(x3+x1)"]
    if ring.relation_strings() != rel:
        return False, "A5 relations"
    if betti_numbers(ring) != [1, 5, 10, 10, 5, 1]:
        return False, "A5 Betti numbers"
    hz = {("G2", "1,2"): 3, ("G2", "2,1"): 1, ("C3", "1,3"): 0, ("C3", "2,3"): 2, ("B3", "3,2"): 2,
          ("F4", "3,2"): 2}
    for (t, s), a in hz.items():
        if hirzebruch_index(parse_word(parse_type(t), s)) != a:
            return False, f"Hirzebruch index of {t} {s}"
    return True, ""


def check_eigen(quick=False):
    for t in (["A4", "D4"] if quick else ["A5", "D5", "E6"]):
        for w in coxeter_words(parse_type(t), per_class=True):
            s = mod2_structure(presentation(w))
            for e in eigen_data(s):
                if set(e.space) != brute_force_eigenspace(s, e.alpha):
                    return False, f"{t} {w}"
    return True, ""


def check_square_zero(quick=False):
    n = 0
    for t in (["A4"] if quick else ["A5", "D5"]):
        for w in toric_words(parse_type(t)):
            ring = presentation(w)
            closed = sorted(square_zero_closed_form(ring))
            if sorted(square_zero_primitives(ring, 3, method="box")) != closed:
                return False, f"box search vs closed form on {t} {w}"
            if sorted(square_zero_primitives(ring, 3, method="lift")) != closed:
                return False, f"lifting vs closed form on {t} {w}"
            n += 1
    return True, f"{n} words"


def check_recovery(seed=0, quick=False):
    n = 0
    for t in (["A5", "D5"] if quick else ["A5", "A6", "D5", "D6", "E6"]):
        for w in coxeter_words(parse_type(t), per_class=True):
            if not are_isomorphic(recover(presentation(w)).digraph, digraph_of_word(w)):
                return False, f"trusted {t} {w}"
            n += 1
    rng = random.Random(seed)
    for t in ["A5", "D5", "E6"]:
        words = list(coxeter_words(parse_type(t), per_class=True))
        for _ in range(2 if quick else 5):
            w = rng.choice(words)
            inp = obfuscate(presentation(w), random_unimodular(len(w.letters), rng))
            if not are_isomorphic(recover(inp).digraph, digraph_of_word(w)):
                return False, f"obfuscated {t} {w}"
            n += 1
    return True, f"{n} recoveries"


def check_refusal():
    try:
        recover(presentation(parse_word(parse_type("B2"), "2,1")))
    except PreconditionError:
        return True, ""
    return False, "label-2 ring was not refused"


def run_all(seed: int = 0, quick: bool = False) -> list[tuple[str, bool, str]]:
    checks = [
        ("closed-form class counts", check_closed_forms),
        ("Fano criteria agree", lambda: check_fano_criteria(quick)),
        ("fans smooth, complete, relations", lambda: check_fans(seed, quick)),
        ("fixtures", check_fixtures),
        ("eigenspaces vs brute force", lambda: check_eigen(quick)),
        ("square-zero search vs closed form", lambda: check_square_zero(quick)),
        ("recovery round trips", lambda: check_recovery(seed, quick)),
        ("label-2 refusal", check_refusal),
    ]
    out = []
    for name, fn in checks:
        ok, detail = fn()
        out.append((name, bool(ok), detail))
    return out
