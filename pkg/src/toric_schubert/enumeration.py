"""Isomorphism classes of toric Schubert varieties from Coxeter elements (and beyond)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .digraph import (LabeledDigraph, canonical_form, digraph_of_orientation, digraph_of_word,
                      is_fano, is_weak_fano)
from .errors import PreconditionError
from .root_data import CartanDatum, DiagramAutomorphism, diagram_automorphisms, parse_type
from .weyl_words import Orientation, ToricWord, orientations, word_from_orientation


@dataclass
class IsoClass:
    form: bytes
    digraph: LabeledDigraph
    word: ToricWord
    is_fano: bool
    is_weak_fano: bool
    orbit_size: int = 0


@dataclass
class ClassificationReport:
    datum: CartanDatum
    classes: list = field(default_factory=list)

    @property
    def totals(self) -> tuple[int, int, int]:
        return (len(self.classes), sum(c.is_weak_fano for c in self.classes),
                sum(c.is_fano for c in self.classes))

    def to_json(self) -> dict:
        return {
            "type": self.datum.name,
            "totals": dict(zip(("classes", "weak_fano", "fano"), self.totals)),
            "classes": [
                {"word": list(c.word.letters), "edges": [list(e) for e in c.digraph.sorted_edges()],
                 "fano": c.is_fano, "weak_fano": c.is_weak_fano, "orbit_size": c.orbit_size}
                for c in self.classes
            ],
        }


def _group(datum: CartanDatum, items) -> ClassificationReport:
    classes: dict[bytes, IsoClass] = {}
    for G, w in items:
        f = canonical_form(G)
        if f not in classes:
            classes[f] = IsoClass(f, G, w, is_fano(G), is_weak_fano(G))
        classes[f].orbit_size += 1
    rep = ClassificationReport(datum)
    rep.classes = [classes[f] for f in sorted(classes)]
    return rep


def classify_coxeter(datum) -> ClassificationReport:
    datum = parse_type(datum)
    return _group(datum, ((digraph_of_orientation(o), word_from_orientation(o)) for o in orientations(datum)))


def classify_all_toric(datum, max_rank: int = 8) -> ClassificationReport:
    """Every nonempty distinct-letter word, via letter subsets and orientations of the induced forest."""
    datum = parse_type(datum)
    if datum.rank > max_rank:
        raise PreconditionError(f"rank {datum.rank} exceeds the enumeration bound {max_rank}")
    r = datum.rank

    def items():
        for size in range(1, r + 1):
            for subset in itertools.combinations(range(1, r + 1), size):
                S = set(subset)
                bonds = [tuple(sorted(b)) for b in datum.bonds if b <= S]
                bonds.sort()
                for mask in range(1 << len(bonds)):
                    arcs = [(v, u) if (mask >> k) & 1 else (u, v) for k, (u, v) in enumerate(bonds)]
                    G = LabeledDigraph.build(subset, ((u, v, -datum.c(u, v)) for u, v in arcs))
                    yield G, _word_of_subgraph(datum, subset, arcs)

    return _group(datum, items())


def _word_of_subgraph(datum: CartanDatum, subset, arcs) -> ToricWord:
    """Heads before tails, smallest letter first."""
    need = {v: 0 for v in subset}
    before: dict = {v: [] for v in subset}
    for u, v in arcs:
        need[u] += 1
        before[v].append(u)
    ready = sorted(v for v in subset if need[v] == 0)
    out = []
    while ready:
        v = ready.pop(0)
        out.append(v)
        for u in before[v]:
            need[u] -= 1
            if need[u] == 0:
                ready.append(u)
                ready.sort()
    w = ToricWord(datum, tuple(out))
    assert digraph_of_word(w).edges == frozenset((u, v, -datum.c(u, v)) for u, v in arcs)
    return w


def table3_closed_form(family: str, rank: int | None = None) -> tuple[int, int, int]:
    """(classes, weak Fano, Fano) counts for Coxeter elements, from the closed formulas."""
    if rank is None:
        d = parse_type(family)
        family, rank = d.family, d.rank
    family = family.upper()
    r = rank
    odd = r % 2 == 1
    if family == "A":
        if r < 2:
            raise PreconditionError("the type A row starts at rank 2")
        if odd:
            n = 2 ** (r - 2) + 2 ** ((r - 3) // 2)
            return n, n, (r + 1) // 2
        return 2 ** (r - 2), 2 ** (r - 2), r // 2
    if family == "B":
        if r < 2:
            raise PreconditionError("the type B row starts at rank 2")
        if r in (2, 3):
            return 2 ** (r - 1), 2 ** (r - 1), 1
        n = 7 * 2 ** (r - 4) + (2 ** ((r - 5) // 2) if odd else 0)
        return n, n, 1
    if family == "C":
        if r < 3:
            raise PreconditionError("the type C row starts at rank 3")
        if r == 3:
            return 4, 3, 2
        extra = 2 ** ((r - 5) // 2) if odd else 0
        return 7 * 2 ** (r - 4) + extra, 5 * 2 ** (r - 4) + extra, (r + 1) // 2 if odd else r // 2
    if family == "D":
        if r < 4:
            raise PreconditionError("the type D row starts at rank 4")
        if r == 4:
            return 4, 3, 2
        return 3 * 2 ** (r - 3), 5 * 2 ** (r - 4), r - 1
    fixed = {("E", 6): (20, 17, 4), ("E", 7): (64, 56, 7), ("E", 8): (128, 112, 8),
             ("F", 4): (8, 6, 2), ("G", 2): (2, 1, 1)}
    if (family, r) in fixed:
        return fixed[(family, r)]
    raise PreconditionError(f"no closed form for {family}{r}")


def orientation_orbits(datum) -> list[frozenset]:
    """Orbits of orientations under the diagram automorphism group."""
    datum = parse_type(datum)
    auts: list[DiagramAutomorphism] = diagram_automorphisms(datum)
    seen: set = set()
    out = []
    for o in orientations(datum):
        if o.arcs in seen:
            continue
        orbit = frozenset(frozenset((t(u), t(v)) for u, v in o.arcs) for t in auts)
        seen |= orbit
        out.append(orbit)
    return out


def apply_to_orientation(theta: DiagramAutomorphism, o: Orientation) -> Orientation:
    return Orientation(o.datum, frozenset((theta(u), theta(v)) for u, v in o.arcs))


CLOSED_FORM_TYPES = ([f"A{r}" for r in range(2, 9)] + [f"B{r}" for r in range(2, 9)]
                + [f"C{r}" for r in range(3, 9)] + [f"D{r}" for r in range(4, 9)]
                + ["E6", "E7", "E8", "F4", "G2"])


def automorphism_consistency(datum) -> tuple[bool, int, int]:
    """Do digraph isomorphism classes of orientations coincide with automorphism orbits?

    Returns (holds, number of orbits, number of classes).
    """
    datum = parse_type(datum)
    forms: dict = {}
    for o in orientations(datum):
        forms[o.arcs] = canonical_form(digraph_of_orientation(o))
    orbits = orientation_orbits(datum)
    holds = all(len({forms[a] for a in orb}) == 1 for orb in orbits)
    n_classes = len(set(forms.values()))
    return holds and n_classes == len(orbits), len(orbits), n_classes
