"""Distinct-letter words in the simple reflections and Dynkin orientations."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError
from .root_data import CartanDatum, DiagramAutomorphism, parse_type


def _check_letters(datum: CartanDatum, letters: Sequence[int]) -> tuple[int, ...]:
    out = []
    for a in letters:
        if isinstance(a, bool) or not isinstance(a, int):
            raise PreconditionError(f"letter {a!r} is not an integer")
        if not 1 <= a <= datum.rank:
            raise PreconditionError(f"letter {a} out of range for {datum.name}")
        out.append(a)
    return tuple(out)


def is_toric(datum: CartanDatum, letters: Sequence[int]) -> bool:
    """True iff the letters are pairwise distinct."""
    letters = _check_letters(datum, letters)
    return len(set(letters)) == len(letters)


@dataclass(frozen=True)
class ToricWord:
    datum: CartanDatum
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = _check_letters(self.datum, self.letters)
        if len(set(letters)) != len(letters):
            raise PreconditionError(f"word {letters} repeats a letter; not toric")
        object.__setattr__(self, "letters", letters)

    @property
    def m(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def position(self) -> dict[int, int]:
        """Letter -> 0-based position."""
        return {a: k for k, a in enumerate(self.letters)}

    def __str__(self) -> str:
        return ",".join(map(str, self.letters))


def make_word(datum, letters: Iterable[int]) -> ToricWord:
    return ToricWord(parse_type(datum), tuple(letters))


def parse_word(datum, text: str) -> ToricWord:
    """Parse ``"3,1,4,5,2"``; an empty string is the empty word."""
    text = text.strip()
    if not text:
        return make_word(datum, ())
    try:
        letters = [int(t) for t in text.split(",")]
    except ValueError:
        raise PreconditionError(f"cannot parse word {text!r}; expected e.g. 3,1,4") from None
    return make_word(datum, letters)


def commutation_equal(w1: ToricWord, w2: ToricWord) -> bool:
    if w1.datum != w2.datum:
        raise PreconditionError("words over different Cartan data")
    if set(w1.letters) != set(w2.letters):
        return False
    p1, p2 = w1.position(), w2.position()
    for bond in w1.datum.bonds:
        u, v = tuple(bond)
        if u in p1 and v in p1 and (p1[u] < p1[v]) != (p2[u] < p2[v]):
            return False
    return True


def apply_automorphism(theta: DiagramAutomorphism, w: ToricWord) -> ToricWord:
    d = w.datum
    r = d.rank
    if len(theta.perm) != r or sorted(theta.perm) != list(range(1, r + 1)):
        raise PreconditionError("not a permutation of the vertex set")
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if d.c(theta(i), theta(j)) != d.c(i, j):
                raise PreconditionError(f"{theta.perm} is not a diagram automorphism of {d.name}")
    return ToricWord(d, tuple(theta(a) for a in w.letters))


@dataclass(frozen=True)
class Orientation:
    """One direction ``(u, v)`` meaning ``u -> v`` for every bond of the datum."""

    datum: CartanDatum
    arcs: frozenset

    def __post_init__(self):
        seen = set()
        for u, v in self.arcs:
            b = frozenset((u, v))
            if b not in self.datum.bonds:
                raise PreconditionError(f"({u},{v}) is not a bond of {self.datum.name}")
            if b in seen:
                raise PreconditionError(f"bond {{{u},{v}}} oriented twice")
            seen.add(b)
        if len(seen) != len(self.datum.bonds):
            raise PreconditionError("orientation must direct every bond exactly once")

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)


def orientations(datum: CartanDatum) -> Iterator[Orientation]:
    """All ``2**(r-1)`` orientations; bit k of the counter flips the k-th sorted bond."""
    bonds = datum.sorted_bonds()
    for mask in range(1 << len(bonds)):
        arcs = frozenset((v, u) if (mask >> k) & 1 else (u, v) for k, (u, v) in enumerate(bonds))
        yield Orientation(datum, arcs)


def word_from_orientation(o: Orientation) -> ToricWord:
    """Coxeter word in which the head of every arc precedes its tail."""
    r = o.datum.rank
    before: dict[int, list[int]] = {i: [] for i in range(1, r + 1)}
    need = {i: 0 for i in range(1, r + 1)}
    for u, v in o.arcs:
        before[v].append(u)
        need[u] += 1
    heap = [i for i in range(1, r + 1) if need[i] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        v = heapq.heappop(heap)
        out.append(v)
        for u in before[v]:
            need[u] -= 1
            if need[u] == 0:
                heapq.heappush(heap, u)
    return ToricWord(o.datum, tuple(out))


def orientation_of_word(w: ToricWord) -> Orientation:
    """Inverse of :func:`word_from_orientation` on Coxeter words."""
    if w.m != w.datum.rank:
        raise PreconditionError("only Coxeter words determine a full orientation")
    pos = w.position()
    arcs = set()
    for bond in w.datum.bonds:
        u, v = sorted(bond)
        arcs.add((u, v) if pos[u] > pos[v] else (v, u))
    return Orientation(w.datum, frozenset(arcs))


def coxeter_words(datum: CartanDatum, per_class: bool = False) -> Iterator[ToricWord]:
    """All ``r!`` Coxeter words, or one per commutation class when ``per_class``."""
    if per_class:
        for o in orientations(datum):
            yield word_from_orientation(o)
        return
    for p in itertools.permutations(range(1, datum.rank + 1)):
        yield ToricWord(datum, p)


def toric_words(datum: CartanDatum, include_empty: bool = False) -> Iterator[ToricWord]:
    """Every distinct-letter word, by length then lexicographically."""
    r = datum.rank
    for m in range(0 if include_empty else 1, r + 1):
        for p in itertools.permutations(range(1, r + 1), m):
            yield ToricWord(datum, p)


def random_toric_word(datum: CartanDatum, rng, min_len: int = 0) -> ToricWord:
    m = rng.randint(min_len, datum.rank)
    letters = rng.sample(range(1, datum.rank + 1), m)
    return ToricWord(datum, tuple(letters))
