"""Cartan data of the finite simple types, numbered as in Humphreys.

Vertices are 1-based throughout the package.  ``cartan(i, j)`` follows the
convention that a double/triple bond drawn with an arrow ``i => j`` has
``c[i][j] = -2`` (or ``-3``) and ``c[j][i] = -1``; the arrow points to the
shorter root.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import PreconditionError

FAMILIES = "ABCDEFG"

_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def _check_rank(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 3,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(family)
    if ok is None:
        raise PreconditionError(f"unknown Lie family {family!r}")
    if not ok:
        raise PreconditionError(f"invalid rank {rank} for type {family}")


def _simple_bonds(family: str, r: int) -> list[tuple[int, int]]:
    if family in "ABCFG":
        return [(i, i + 1) for i in range(1, r)]
    if family == "D":
        return [(i, i + 1) for i in range(1, r - 2)] + [(r - 2, r - 1), (r - 2, r)]
    # type E: 1-3-4-5-...-r with 2 hanging off 4
    return [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, r)]


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Return the Cartan matrix of ``family``/``rank`` as a tuple of rows.

    >>> cartan_matrix("C", 3)
    ((2, -1, 0), (-1, 2, -1), (0, -2, 2))
    """
    family = family.upper()
    _check_rank(family, rank)
    c = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        c[i][i] = 2
    for u, v in _simple_bonds(family, rank):
        c[u - 1][v - 1] = c[v - 1][u - 1] = -1
    r = rank
    if family == "B":
        c[r - 2][r - 1] = -2
    elif family == "C":
        c[r - 1][r - 2] = -2
    elif family == "F":
        c[1][2] = -2
    elif family == "G":
        c[1][0] = -3
    return tuple(tuple(row) for row in c)


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A permutation of the vertices preserving every Cartan integer.

    ``perm[i - 1]`` is the image of vertex ``i``.
    """

    perm: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    @property
    def is_identity(self) -> bool:
        return all(p == i + 1 for i, p in enumerate(self.perm))

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        """``self o other``."""
        return DiagramAutomorphism(tuple(self(other(i)) for i in range(1, len(self.perm) + 1)))


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...] = field(repr=False)
    bonds: frozenset = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name

    def c(self, i: int, j: int) -> int:
        """Cartan integer ``c_{i,j}`` (1-based)."""
        self._check_vertex(i)
        self._check_vertex(j)
        return self.cartan[i - 1][j - 1]

    def _check_vertex(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.rank):
            raise PreconditionError(f"vertex {i!r} out of range for {self.name}")

    def neighbors(self, i: int) -> list[int]:
        self._check_vertex(i)
        return [j for j in range(1, self.rank + 1) if j != i and self.cartan[i - 1][j - 1]]

    def sorted_bonds(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(b)) for b in self.bonds)

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"


@lru_cache(maxsize=None)
def cartan_datum(family: str, rank: int) -> CartanDatum:
    family = family.upper()
    c = cartan_matrix(family, rank)
    bonds = frozenset(frozenset(b) for b in _simple_bonds(family, rank))
    return CartanDatum(family, rank, c, bonds)


def parse_type(text: str) -> CartanDatum:
    """Parse ``"B5"``, ``"e7"`` or ``"D_4"`` into a :class:`CartanDatum`."""
    if isinstance(text, CartanDatum):
        return text
    m = _TYPE_RE.match(str(text))
    if not m:
        raise PreconditionError(f"cannot parse Lie type {text!r}; expected e.g. 'B5'")
    return cartan_datum(m.group(1).upper(), int(m.group(2)))


def bond_label(datum: CartanDatum, u: int, v: int) -> int:
    """Label of a directed edge ``u -> v``: ``-c_{u,v}`` when bonded, else 0."""
    if u == v:
        datum._check_vertex(u)
        return 0
    return -datum.c(u, v)


def diagram_automorphisms(datum: CartanDatum) -> list[DiagramAutomorphism]:
    """All diagram automorphisms, identity first, then lexicographic."""
    r = datum.rank
    c = datum.cartan
    found: list[tuple[int, ...]] = []
    image = [0] * r
    used = [False] * r

    def extend(i: int) -> None:
        if i == r:
            found.append(tuple(x + 1 for x in image))
            return
        for t in range(r):
            if used[t]:
                continue
            if any(c[i][j] != c[t][image[j]] or c[j][i] != c[image[j]][t] for j in range(i)):
                continue
            image[i] = t
            used[t] = True
            extend(i + 1)
            used[t] = False

    extend(0)
    found.sort()
    return [DiagramAutomorphism(p) for p in found]


def symmetrizer(datum: CartanDatum) -> list:
    """Positive rationals ``d`` with ``d_i c_ij = d_j c_ji``, found along the bond tree."""
    from fractions import Fraction

    r = datum.rank
    d: list = [None] * r
    d[0] = Fraction(1)
    stack = [1]
    while stack:
        i = stack.pop()
        for j in datum.neighbors(i):
            if d[j - 1] is None:
                d[j - 1] = d[i - 1] * datum.c(i, j) / datum.c(j, i)
                stack.append(j)
    return d
