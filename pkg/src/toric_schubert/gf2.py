"""Linear algebra over GF(2) with vectors packed into Python ints.

Bit ``i`` of a vector is coordinate ``i``.  Echelon bases keep each row's
pivot at its highest set bit and are fully reduced, so two subspaces are
equal exactly when their bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def bits(vec: Sequence[int]) -> int:
    """Pack a coordinate sequence (reduced mod 2) into an int."""
    out = 0
    for i, c in enumerate(vec):
        if c & 1:
            out |= 1 << i
    return out


def unbits(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


def popcount(v: int) -> int:
    return bin(v).count("1")


def rref(rows: Iterable[int]) -> list[int]:
    """Reduced echelon basis of the span of ``rows``, sorted by decreasing pivot."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            if v ^ b < v:
                v ^= b
        if v:
            top = v.bit_length() - 1
            basis = [b ^ v if (b >> top) & 1 else b for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def reduce(v: int, basis: Sequence[int]) -> int:
    """Remainder of ``v`` modulo an echelon basis produced by :func:`rref`."""
    for b in basis:
        if v ^ b < v:
            v ^= b
    return v


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows))


def kernel(columns: Sequence[int], n_cols: int | None = None) -> list[int]:
    """Basis of ``{y : sum_i y_i columns[i] = 0}`` as packed vectors over the column index.

    ``columns[i]`` is the image of the i-th unit vector.
    """
    n = len(columns) if n_cols is None else n_cols
    # augment each column with a tag bit recording which unit vector it came from
    width = max((c.bit_length() for c in columns), default=0)
    pivots: dict[int, int] = {}
    out: list[int] = []
    for i in range(n):
        v = (columns[i] if i < len(columns) else 0) | (1 << (width + i))
        low = v & ((1 << width) - 1)
        while low:
            top = low.bit_length() - 1
            if top not in pivots:
                break
            v ^= pivots[top]
            low = v & ((1 << width) - 1)
        if low:
            pivots[low.bit_length() - 1] = v
        else:
            out.append(v >> width)
    return rref(out)


def solve(columns: Sequence[int], target: int, n_cols: int | None = None) -> int | None:
    """One ``y`` with ``sum_i y_i columns[i] = target``, or None."""
    n = len(columns) if n_cols is None else n_cols
    width = max([c.bit_length() for c in columns] + [target.bit_length()])
    pivots: dict[int, int] = {}
    for i in range(n):
        v = columns[i] | (1 << (width + i))
        low = v & ((1 << width) - 1)
        while low:
            top = low.bit_length() - 1
            if top not in pivots:
                break
            v ^= pivots[top]
            low = v & ((1 << width) - 1)
        if low:
            pivots[low.bit_length() - 1] = v
    t = target
    y = 0
    while t:
        top = t.bit_length() - 1
        if top not in pivots:
            return None
        row = pivots[top]
        t ^= row & ((1 << width) - 1)
        y ^= row >> width
    return y


@dataclass(frozen=True)
class Subspace2:
    """A subspace of GF(2)^n stored by its reduced echelon basis."""

    n: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, n: int, vectors: Iterable[int]) -> "Subspace2":
        return cls(n, tuple(rref(vectors)))

    @classmethod
    def zero(cls, n: int) -> "Subspace2":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: int) -> bool:
        return reduce(v, self.basis) == 0

    def __iter__(self) -> Iterator[int]:
        """All ``2**dim`` elements, zero first."""
        elems = [0]
        for b in self.basis:
            elems += [e ^ b for e in elems]
        return iter(sorted(elems))

    def __le__(self, other: "Subspace2") -> bool:
        return all(b in other for b in self.basis)

    def __add__(self, other: "Subspace2") -> "Subspace2":
        return Subspace2.span(self.n, self.basis + other.basis)

    def intersection(self, other: "Subspace2") -> "Subspace2":
        a, b = self.basis, other.basis
        ker = kernel(list(a) + list(b))
        vecs = []
        for y in ker:
            v = 0
            for i, u in enumerate(a):
                if (y >> i) & 1:
                    v ^= u
            vecs.append(v)
        return Subspace2.span(self.n, vecs)

    __and__ = intersection

    def quotient_dim(self, sub: "Subspace2") -> int:
        return self.dim - (self & sub).dim

    def coordinates(self) -> list[list[int]]:
        return [unbits(b, self.n) for b in self.basis]
