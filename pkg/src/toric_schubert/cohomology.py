"""Integral cohomology of toric Schubert varieties.

The ring is generated by degree-two classes ``x_j`` (one per letter, kept in word
order) subject to ``x_j^2 = x_j * alpha_j`` where ``alpha_j`` only involves
generators that occur earlier in the word.  Rewriting the latest square first
reaches a squarefree normal form.

Mod 2 the squaring map on H^2 is linear, so every ``E(alpha) = {x : x^2 = alpha x}``
is the kernel of a linear map; this is what makes the eigenspace data cheap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import gf2, kernels
from .digraph import LabeledDigraph
from .errors import BoundTooSmallError, ComputationError, PreconditionError
from .weyl_words import ToricWord


@dataclass(frozen=True)
class BottRing:
    generators: tuple  # vertex ids in word order
    alphas: tuple  # alphas[j][k]: coefficient of x_k in alpha_j (positions)
    source: str = ""

    def __post_init__(self):
        m = len(self.generators)
        if len(set(self.generators)) != m:
            raise PreconditionError("generator ids must be distinct")
        alphas = tuple(tuple(int(c) for c in row) for row in self.alphas)
        if len(alphas) != m or any(len(row) != m for row in alphas):
            raise PreconditionError("alphas must be an m x m table")
        for j, row in enumerate(alphas):
            if any(row[k] for k in range(j, m)):
                raise PreconditionError(f"alpha of position {j + 1} must use earlier generators only")
        object.__setattr__(self, "alphas", alphas)

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def max_label(self) -> int:
        return max((abs(c) for row in self.alphas for c in row), default=0)

    def index(self, gen) -> int:
        try:
            return self.generators.index(gen)
        except ValueError:
            raise PreconditionError(f"no generator {gen!r}") from None

    def x(self, gen) -> "RingElement":
        return RingElement(self, {frozenset([self.index(gen)]): 1})

    def one(self) -> "RingElement":
        return RingElement(self, {frozenset(): 1})

    def alpha(self, gen) -> list[int]:
        return list(self.alphas[self.index(gen)])

    def digraph(self) -> LabeledDigraph:
        """Edges ``gen_j -> gen_k`` for each nonzero coefficient of ``alpha_j``."""
        g = self.generators
        return LabeledDigraph.build(
            g, ((g[j], g[k], c) for j, row in enumerate(self.alphas) for k, c in enumerate(row) if c)
        )

    def relation_strings(self) -> list[str]:
        out = []
        for j, row in enumerate(self.alphas):
            x = f"x{self.generators[j]}"
            rhs = format_h2(row, self.generators)
            out.append(f"{x}^2 = 0" if rhs == "0" else f"{x}^2 = {x}*({rhs})")
        return out

    def to_json(self) -> dict:
        return {"m": self.m, "generators": list(self.generators), "alphas": [list(r) for r in self.alphas]}


def presentation(w: ToricWord) -> BottRing:
    L = w.letters
    m = len(L)
    alphas = [[0] * m for _ in range(m)]
    for j in range(m):
        for k in range(j):
            alphas[j][k] = -w.datum.c(L[j], L[k])
    return BottRing(tuple(L), tuple(map(tuple, alphas)), source=f"{w.datum.name} {w}")


def ring_from_digraph(G: LabeledDigraph) -> BottRing:
    """Ring of a labelled acyclic digraph, generators ordered heads-before-tails."""
    order: list = []
    out = {v: [b for b, _ in G.out_edges(v)] for v in G.vertices}
    placed: set = set()
    remaining = set(G.vertices)
    while remaining:
        ready = sorted(v for v in remaining if all(b in placed for b in out[v]))
        if not ready:
            raise PreconditionError("digraph has a directed cycle")
        v = ready[0]
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    m = len(order)
    alphas = [[0] * m for _ in range(m)]
    for a, b, lab in G.edges:
        alphas[pos[a]][pos[b]] = lab
    return BottRing(tuple(order), tuple(map(tuple, alphas)), source="digraph")


def format_h2(coeffs: Sequence[int], names: Sequence) -> str:
    parts = []
    for c, n in zip(coeffs, names):
        if not c:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{mag}x{n}"))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, t in parts[1:]:
        s += sign + t
    return s


def format_bits(v: int, names: Sequence) -> str:
    return format_h2(gf2.unbits(v, len(names)), names)


# normal form ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _reduce_monomial(ring: BottRing, mono: tuple) -> tuple:
    """Normal form of a sorted multiset of positions, as sorted ``(subset, coeff)`` pairs."""
    counts: dict[int, int] = {}
    for p in mono:
        counts[p] = counts.get(p, 0) + 1
    rep = [p for p, c in counts.items() if c >= 2]
    if not rep:
        return ((frozenset(mono), 1),)
    j = max(rep)
    rest = list(mono)
    rest.remove(j)
    acc: dict = {}
    for k, c in enumerate(ring.alphas[j]):
        if not c:
            continue
        for sub, d in _reduce_monomial(ring, tuple(sorted(rest + [k]))):
            acc[sub] = acc.get(sub, 0) + c * d
    return tuple(sorted(((s, c) for s, c in acc.items() if c), key=lambda t: sorted(t[0])))


class RingElement:
    """An element in squarefree normal form; ``terms`` maps position subsets to integers."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: BottRing, terms: Mapping):
        self.ring = ring
        self.terms = {frozenset(k): int(v) for k, v in terms.items() if v}

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return RingElement(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.ring, {k: v * other for k, v in self.terms.items()})
        return multiply(self, self._coerce(other))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.one() * other
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise PreconditionError("elements of different rings")
            return other
        if isinstance(other, int):
            return self.ring.one() * other
        raise TypeError(f"cannot combine ring element with {type(other).__name__}")

    def degree_part(self, k: int) -> "RingElement":
        return RingElement(self.ring, {s: c for s, c in self.terms.items() if len(s) == k})

    def __repr__(self):
        g = self.ring.generators
        if not self.terms:
            return "0"
        parts = []
        for s, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), sorted(t[0]))):
            mono = "*".join(f"x{g[p]}" for p in sorted(s)) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def normal_form(ring: BottRing, poly) -> RingElement:
    """Reduce ``{tuple_of_generator_ids: coeff}`` (or a RingElement) to normal form."""
    if isinstance(poly, RingElement):
        return poly
    acc: dict = {}
    for mono, c in poly.items():
        pos = tuple(sorted(ring.index(g) for g in mono))
        for s, d in _reduce_monomial(ring, pos):
            acc[s] = acc.get(s, 0) + c * d
    return RingElement(ring, acc)


def multiply(a: RingElement, b: RingElement) -> RingElement:
    ring = a.ring
    acc: dict = {}
    for s, c in a.terms.items():
        for t, d in b.terms.items():
            for u, e in _reduce_monomial(ring, tuple(sorted(list(s) + list(t)))):
                acc[u] = acc.get(u, 0) + c * d * e
    return RingElement(ring, acc)


def h2_element(ring: BottRing, coeffs: Sequence[int]) -> RingElement:
    return RingElement(ring, {frozenset([k]): c for k, c in enumerate(coeffs)})


def betti_numbers(ring: BottRing) -> list[int]:
    """Graded ranks of the span reached from 1 by multiplying with generators."""
    reached: set = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for s in frontier:
            for a in range(ring.m):
                for u, _ in _reduce_monomial(ring, tuple(sorted(list(s) + [a]))):
                    if u not in reached:
                        reached.add(u)
                        nxt.append(u)
        frontier = nxt
    counts = [0] * (ring.m + 1)
    for s in reached:
        counts[len(s)] += 1
    return counts


# structure constants -------------------------------------------------------


def h4_pairs(m: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(m), 2))


@dataclass(frozen=True)
class ProductTable:
    """Symmetric structure constants ``H^2 x H^2 -> H^4`` in some pair of bases."""

    r: int
    n4: int
    entries: tuple  # entries[a][b] is a length-n4 tuple of ints

    def __post_init__(self):
        e = tuple(tuple(tuple(int(c) for c in v) for v in row) for row in self.entries)
        if len(e) != self.r or any(len(row) != self.r for row in e):
            raise PreconditionError("table must be r x r")
        for a in range(self.r):
            for b in range(self.r):
                if len(e[a][b]) != self.n4:
                    raise PreconditionError("every entry must have h4_dim coordinates")
                if e[a][b] != e[b][a]:
                    raise PreconditionError("product table is not symmetric")
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_array(cls, arr) -> "ProductTable":
        arr = np.asarray(arr, dtype=np.int64)
        return cls(arr.shape[0], arr.shape[2] if arr.ndim == 3 else 0, tuple(map(tuple, arr.tolist())))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.r, self.r, self.n4)

    def product(self, y: Sequence[int], z: Sequence[int]) -> list[int]:
        out = [0] * self.n4
        for a, ya in enumerate(y):
            if not ya:
                continue
            for b, zb in enumerate(z):
                if zb:
                    e = self.entries[a][b]
                    for k in range(self.n4):
                        out[k] += ya * zb * e[k]
        return out

    def square(self, z: Sequence[int]) -> list[int]:
        return self.product(z, z)

    def mod2(self) -> "Mod2Structure":
        return Mod2Structure(self.r, self.n4, tuple(tuple(gf2.bits(v) for v in row) for row in self.entries))

    def to_json(self) -> dict:
        return {"r": self.r, "h4_dim": self.n4, "table": [[list(v) for v in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data: Mapping) -> "ProductTable":
        try:
            r = int(data["r"])
            n4 = int(data["h4_dim"])
            table = data["table"]
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed table JSON: {exc}") from None
        return cls(r, n4, tuple(tuple(tuple(v) for v in row) for row in table))


def product_table(ring: BottRing) -> ProductTable:
    m = ring.m
    pairs = h4_pairs(m)
    idx = {p: i for i, p in enumerate(pairs)}
    n4 = len(pairs)
    e = [[[0] * n4 for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(m):
            if a != b:
                e[a][b][idx[(min(a, b), max(a, b))]] = 1
        for k, c in enumerate(ring.alphas[a]):
            if c:
                e[a][a][idx[(k, a)]] += c
    return ProductTable(m, n4, tuple(tuple(map(tuple, row)) for row in e))


@dataclass(frozen=True)
class Mod2Structure:
    r: int
    n4: int
    table: tuple  # table[a][b]: packed GF(2) vector in H^4

    def square(self, x: int) -> int:
        out = 0
        for a in range(self.r):
            if (x >> a) & 1:
                out ^= self.table[a][a]
        return out

    def product(self, x: int, y: int) -> int:
        out = 0
        for a in range(self.r):
            if (x >> a) & 1:
                for b in range(self.r):
                    if (y >> b) & 1:
                        out ^= self.table[a][b]
        return out

    def eigen_columns(self, alpha: int) -> list[int]:
        """Images of the unit vectors under ``x -> x^2 + alpha x``."""
        cols = []
        for a in range(self.r):
            c = self.table[a][a]
            for b in range(self.r):
                if (alpha >> b) & 1:
                    c ^= self.table[b][a]
            cols.append(c)
        return cols

    def eigenspace(self, alpha: int) -> gf2.Subspace2:
        return gf2.Subspace2(self.r, tuple(gf2.kernel(self.eigen_columns(alpha), self.r)))

    def transform(self, P: Sequence[Sequence[int]]) -> "Mod2Structure":
        """Structure in new coordinates ``c' = P c`` (``P`` invertible mod 2)."""
        Pinv = _inverse_mod2(P)
        r = self.r
        new = [[0] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                v = 0
                for k in range(r):
                    if Pinv[k][i]:
                        for l in range(r):
                            if Pinv[l][j]:
                                v ^= self.table[k][l]
                new[i][j] = v
        return Mod2Structure(r, self.n4, tuple(map(tuple, new)))


def _inverse_mod2(P) -> list[list[int]]:
    r = len(P)
    A = [[P[i][j] & 1 for j in range(r)] + [1 if i == j else 0 for j in range(r)] for i in range(r)]
    for c in range(r):
        piv = next((i for i in range(c, r) if A[i][c]), None)
        if piv is None:
            raise PreconditionError("matrix is singular mod 2")
        A[c], A[piv] = A[piv], A[c]
        for i in range(r):
            if i != c and A[i][c]:
                A[i] = [x ^ y for x, y in zip(A[i], A[c])]
    return [row[r:] for row in A]


def mod2_structure(obj) -> Mod2Structure:
    if isinstance(obj, Mod2Structure):
        return obj
    if isinstance(obj, BottRing):
        obj = product_table(obj)
    if isinstance(obj, ProductTable):
        return obj.mod2()
    raise TypeError(f"cannot build a mod 2 structure from {type(obj).__name__}")


# eigen data ----------------------------------------------------------------


@dataclass(frozen=True)
class EigenRecord:
    alpha: int  # packed GF(2) vector
    space: gf2.Subspace2
    multiplicity: int


def eigen_data(obj, backend: str | None = None, check_total: bool = True) -> list[EigenRecord]:
    """Every eigenelement (zero first, then by packed value) with ``E(alpha)`` and its multiplicity."""
    s = mod2_structure(obj)
    r = s.r
    if r == 0:
        return []
    sq = [s.table[a][a] for a in range(r)]
    prod = [[s.table[b][a] for a in range(r)] for b in range(r)]
    dims = kernels.gf2_eigen_dims(sq, prod, r, backend=backend)
    out = []
    for alpha in range(1 << r):
        d = dims[alpha]
        mult = d if alpha == 0 else d - 1
        if mult >= 1:
            space = s.eigenspace(alpha)
            if space.dim != d:
                raise ComputationError("eigenspace dimension disagrees with kernel sweep")
            if alpha and alpha not in space:
                raise ComputationError("nonzero alpha missing from its own eigenspace")
            out.append(EigenRecord(alpha, space, mult))
    total = sum(e.multiplicity for e in out)
    if check_total and total != r:
        raise ComputationError(f"eigen multiplicities sum to {total}, expected {r}")
    return out


def brute_force_eigenspace(s: Mod2Structure, alpha: int) -> set[int]:
    """All ``x`` with ``x^2 = alpha x``, by enumeration (oracle for small ``r``)."""
    return {x for x in range(1 << s.r) if s.square(x) == s.product(alpha, x)}


# square-zero classes -------------------------------------------------------


def _require_simply_laced(obj) -> None:
    if isinstance(obj, BottRing) and obj.max_label > 1:
        raise PreconditionError(
            "square-zero and eigen recovery machinery needs every edge label equal to 1"
        )


def _normalize_sign(v: Sequence[int]) -> tuple:
    for c in v:
        if c:
            return tuple(v) if c > 0 else tuple(-x for x in v)
    return tuple(v)


def square_zero_closed_form(ring: BottRing) -> list[tuple]:
    """``x_j`` for sinks ``j`` and ``2 x_k - x_j`` when ``alpha_k = x_j`` with ``j`` a sink."""
    _require_simply_laced(ring)
    m = ring.m
    sinks = [j for j in range(m) if not any(ring.alphas[j])]
    out = []
    for j in sinks:
        out.append(tuple(1 if i == j else 0 for i in range(m)))
    for k in range(m):
        row = ring.alphas[k]
        support = [i for i, c in enumerate(row) if c]
        if len(support) == 1 and support[0] in sinks:
            j = support[0]
            v = [0] * m
            v[k], v[j] = 2, -1
            out.append(_normalize_sign(v))
    return sorted(out)


def square_zero_primitives(obj, bound: int = 3, method: str = "auto",
                           backend: str | None = None, node_cap: int = 200_000) -> list[tuple]:
    """Primitive integral ``z`` with ``|z_i| <= bound`` and ``z^2 = 0``, one per sign pair.

    ``method`` is ``'box'`` (exhaustive over the box, restricted to residues in
    ``E(0)``), ``'lift'`` (2-adic lifting, for large bounds) or ``'auto'``.
    """
    _require_simply_laced(obj)
    if bound < 1:
        raise PreconditionError("bound must be positive")
    table = product_table(obj) if isinstance(obj, BottRing) else obj
    if not isinstance(table, ProductTable):
        raise TypeError("need a BottRing or ProductTable")
    r = table.r
    if r == 0:
        return []
    s = table.mod2()
    E0 = s.eigenspace(0)
    if method == "auto":
        cells = (bound + 1) ** r * (1 << E0.dim)
        method = "box" if cells <= 2_000_000 else "lift"
    if method == "box":
        allowed = np.zeros(1 << r, dtype=np.uint8)
        for e in E0:
            allowed[e] = 1
        sols = kernels.box_square_zero(table.array(), bound, allowed, backend=backend)
        return sorted(tuple(int(c) for c in row) for row in sols)
    if method == "lift":
        return _lift_square_zero(table, bound, E0, node_cap)
    raise ValueError(f"unknown method {method!r}")


def _lift_square_zero(table: ProductTable, bound: int, E0: gf2.Subspace2, node_cap: int) -> list[tuple]:
    """Enumerate 2-adic roots of ``Q(z) = z^T T z`` level by level, then read off integer ones.

    A root is scaled so its first odd coordinate is 1; at level ``k`` it is known
    modulo ``2^k`` with ``Q`` vanishing modulo ``2^(k+1)``.  Passing to level
    ``k+1`` is a GF(2)-linear condition on the next binary digit.
    """
    T = table.array().astype(object)
    r, n4 = table.r, table.n4

    def Q(z):
        zz = np.array(z, dtype=object)
        return np.einsum("a,abk,b->k", zz, T, zz) if n4 else np.zeros(0, dtype=object)

    K = max(2, (2 * bound).bit_length() + 1)  # 2^(K-1) > bound
    level = []
    for e in E0:
        if not e:
            continue
        z = gf2.unbits(e, r)
        if all(int(q) % 4 == 0 for q in Q(z)):
            level.append((z, (e & -e).bit_length() - 1))
    diag = [gf2.bits([int(c) for c in T[b, b]]) for b in range(r)]
    nodes = len(level)
    for k in range(1, K):
        nxt = []
        for z, p in level:
            q = Q(z)
            c = gf2.bits([(int(x) >> (k + 1)) & 1 for x in q])
            Tz = np.einsum("abk,b->ak", T, np.array(z, dtype=object))
            cols = []
            for b in range(r):
                col = gf2.bits([int(x) & 1 for x in Tz[b]])
                if k == 1:
                    col ^= diag[b]
                cols.append(0 if b == p else col)
            y0 = gf2.solve(cols, c, r)
            if y0 is None:
                continue
            ker = [v for v in gf2.kernel(cols, r)]
            # y_p is pinned to zero
            ker = gf2.rref(v & ~(1 << p) for v in ker)
            y0 &= ~(1 << p)
            for y in gf2.Subspace2(r, tuple(ker)):
                yy = y ^ y0
                z2 = [z[i] + (((yy >> i) & 1) << k) for i in range(r)]
                nxt.append((z2, p))
            nodes += len(nxt)
            if nodes > node_cap:
                raise BoundTooSmallError(f"2-adic search exceeded {node_cap} nodes at level {k}")
        level = nxt
    mod = 1 << K
    half = mod >> 1
    found = set()
    for z, _ in level:
        for d in range(1, bound + 1, 2):
            v = [((d * c + half) % mod) - half for c in z]
            if max(abs(x) for x in v) > bound:
                continue
            if math.gcd(*v) != 1:
                continue
            if any(int(x) for x in Q(v)):
                continue
            found.add(_normalize_sign(v))
    return sorted(found)


def sink_lines(obj, bound: int = 3, method: str = "auto") -> list[int]:
    """Distinct mod-2 reductions of the square-zero primitives, as packed vectors."""
    return sorted({gf2.bits(z) for z in square_zero_primitives(obj, bound, method)} - {0})
