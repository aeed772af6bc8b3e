"""The complete smooth fan of a toric word.

Rays come in pairs: ``v_k = e_k`` and ``w_k``, the k-th column of the reduced
characteristic matrix.  A maximal cone picks one ray from each pair, so cones
are represented by choice tuples of booleans (``True`` selects ``w_k``).
Positions ``k`` are 1-based in the public API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ComputationError, PreconditionError
from .weyl_words import ToricWord

Matrix = list  # list of integer rows


def reduced_char_matrix(w: ToricWord) -> Matrix:
    L = w.letters
    m = len(L)
    M = [[0] * m for _ in range(m)]
    for j in range(m):
        M[j][j] = -1
        for k in range(j):
            M[j][k] = -w.datum.c(L[j], L[k])
    return M


@dataclass(frozen=True)
class BottFan:
    word: ToricWord
    matrix: tuple  # reduced characteristic matrix, row-major

    @property
    def m(self) -> int:
        return len(self.matrix)

    def v_ray(self, k: int) -> list[int]:
        self._check(k)
        return [1 if i == k - 1 else 0 for i in range(self.m)]

    def w_ray(self, k: int) -> list[int]:
        self._check(k)
        return [row[k - 1] for row in self.matrix]

    def _check(self, k: int) -> None:
        if not 1 <= k <= self.m:
            raise PreconditionError(f"position {k} out of range 1..{self.m}")

    def rays(self) -> list[list[int]]:
        """``v_1..v_m`` then ``w_1..w_m``."""
        return [self.v_ray(k) for k in range(1, self.m + 1)] + [self.w_ray(k) for k in range(1, self.m + 1)]


def bott_fan(w: ToricWord) -> BottFan:
    return BottFan(w, tuple(tuple(r) for r in reduced_char_matrix(w)))


@dataclass(frozen=True)
class PrimitiveCollection:
    k: int
    letter: int
    v: tuple
    w: tuple


def primitive_collections(f: BottFan) -> list[PrimitiveCollection]:
    return [
        PrimitiveCollection(k, f.word.letters[k - 1], tuple(f.v_ray(k)), tuple(f.w_ray(k)))
        for k in range(1, f.m + 1)
    ]


def primitive_relation(f: BottFan, k: int) -> dict[int, int]:
    """Coefficients ``{j: a_j}`` with ``v_k + w_k = sum_j a_j v_j`` (only ``j > k`` appear)."""
    f._check(k)
    return {j: f.matrix[j - 1][k - 1] for j in range(k + 1, f.m + 1) if f.matrix[j - 1][k - 1]}


def degree_of_collection(f: BottFan, k: int) -> int:
    return 2 - sum(primitive_relation(f, k).values())


def degrees(f: BottFan) -> list[int]:
    return [degree_of_collection(f, k) for k in range(1, f.m + 1)]


def is_fano_batyrev(f: BottFan) -> bool:
    return all(d > 0 for d in degrees(f))


def is_weak_fano_batyrev(f: BottFan) -> bool:
    return all(d >= 0 for d in degrees(f))


# cones ---------------------------------------------------------------------


def maximal_cone_matrix(f: BottFan, choice: Sequence) -> Matrix:
    """Columns are the chosen generators; ``choice[k-1]`` truthy (or 'W') picks ``w_k``."""
    if len(choice) != f.m:
        raise PreconditionError(f"choice has length {len(choice)}, expected {f.m}")
    cols = []
    for k, c in enumerate(choice, start=1):
        pick_w = c in ("W", "w") or (c not in ("V", "v") and bool(c))
        cols.append(f.w_ray(k) if pick_w else f.v_ray(k))
    return [[cols[j][i] for j in range(f.m)] for i in range(f.m)]


def integer_det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    return abs(integer_det(M)) == 1


def all_choices(m: int) -> Iterable[tuple[bool, ...]]:
    if m > 20:
        raise PreconditionError("refusing to enumerate more than 2**20 cones")
    return itertools.product((False, True), repeat=m)


def cone_stack(f: BottFan, choices: Iterable[Sequence[bool]] | None = None) -> np.ndarray:
    """Array of shape ``(n_cones, m, m)`` of cone matrices."""
    m = f.m
    W = np.array(f.matrix, dtype=np.int64).reshape(m, m)
    V = np.eye(m, dtype=np.int64)
    ch = np.array(list(all_choices(m) if choices is None else choices), dtype=bool).reshape(-1, m)
    # column k comes from W where ch[:, k] else from V
    return np.where(ch[:, None, :], W[None, :, :], V[None, :, :])


def _integer_inverses(stack: np.ndarray) -> np.ndarray:
    inv = np.linalg.inv(stack.astype(float))
    out = np.rint(inv).astype(np.int64)
    eye = np.broadcast_to(np.eye(stack.shape[1], dtype=np.int64), stack.shape)
    if not np.array_equal(np.einsum("nij,njk->nik", stack, out), eye):
        raise ComputationError("a cone matrix is not unimodular")
    return out


def primitive_relation_by_cone_search(f: BottFan, k: int) -> dict[int, int]:
    """Independent route: locate ``v_k + w_k`` in the fan and read off its cone coordinates.

    Returns coefficients over rays keyed ``('v', j)`` / ``('w', j)``, which for a Bott
    fan should involve only ``v`` rays.
    """
    f._check(k)
    m = f.m
    choices = list(all_choices(m))
    stack = cone_stack(f, choices)
    inv = _integer_inverses(stack)
    target = np.array(f.v_ray(k), dtype=np.int64) + np.array(f.w_ray(k), dtype=np.int64)
    coords = inv @ target
    ok = np.all(coords >= 0, axis=1)
    if not ok.any():
        raise ComputationError(f"v_{k}+w_{k} lies in no cone")
    # all containing cones agree on the generators of the minimal face
    idx = int(np.flatnonzero(ok)[0])
    rel = {}
    for j in range(m):
        a = int(coords[idx, j])
        if a:
            rel[("w" if choices[idx][j] else "v", j + 1)] = a
    return rel


def degrees_by_cone_search(f: BottFan) -> list[int]:
    return [2 - sum(primitive_relation_by_cone_search(f, k).values()) for k in range(1, f.m + 1)]


def is_complete_sample_check(f: BottFan, n_samples: int = 1000, seed: int = 0,
                             cones: Sequence[Sequence[bool]] | None = None,
                             max_retries: int = 100) -> bool:
    """Sampled check that every point lies in the interior of exactly one maximal cone.

    ``cones`` restricts the fan to the listed choices (used to build negative controls).
    """
    if n_samples < 1:
        raise PreconditionError("n_samples must be positive")
    m = f.m
    if m == 0:
        return True
    stack = cone_stack(f, cones)
    if stack.shape[0] == 0:
        return False
    inv = _integer_inverses(stack)
    rng = np.random.default_rng(seed)
    scale = 10**6
    pts = rng.integers(-scale, scale + 1, size=(m, n_samples))
    for _ in range(max_retries):
        coords = np.einsum("nij,js->nis", inv, pts)
        degenerate = np.any(coords == 0, axis=1).any(axis=0)
        if not degenerate.any():
            break
        # perturb only the degenerate samples
        pts[:, degenerate] = rng.integers(-scale, scale + 1, size=(m, int(degenerate.sum())))
    else:
        raise ComputationError("could not draw non-degenerate sample points")
    inside = np.all(coords > 0, axis=1).sum(axis=0)
    return bool(np.all(inside == 1))


# isomorphisms --------------------------------------------------------------


def fan_iso_from_digraph_iso(w: ToricWord, w2: ToricWord, f: Mapping[int, int]):
    """Permutation matrix sending ``v`` rays of ``w`` to the matched rays of ``w2``.

    Returns None when the map fails to carry every ``w`` ray onto its partner,
    which happens exactly when ``f`` is not a labelled digraph isomorphism.
    """
    if w.m != w2.m:
        raise PreconditionError(f"dimension mismatch: {w.m} vs {w2.m}")
    m = w.m
    if sorted(f.get(a) for a in w.letters) != sorted(w2.letters):
        raise PreconditionError("f is not a bijection between the letter sets")
    pos2 = w2.position()
    target = [pos2[f[a]] for a in w.letters]
    P = [[0] * m for _ in range(m)]
    for j, t in enumerate(target):
        P[t][j] = 1
    F, F2 = bott_fan(w), bott_fan(w2)
    for k in range(1, m + 1):
        col = F.w_ray(k)
        image = [sum(P[i][j] * col[j] for j in range(m)) for i in range(m)]
        if image != F2.w_ray(target[k - 1] + 1):
            return None
    return P


def maps_cones_bijectively(P: Matrix, f: BottFan, f2: BottFan) -> bool:
    """Check that ``P`` sends the ray set of each maximal cone of ``f`` onto one of ``f2``."""
    m = f.m
    rays2 = {tuple(r): i for i, r in enumerate(f2.rays())}
    cones2 = {frozenset(k if not c else k + m for k, c in enumerate(ch)) for ch in all_choices(m)}
    seen = set()
    for ch in all_choices(m):
        img = set()
        for k, c in enumerate(ch, start=1):
            ray = f.w_ray(k) if c else f.v_ray(k)
            im = tuple(sum(P[i][j] * ray[j] for j in range(m)) for i in range(m))
            if im not in rays2:
                return False
            img.add(rays2[im])
        img = frozenset(img)
        if img not in cones2 or img in seen:
            return False
        seen.add(img)
    return len(seen) == len(cones2)


def hirzebruch_index(w: ToricWord) -> int:
    """``a`` with ``X_w`` the Hirzebruch surface ``F_a``."""
    if w.m != 2:
        raise PreconditionError(f"Hirzebruch index needs a word of length 2, got {w.m}")
    i1, i2 = w.letters
    return -w.datum.c(i2, i1)


def fan_to_json(f: BottFan) -> dict:
    return {
        "m": f.m,
        "word": list(f.word.letters),
        "reduced_char_matrix": [list(r) for r in f.matrix],
        "relations": [
            {"k": k, "letter": f.word.letters[k - 1],
             "rhs": {str(f.word.letters[j - 1]): a for j, a in primitive_relation(f, k).items()}}
            for k in range(1, f.m + 1)
        ],
        "degrees": degrees(f),
    }
