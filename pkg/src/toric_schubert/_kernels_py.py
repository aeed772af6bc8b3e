"""Pure Python / numpy versions of the compiled kernels (same signatures)."""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def box_square_zero(table, bound, parity_allowed):
    """Primitive ``z`` in ``[-bound, bound]^r`` with ``z^T T z = 0``, first nonzero entry positive.

    ``table`` is an int64 array ``(r, r, N)``; ``parity_allowed[e]`` is nonzero when
    the residue pattern ``e`` (bit a = z_a mod 2) may occur.  Rows come out in
    lexicographic order.
    """
    T = np.ascontiguousarray(table, dtype=np.int64)
    r = T.shape[0]
    B = int(bound)
    vals = {p: np.array([v for v in range(-B, B + 1) if (v & 1) == p], dtype=np.int64) for p in (0, 1)}
    found = []
    for e in range(1, 1 << r):  # the all-even pattern holds no primitive vector
        if not parity_allowed[e]:
            continue
        axes = [vals[(e >> a) & 1] for a in range(r)]
        sizes = [len(ax) for ax in axes]
        total = int(np.prod(sizes))
        if total == 0:
            continue
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, total))
            Z = np.empty((len(idx), r), dtype=np.int64)
            rem = idx
            for a in range(r - 1, -1, -1):
                Z[:, a] = axes[a][rem % sizes[a]]
                rem = rem // sizes[a]
            Q = np.einsum("na,abk,nb->nk", Z, T, Z, optimize=True)
            hit = Z[~Q.any(axis=1)]
            if len(hit):
                g = np.gcd.reduce(np.abs(hit), axis=1)
                hit = hit[g == 1]
                first = hit[np.arange(len(hit)), (hit != 0).argmax(axis=1)]
                found.append(hit[first > 0])
    if not found:
        return np.zeros((0, r), dtype=np.int64)
    out = np.concatenate(found)
    order = np.lexsort(out.T[::-1])
    return out[order]


def gf2_eigen_dims(sq, prod, r):
    """``dims[alpha] = dim ker(x -> x^2 + alpha x)`` for every ``alpha`` in GF(2)^r.

    ``sq[a]`` is the packed square of generator a; ``prod[b][a]`` the packed product.
    """
    dims = [0] * (1 << r)
    for alpha in range(1 << r):
        cols = []
        for a in range(r):
            c = sq[a]
            for b in range(r):
                if (alpha >> b) & 1:
                    c ^= prod[b][a]
            cols.append(c)
        dims[alpha] = r - _rank(cols)
    return dims


def _rank(vecs):
    basis = []
    for v in vecs:
        for b in basis:
            if v ^ b < v:
                v ^= b
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)
