# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: bounded square-zero search and GF(2) eigenspace dimensions."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline int64_t _gcd(int64_t a, int64_t b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def box_square_zero(table, long bound, parity_allowed):
    cdef int64_t[:, :, ::1] T = np.ascontiguousarray(table, dtype=np.int64)
    cdef const unsigned char[::1] allowed = np.ascontiguousarray(parity_allowed, dtype=np.uint8)
    cdef Py_ssize_t r = T.shape[0]
    cdef Py_ssize_t N = T.shape[2]
    cdef int64_t[::1] z = np.zeros(r, dtype=np.int64)
    cdef int64_t[::1] lo = np.zeros(r, dtype=np.int64)
    cdef int64_t[::1] hi = np.zeros(r, dtype=np.int64)
    cdef int64_t[:, ::1] U = np.zeros((r, N), dtype=np.int64)
    cdef int64_t[::1] Q = np.zeros(N, dtype=np.int64)
    cdef Py_ssize_t a, b, k, e
    cdef int64_t delta, g, p, B = bound
    cdef bint zero
    found = []
    if r == 0:
        return np.zeros((0, 0), dtype=np.int64)
    for e in range(1, 1 << r):
        if not allowed[e]:
            continue
        empty = False
        for a in range(r):
            p = (e >> a) & 1
            lo[a] = -B if ((-B) & 1) == p else -B + 1
            hi[a] = B if (B & 1) == p else B - 1
            if lo[a] > hi[a]:
                empty = True
            z[a] = lo[a]
        if empty:
            continue
        for b in range(r):
            for k in range(N):
                U[b, k] = 0
                for a in range(r):
                    U[b, k] += T[b, a, k] * z[a]
        for k in range(N):
            Q[k] = 0
            for a in range(r):
                Q[k] += z[a] * U[a, k]
        while True:
            zero = True
            for k in range(N):
                if Q[k] != 0:
                    zero = False
                    break
            if zero:
                g = 0
                for a in range(r):
                    g = _gcd(g, z[a])
                if g == 1:
                    for a in range(r):
                        if z[a] != 0:
                            break
                    if z[a] > 0:
                        found.append([z[b] for b in range(r)])
            a = r - 1
            while a >= 0:
                if z[a] + 2 <= hi[a]:
                    delta = 2
                else:
                    delta = lo[a] - z[a]
                if delta != 0:
                    for k in range(N):
                        Q[k] += 2 * delta * U[a, k] + delta * delta * T[a, a, k]
                    for b in range(r):
                        for k in range(N):
                            U[b, k] += delta * T[b, a, k]
                    z[a] += delta
                if delta > 0:
                    break
                a -= 1
            if a < 0:
                break
    if not found:
        return np.zeros((0, r), dtype=np.int64)
    out = np.array(found, dtype=np.int64)
    order = np.lexsort(out.T[::-1])
    return out[order]


def gf2_eigen_dims(sq, prod, int r):
    """Gray-code sweep over all alpha; needs packed vectors of at most 64 bits."""
    cdef uint64_t cols[64]
    cdef uint64_t basis[64]
    cdef uint64_t P[64][64]
    cdef uint64_t v, x
    cdef Py_ssize_t a, b, i, nb, j, top
    cdef long alpha = 0
    cdef long n = 1 << r
    if r > 64:
        raise ValueError("rank too large for the compiled kernel")
    for a in range(r):
        cols[a] = <uint64_t>sq[a]
        for b in range(r):
            P[b][a] = <uint64_t>prod[b][a]
    dims = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] D = dims
    for i in range(n):
        if i:
            b = 0
            while not ((i >> b) & 1):
                b += 1
            alpha ^= (1 << b)
            for a in range(r):
                cols[a] ^= P[b][a]
        # rank by elimination on pivots at the highest bit
        nb = 0
        for a in range(r):
            v = cols[a]
            for j in range(nb):
                x = v ^ basis[j]
                if x < v:
                    v = x
            if v:
                # insert keeping decreasing order
                j = nb
                while j > 0 and basis[j - 1] < v:
                    basis[j] = basis[j - 1]
                    j -= 1
                basis[j] = v
                nb += 1
        D[alpha] = r - nb
    return dims
