# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Bit-packed GF(2) row reduction on uint64 words."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t

cnp.import_array()


cdef Py_ssize_t _eliminate(uint64_t[:, ::1] M, Py_ssize_t nbits) noexcept nogil:
    cdef Py_ssize_t n = M.shape[0]
    cdef Py_ssize_t nw = M.shape[1]
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, w, r, i, k
    cdef uint64_t bit, tmp
    for col in range(nbits):
        if rank == n:
            break
        w = col >> 6
        bit = (<uint64_t>1) << (col & 63)
        r = rank
        while r < n and not (M[r, w] & bit):
            r += 1
        if r == n:
            continue
        if r != rank:
            for k in range(w, nw):
                tmp = M[r, k]
                M[r, k] = M[rank, k]
                M[rank, k] = tmp
        for i in range(n):
            if i != rank and (M[i, w] & bit):
                for k in range(w, nw):
                    M[i, k] ^= M[rank, k]
        rank += 1
    return rank


def rref(rows, nbits=None):
    """Reduced row echelon form of int-encoded rows, sorted by ascending pivot."""
    rows = [r for r in rows if r]
    if not rows:
        return []
    if nbits is None:
        nbits = max(r.bit_length() for r in rows)
    cdef Py_ssize_t nw = (nbits + 63) >> 6
    cdef Py_ssize_t nbytes = nw * 8
    buf = b"".join([r.to_bytes(nbytes, "little") for r in rows])
    arr = np.frombuffer(buf, dtype=np.uint64).reshape(len(rows), nw).copy()
    cdef uint64_t[:, ::1] M = arr
    cdef Py_ssize_t nb = nbits
    cdef Py_ssize_t rank
    with nogil:
        rank = _eliminate(M, nb)
    return [int.from_bytes(arr[i].tobytes(), "little") for i in range(rank)]
