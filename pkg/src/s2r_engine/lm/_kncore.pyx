# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled query kernel; semantics identical to the pure fallback."""

import numpy as np


cdef class KnKernel:
    """Interpolated smoothed next-token distributions over int-coded tokens.

    Same table layout and query semantics as the pure kernel: levels of
    pre-discounted continuation arrays over a uniform base, with early
    exit once a context level is missing.
    """

    cdef public int order
    cdef public int vocab_size
    cdef public list levels
    cdef double[::1] _buf

    backend = "cython"

    def __init__(self, int order, int vocab_size, list levels):
        self.order = order
        self.vocab_size = vocab_size
        self.levels = levels
        self._buf = np.empty(vocab_size, dtype=np.float64)

    cdef void _fill(self, tuple context):
        cdef int i, j, k, top, nnz
        cdef double base = 1.0 / self.vocab_size
        cdef double backoff_mass
        cdef double[::1] p = self._buf
        cdef double[::1] weights
        cdef int[::1] ids
        cdef object entry
        cdef dict table
        cdef Py_ssize_t ctx_len = len(context)

        for i in range(self.vocab_size):
            p[i] = base
        top = self.order if self.order < ctx_len + 1 else ctx_len + 1
        for k in range(1, top + 1):
            table = <dict> self.levels[k - 1]
            entry = table.get(context[ctx_len - (k - 1):] if k > 1 else ())
            if entry is None:
                break
            ids = entry[0]
            weights = entry[1]
            backoff_mass = entry[2]
            for i in range(self.vocab_size):
                p[i] *= backoff_mass
            nnz = ids.shape[0]
            for j in range(nnz):
                p[ids[j]] += weights[j]

    def distribution(self, tuple context):
        self._fill(context)
        return np.asarray(self._buf).copy()

    def topk(self, tuple context, int k):
        """Top-k ids by probability; ties broken by ascending id."""
        cdef int i, r, best, limit
        cdef double best_p
        cdef double[::1] p
        self._fill(context)
        p = self._buf
        limit = k if k < self.vocab_size else self.vocab_size
        taken = np.zeros(self.vocab_size, dtype=np.uint8)
        cdef unsigned char[::1] used = taken
        out = []
        for r in range(limit):
            best = -1
            best_p = -1.0
            for i in range(self.vocab_size):
                if not used[i] and p[i] > best_p:
                    best_p = p[i]
                    best = i
            used[best] = 1
            out.append(best)
        return out
