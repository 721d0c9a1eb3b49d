# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract and summation order as ``_pykernels``."""
from libc.math cimport sqrt, INFINITY
from libc.stdlib cimport malloc, calloc, free

import numpy as np

cdef enum:
    CONSECUTIVE_H = 0
    ALL_PAIRS_H = 1
    MASKED_ADJACENT = 2
    HP_CONTACT = 3

cdef int DX[4]
cdef int DY[4]
cdef int LEX[4]
DX[:] = [1, 0, -1, 0]
DY[:] = [0, 1, 0, -1]
LEX[:] = [3, 2, 0, 1]


cdef double _energy(const long long* xs, const long long* ys, const unsigned char* bits,
                    Py_ssize_t n, int variant) noexcept nogil:
    cdef Py_ssize_t i, j, prev
    cdef long long dx, dy, adx, ady
    cdef double total = 0.0
    cdef long contacts = 0
    if variant == CONSECUTIVE_H:
        prev = -1
        for i in range(n):
            if bits[i]:
                if prev >= 0:
                    dx = xs[i] - xs[prev]
                    dy = ys[i] - ys[prev]
                    total += sqrt(<double>(dx * dx + dy * dy))
                prev = i
    elif variant == ALL_PAIRS_H:
        for i in range(n):
            if not bits[i]:
                continue
            for j in range(i + 1, n):
                if bits[j]:
                    dx = xs[j] - xs[i]
                    dy = ys[j] - ys[i]
                    total += sqrt(<double>(dx * dx + dy * dy))
    elif variant == MASKED_ADJACENT:
        for i in range(n - 1):
            dx = xs[i + 1] * bits[i + 1] - xs[i] * bits[i]
            dy = ys[i + 1] * bits[i + 1] - ys[i] * bits[i]
            total += sqrt(<double>(dx * dx + dy * dy))
    else:
        for i in range(n):
            if not bits[i]:
                continue
            for j in range(i + 2, n):
                if bits[j]:
                    adx = xs[j] - xs[i]
                    ady = ys[j] - ys[i]
                    if adx < 0:
                        adx = -adx
                    if ady < 0:
                        ady = -ady
                    if adx + ady == 1:
                        contacts += 1
        total = -(<double>contacts)
    return total


def energy(xs, ys, bits, int variant):
    if variant < 0 or variant > 3:
        raise ValueError(f"unknown variant code {variant}")
    cdef const long long[::1] xv = np.ascontiguousarray(xs, dtype=np.int64)
    cdef const long long[::1] yv = np.ascontiguousarray(ys, dtype=np.int64)
    cdef const unsigned char[::1] bv = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef Py_ssize_t n = bv.shape[0]
    if xv.shape[0] != n or yv.shape[0] != n:
        raise ValueError("coordinate and bit arrays differ in length")
    if n == 0:
        return 0.0
    return _energy(&xv[0], &yv[0], &bv[0], n, variant)


cdef struct Search:
    Py_ssize_t n_points
    Py_ssize_t n_steps
    Py_ssize_t width
    int variant
    long long* xs
    long long* ys
    unsigned char* bits
    unsigned char* grid
    int* codes
    int* best_codes
    double best
    long long visited


cdef inline Py_ssize_t _cell(Search* s, long long x, long long y) noexcept nogil:
    return (y + s.n_steps) * s.width + (x + s.n_steps)


cdef void _walk(Search* s, Py_ssize_t k, bint straight) noexcept nogil:
    cdef int t, c
    cdef long long x, y
    cdef Py_ssize_t cell, m
    cdef double e
    if k == s.n_steps:
        s.visited += 1
        e = _energy(s.xs, s.ys, s.bits, s.n_points, s.variant)
        if e < s.best:
            s.best = e
            for m in range(s.n_steps):
                s.best_codes[m] = s.codes[m]
        return
    for t in range(4):
        c = LEX[t]
        if k == 0 and c != 0:
            continue
        if straight and c != 0 and c != 1:
            continue
        x = s.xs[k] + DX[c]
        y = s.ys[k] + DY[c]
        cell = _cell(s, x, y)
        if s.grid[cell]:
            continue
        s.grid[cell] = 1
        s.xs[k + 1] = x
        s.ys[k + 1] = y
        s.codes[k] = c
        _walk(s, k + 1, straight and c == 0)
        s.grid[cell] = 0


def enumerate_from(bits, int variant, prefix):
    """See ``_pykernels.enumerate_from``."""
    cdef const unsigned char[::1] bv = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef Search s
    cdef Py_ssize_t k
    cdef int c
    cdef bint straight = True
    cdef Py_ssize_t cell
    prefix = [int(p) for p in prefix]
    cdef Py_ssize_t plen = len(prefix)
    s.n_points = bv.shape[0]
    s.n_steps = s.n_points - 1
    s.width = 2 * s.n_steps + 1
    s.variant = variant
    s.best = INFINITY
    s.visited = 0
    s.xs = <long long*> calloc(s.n_points, sizeof(long long))
    s.ys = <long long*> calloc(s.n_points, sizeof(long long))
    s.bits = <unsigned char*> malloc(s.n_points)
    s.grid = <unsigned char*> calloc(s.width * s.width, 1)
    s.codes = <int*> calloc(s.n_steps + 1, sizeof(int))
    s.best_codes = <int*> calloc(s.n_steps + 1, sizeof(int))
    if not (s.xs and s.ys and s.bits and s.grid and s.codes and s.best_codes):
        free(s.xs); free(s.ys); free(s.bits); free(s.grid); free(s.codes); free(s.best_codes)
        raise MemoryError()
    try:
        for k in range(s.n_points):
            s.bits[k] = bv[k]
        s.grid[_cell(&s, 0, 0)] = 1
        for k in range(plen):
            c = prefix[k]
            if (k == 0 and c != 0) or (straight and c != 0 and c != 1):
                return float("inf"), None, 0
            cell = _cell(&s, s.xs[k] + DX[c], s.ys[k] + DY[c])
            if s.grid[cell]:
                return float("inf"), None, 0
            s.grid[cell] = 1
            s.xs[k + 1] = s.xs[k] + DX[c]
            s.ys[k + 1] = s.ys[k] + DY[c]
            s.codes[k] = c
            straight = straight and c == 0
        with nogil:
            _walk(&s, plen, straight)
        if s.visited == 0:
            return float("inf"), None, 0
        return s.best, tuple(s.best_codes[k] for k in range(s.n_steps)), s.visited
    finally:
        free(s.xs); free(s.ys); free(s.bits); free(s.grid); free(s.codes); free(s.best_codes)
