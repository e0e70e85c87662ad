# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see ``_pykernels`` for the contract)."""

from libc.stdlib cimport malloc, free

from ._pykernels import _h_range


cdef long _isqrt(long n):
    cdef long x
    if n <= 0:
        return 0
    x = <long>(n ** 0.5)
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


def short_vectors(int r, long s, long k):
    cdef long h, t, c, m
    cdef int i
    cdef long buf[9]
    cdef long rem_sum[10]
    cdef long rem_sq[10]
    cdef long hi[9]
    cdef list out = []
    if r == 0:
        return [(h,) for h in _h_range(0, s, k) if h * h == s and 3 * h == k]
    for h in _h_range(r, s, k):
        t = h * h - s
        if t < 0:
            continue
        # iterative depth-first search over c_1..c_r
        rem_sum[0] = k - 3 * h
        rem_sq[0] = t
        i = 0
        if rem_sum[0] * rem_sum[0] > r * rem_sq[0]:
            continue
        m = _isqrt(rem_sq[0])
        buf[0] = -m - 1
        hi[0] = m
        while i >= 0:
            buf[i] += 1
            if buf[i] > hi[i]:
                i -= 1
                continue
            c = buf[i]
            rem_sum[i + 1] = rem_sum[i] - c
            rem_sq[i + 1] = rem_sq[i] - c * c
            if i + 1 == r:
                if rem_sum[r] == 0 and rem_sq[r] == 0:
                    out.append((h,) + tuple([buf[j] for j in range(r)]))
                continue
            if rem_sum[i + 1] * rem_sum[i + 1] > (r - i - 1) * rem_sq[i + 1]:
                continue
            i += 1
            m = _isqrt(rem_sq[i])
            buf[i] = -m - 1
            hi[i] = m
    return out


cdef long long _count(unsigned char* rows, int n, int* cands, int ncand, int* scratch):
    cdef long long total = 1
    cdef int idx, x, j, nn
    cdef int* child = scratch
    for idx in range(ncand):
        j = cands[idx]
        nn = 0
        for x in range(idx + 1, ncand):
            if rows[j * n + cands[x]]:
                child[nn] = cands[x]
                nn += 1
        total += _count(rows, n, child, nn, scratch + n)
    return total


cdef unsigned char* _rows(compat, int n) except NULL:
    cdef unsigned char* rows = <unsigned char*>malloc(n * n + 1)
    cdef int i, j
    if rows == NULL:
        raise MemoryError()
    for i in range(n):
        row = compat[i]
        for j in range(n):
            rows[i * n + j] = 1 if row[j] else 0
    return rows


def count_simple_systems(compat):
    cdef int n = len(compat)
    cdef int i
    cdef unsigned char* rows = _rows(compat, n)
    # depth never exceeds n + 1, one candidate buffer of size n per level
    cdef int* scratch = <int*>malloc(sizeof(int) * (n + 2) * (n + 1))
    cdef int* top = <int*>malloc(sizeof(int) * (n + 1))
    if scratch == NULL or top == NULL:
        free(rows); free(scratch); free(top)
        raise MemoryError()
    try:
        for i in range(n):
            top[i] = i
        return _count(rows, n, top, n, scratch)
    finally:
        free(rows)
        free(scratch)
        free(top)


cdef void _collect(unsigned char* rows, int n, int* cands, int ncand, int* scratch,
                   int* chosen, int depth, int max_size, list out):
    cdef int idx, x, j, nn
    cdef int* child = scratch
    out.append(tuple([chosen[x] for x in range(depth)]))
    if depth == max_size:
        return
    for idx in range(ncand):
        j = cands[idx]
        nn = 0
        for x in range(idx + 1, ncand):
            if rows[j * n + cands[x]]:
                child[nn] = cands[x]
                nn += 1
        chosen[depth] = j
        _collect(rows, n, child, nn, scratch + n, chosen, depth + 1, max_size, out)


def collect_simple_systems(compat, int max_size=-1):
    cdef int n = len(compat)
    cdef int i
    cdef list out = []
    cdef unsigned char* rows = _rows(compat, n)
    cdef int* scratch = <int*>malloc(sizeof(int) * (n + 2) * (n + 1))
    cdef int* top = <int*>malloc(sizeof(int) * (n + 1))
    cdef int* chosen = <int*>malloc(sizeof(int) * (n + 1))
    if scratch == NULL or top == NULL or chosen == NULL:
        free(rows); free(scratch); free(top); free(chosen)
        raise MemoryError()
    try:
        for i in range(n):
            top[i] = i
        _collect(rows, n, top, n, scratch, chosen, 0, max_size, out)
        return out
    finally:
        free(rows)
        free(scratch)
        free(top)
        free(chosen)
