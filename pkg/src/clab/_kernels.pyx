# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Signatures mirror ``clab._kernels_py`` exactly."""

import numpy as np

from libc.stdint cimport int8_t, int32_t, int64_t, uint64_t
from libc.math cimport log
from libc.stdlib cimport calloc, free

cdef extern from *:
    """
    static inline int clab_ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int clab_ctz64(unsigned long long x) nogil


def linear_sieve(int64_t limit):
    """Return ``(spf, primes, mu)`` for ``0..limit`` from a single linear pass."""
    cdef int64_t cap
    if limit < 17:
        cap = 8
    else:
        cap = <int64_t>(1.25506 * limit / log(<double>limit)) + 16
    spf_arr = np.zeros(limit + 1, dtype=np.int32)
    mu_arr = np.zeros(limit + 1, dtype=np.int8)
    pr_arr = np.zeros(cap, dtype=np.int64)
    cdef int32_t[::1] spf = spf_arr
    cdef int8_t[::1] mu = mu_arr
    cdef int64_t[::1] primes = pr_arr
    cdef int64_t i, j, p, cnt = 0, ip
    cdef int32_t si
    if limit >= 1:
        mu[1] = 1
    with nogil:
        for i in range(2, limit + 1):
            if spf[i] == 0:
                spf[i] = <int32_t>i
                mu[i] = -1
                primes[cnt] = i
                cnt += 1
            si = spf[i]
            for j in range(cnt):
                p = primes[j]
                ip = i * p
                if p > si or ip > limit:
                    break
                spf[ip] = <int32_t>p
                if p == si:
                    mu[ip] = 0
                else:
                    mu[ip] = -mu[i]
    return spf_arr, pr_arr[:cnt].copy(), mu_arr


cdef inline uint64_t _mask_hash(uint64_t m, const uint64_t[::1] rh) noexcept nogil:
    cdef uint64_t h = 0
    while m:
        h += rh[clab_ctz64(m)]
        m &= m - 1
    return h


cdef bint _same_sum(uint64_t a, uint64_t b, const int64_t[:, ::1] rows,
                    int64_t* acc) noexcept nogil:
    cdef Py_ssize_t phi = rows.shape[1], j
    cdef int e
    for j in range(phi):
        acc[j] = 0
    while a:
        e = clab_ctz64(a)
        for j in range(phi):
            acc[j] += rows[e, j]
        a &= a - 1
    while b:
        e = clab_ctz64(b)
        for j in range(phi):
            acc[j] -= rows[e, j]
        b &= b - 1
    for j in range(phi):
        if acc[j] != 0:
            return False
    return True


def find_collision(const int64_t[:, ::1] rows, const uint64_t[::1] row_hash, int k):
    """Search k-subsets of ``range(n)`` for two with identical reduced sums.

    Returns ``(found, mask_a, mask_b)``; masks are bit sets of exponents.
    Candidates are bucketed by a linear 64-bit hash and confirmed exactly.
    """
    cdef int n = rows.shape[0]
    cdef int i, j
    cdef uint64_t total = 1
    for i in range(k):
        total = total * <uint64_t>(n - i) // <uint64_t>(i + 1)
    cdef int bits = 4
    while (<uint64_t>1 << bits) < total + total // 2 + 16:
        bits += 1
    table_arr = np.zeros(<Py_ssize_t>1 << bits, dtype=np.uint64)
    cdef uint64_t[::1] table = table_arr
    cdef uint64_t tmask = (<uint64_t>1 << bits) - 1
    cdef int shift = 64 - bits

    cdef int* c = <int*>calloc(k + 1, sizeof(int))
    cdef uint64_t* ph = <uint64_t*>calloc(k + 1, sizeof(uint64_t))
    cdef uint64_t* pm = <uint64_t*>calloc(k + 1, sizeof(uint64_t))
    cdef int64_t* acc = <int64_t*>calloc(rows.shape[1] + 1, sizeof(int64_t))
    cdef uint64_t h, m, other, slot
    cdef bint found = False
    cdef uint64_t ra = 0, rb = 0
    try:
        with nogil:
            for i in range(k):
                c[i] = i
                ph[i + 1] = ph[i] + row_hash[i]
                pm[i + 1] = pm[i] | (<uint64_t>1 << i)
            while True:
                h = ph[k]
                m = pm[k]
                slot = h >> shift
                while table[slot] != 0:
                    other = table[slot]
                    if _mask_hash(other, row_hash) == h and _same_sum(other, m, rows, acc):
                        found = True
                        ra = other
                        rb = m
                        break
                    slot = (slot + 1) & tmask
                if found:
                    break
                table[slot] = m
                i = k - 1
                while i >= 0 and c[i] == n - k + i:
                    i -= 1
                if i < 0:
                    break
                c[i] += 1
                for j in range(i + 1, k):
                    c[j] = c[j - 1] + 1
                for j in range(i, k):
                    ph[j + 1] = ph[j] + row_hash[c[j]]
                    pm[j + 1] = pm[j] | (<uint64_t>1 << c[j])
    finally:
        free(c)
        free(ph)
        free(pm)
        free(acc)
    return bool(found), int(ra), int(rb)


def find_vanishing(const int64_t[:, ::1] rows, const uint64_t[::1] row_hash, int k):
    """Search k-subsets for one whose reduced sum is the zero vector.

    Returns ``(found, mask)``.
    """
    cdef int n = rows.shape[0]
    cdef int i, j
    cdef int* c = <int*>calloc(k + 1, sizeof(int))
    cdef uint64_t* ph = <uint64_t*>calloc(k + 1, sizeof(uint64_t))
    cdef uint64_t* pm = <uint64_t*>calloc(k + 1, sizeof(uint64_t))
    cdef int64_t* acc = <int64_t*>calloc(rows.shape[1] + 1, sizeof(int64_t))
    cdef bint found = False
    cdef uint64_t res = 0
    if k == 0:
        free(c); free(ph); free(pm); free(acc)
        return True, 0
    try:
        with nogil:
            for i in range(k):
                c[i] = i
                ph[i + 1] = ph[i] + row_hash[i]
                pm[i + 1] = pm[i] | (<uint64_t>1 << i)
            while True:
                if ph[k] == 0 and _same_sum(pm[k], 0, rows, acc):
                    found = True
                    res = pm[k]
                    break
                i = k - 1
                while i >= 0 and c[i] == n - k + i:
                    i -= 1
                if i < 0:
                    break
                c[i] += 1
                for j in range(i + 1, k):
                    c[j] = c[j - 1] + 1
                for j in range(i, k):
                    ph[j + 1] = ph[j] + row_hash[c[j]]
                    pm[j + 1] = pm[j] | (<uint64_t>1 << c[j])
    finally:
        free(c)
        free(ph)
        free(pm)
        free(acc)
    return bool(found), int(res)
