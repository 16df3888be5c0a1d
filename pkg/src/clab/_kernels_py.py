"""Pure-Python (numpy) versions of the compiled kernels.

Same signatures and results as ``clab._kernels``. The sieve here is a
vectorised Eratosthenes that fills smallest prime factors, not a linear
sieve; the arrays it returns are identical.
"""
from itertools import chain, combinations
from math import comb, isqrt

import numpy as np


def linear_sieve(limit):
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p::p]
            seg[seg == 0] = p
    primes = np.flatnonzero(spf == 0)
    primes = primes[primes >= 2].astype(np.int64)
    spf[primes] = primes
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes.tolist():
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p::p * p] = 0
    return spf, primes, mu


def _enumerate(n, k):
    total = comb(n, k)
    flat = np.fromiter(chain.from_iterable(combinations(range(n), k)),
                       dtype=np.int8, count=total * k)
    return flat.reshape(total, k)


def _mask(idx):
    m = 0
    for e in idx.tolist():
        m |= 1 << e
    return m


def find_collision(rows, row_hash, k):
    n = rows.shape[0]
    if k == 0 or k == n:
        return False, 0, 0
    combos = _enumerate(n, k)
    hashes = row_hash[combos].sum(axis=1, dtype=np.uint64)
    order = np.argsort(hashes, kind="stable")
    hs = hashes[order]
    dup = hs[1:] == hs[:-1]
    for pos in np.flatnonzero(dup & ~np.concatenate(([False], dup[:-1]))).tolist():
        end = pos + 1
        while end + 1 < len(hs) and hs[end + 1] == hs[pos]:
            end += 1
        run = order[pos:end + 1]
        sums = [rows[combos[i]].sum(axis=0) for i in run]
        for x in range(len(run)):
            for y in range(x + 1, len(run)):
                if np.array_equal(sums[x], sums[y]):
                    return True, _mask(combos[run[x]]), _mask(combos[run[y]])
    return False, 0, 0


def find_vanishing(rows, row_hash, k):
    n = rows.shape[0]
    if k == 0:
        return True, 0
    combos = _enumerate(n, k)
    hashes = row_hash[combos].sum(axis=1, dtype=np.uint64)
    for idx in np.flatnonzero(hashes == 0).tolist():
        if not rows[combos[idx]].sum(axis=0).any():
            return True, _mask(combos[idx])
    return False, 0
