"""Sieve tables: primality, smallest prime factor, Möbius, and prefix sums.

A :class:`PrimeTable` is built once and then only read; every other module
queries it.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from clab._backend import kernels
from clab.errors import InvalidArgumentError, ResourceLimitError

MAX_LIMIT = 10**8
CACHE_MAGIC = b"CLAB1"


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Sieve data for ``0..limit``.

    ``spf[n]`` is the smallest prime factor of ``n`` for ``n >= 2`` (0 below).
    The prefix arrays are indexed by ``n`` and accumulate over ``2..n``.
    """

    limit: int
    is_prime: np.ndarray
    spf: np.ndarray
    primes: np.ndarray
    mu: np.ndarray
    prefix_pi0: np.ndarray
    prefix_pi1: np.ndarray
    prefix_spf: np.ndarray

    def __repr__(self):
        return f"PrimeTable(limit={self.limit}, primes={len(self.primes)})"


def _assemble(limit, spf, primes, mu):
    is_prime = np.zeros(limit + 1, dtype=bool)
    is_prime[primes] = True
    ind = is_prime.astype(np.int64)
    pi0 = np.cumsum(ind)
    pi1 = np.cumsum(ind * np.arange(limit + 1, dtype=np.int64))
    spf_prefix = np.cumsum(spf.astype(np.int64))
    for arr in (is_prime, spf, primes, mu, pi0, pi1, spf_prefix):
        arr.setflags(write=False)
    return PrimeTable(limit, is_prime, spf, primes, mu, pi0, pi1, spf_prefix)


def build_prime_table(limit: int) -> PrimeTable:
    """Sieve every integer up to ``limit`` (at least 2, at most ``10**8``)."""
    limit = int(limit)
    if limit < 2:
        raise InvalidArgumentError(f"sieve limit must be >= 2, got {limit}")
    if limit > MAX_LIMIT:
        raise ResourceLimitError(f"sieve limit {limit} exceeds guard {MAX_LIMIT}")
    spf, primes, mu = kernels.linear_sieve(limit)
    return _assemble(limit, spf, primes, mu)


def _check_range(t: PrimeTable, n, lo):
    if n < lo or n > t.limit:
        raise InvalidArgumentError(f"n={n} outside [{lo}, {t.limit}]")


def smallest_prime_factor(t: PrimeTable, n: int) -> int:
    _check_range(t, n, 2)
    return int(t.spf[n])


def mobius(t: PrimeTable, n: int) -> int:
    _check_range(t, n, 1)
    return int(t.mu[n])


def prime_pi(t: PrimeTable, x) -> int:
    """Number of primes <= x. Real ``x`` is floored; values below 2 give 0."""
    if x > t.limit:
        raise InvalidArgumentError(f"x={x} beyond sieve limit {t.limit}")
    if x < 2:
        return 0
    return int(t.prefix_pi0[math.floor(x)])


def prime_power_sum(t: PrimeTable, x, alpha: int) -> int:
    """Sum of ``p**alpha`` over primes ``p <= x``, for alpha in {0, 1}."""
    if alpha not in (0, 1):
        raise InvalidArgumentError("only alpha in {0, 1} is tabulated")
    if x > t.limit:
        raise InvalidArgumentError(f"x={x} beyond sieve limit {t.limit}")
    if x < 2:
        return 0
    arr = t.prefix_pi0 if alpha == 0 else t.prefix_pi1
    return int(arr[math.floor(x)])


def spf_sum(t: PrimeTable, n: int) -> int:
    """Sum of P1(j) for 2 <= j <= n."""
    _check_range(t, n, 2)
    return int(t.prefix_spf[n])


def factorize(t: PrimeTable, n: int) -> dict[int, int]:
    """Prime factorisation of ``n`` by walking the spf chain."""
    _check_range(t, n, 1)
    out: dict[int, int] = {}
    while n > 1:
        p = int(t.spf[n])
        out[p] = out.get(p, 0) + 1
        n //= p
    return out


def save_table(t: PrimeTable, path) -> None:
    """Write the sieve to a versioned binary cache.

    Layout: magic ``CLAB1``, limit as little-endian u64, then the packed
    primality bits, ``spf`` (int32 LE) and ``mu`` (int8).
    """
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<Q", t.limit))
        fh.write(np.packbits(t.is_prime, bitorder="little").tobytes())
        fh.write(t.spf.astype("<i4").tobytes())
        fh.write(t.mu.astype(np.int8).tobytes())


def load_table(path) -> PrimeTable:
    data = Path(path).read_bytes()
    if data[:5] != CACHE_MAGIC:
        raise InvalidArgumentError(f"{path}: not a sieve cache (bad magic)")
    if len(data) < 13:
        raise InvalidArgumentError(f"{path}: truncated header")
    (limit,) = struct.unpack_from("<Q", data, 5)
    off = 13
    nbits = (limit + 1 + 7) // 8
    if len(data) != off + nbits + 5 * (limit + 1):
        raise InvalidArgumentError(f"{path}: payload size does not match limit={limit}")
    bits = np.unpackbits(np.frombuffer(data, np.uint8, nbits, off),
                         bitorder="little")[: limit + 1].astype(bool)
    off += nbits
    spf = np.frombuffer(data, "<i4", limit + 1, off).astype(np.int32)
    off += 4 * (limit + 1)
    mu = np.frombuffer(data, np.int8, limit + 1, off).copy()
    primes = np.flatnonzero(bits).astype(np.int64)
    return _assemble(int(limit), spf, primes, mu)
