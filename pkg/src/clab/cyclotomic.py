"""Exact arithmetic for sums of n-th roots of unity.

A sum of distinct powers of ``zeta_n = exp(2*pi*i/n)`` is represented by its
coordinate vector in ``Z[x] / Phi_n(x)`` on the basis ``1, x, ..., x**(phi-1)``.
Two sums are equal as complex numbers exactly when these vectors coincide.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from clab._backend import kernels
from clab.errors import InvalidArgumentError, ResourceLimitError
from clab.primes import PrimeTable, factorize

MAX_MODULUS = 64
_HASH_SEED = 0x5EED_C10C


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (coefficients lowest first, ``den`` monic)."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dd]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("division left a remainder")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@dataclass(frozen=True, eq=False)
class CyclotomicReducer:
    """Reduction table of ``x**j mod Phi_n`` for ``0 <= j < n``.

    ``rows[j]`` is the coordinate vector of ``x**j``; for ``j < phi_n`` it is a
    unit vector.
    """

    n: int
    phi_n: int
    poly: tuple[int, ...]
    rows: np.ndarray
    row_hash: np.ndarray = field(repr=False)

    @property
    def reduction_rows(self) -> np.ndarray:
        return self.rows[self.phi_n:]


@dataclass(frozen=True)
class RootSum:
    n: int
    exponents: tuple[int, ...]
    reduced: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.reduced)

    def complex_value(self) -> complex:
        return sum(cmath.exp(2j * math.pi * e / self.n) for e in self.exponents)


def build_reducer(n: int) -> CyclotomicReducer:
    if n < 2 or n > MAX_MODULUS:
        raise ResourceLimitError(f"modulus {n} outside [2, {MAX_MODULUS}]")
    poly = cyclotomic_poly(n)
    phi = len(poly) - 1
    rows = np.zeros((n, phi), dtype=np.int64)
    cur = [0] * phi
    cur[0] = 1
    for j in range(n):
        rows[j] = cur
        # multiply by x, then fold the degree-phi coefficient back using Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, poly[:phi])]
    rng = np.random.default_rng(_HASH_SEED + n)
    coeffs = rng.integers(0, 2**64, size=phi, dtype=np.uint64, endpoint=False)
    row_hash = (rows.astype(np.uint64) * coeffs).sum(axis=1, dtype=np.uint64)
    rows.setflags(write=False)
    row_hash.setflags(write=False)
    return CyclotomicReducer(n, phi, poly, rows, row_hash)


def root_sum(r: CyclotomicReducer, exponents) -> RootSum:
    exps = sorted(int(e) for e in exponents)
    if len(set(exps)) != len(exps):
        raise InvalidArgumentError("exponents must be distinct")
    if exps and (exps[0] < 0 or exps[-1] >= r.n):
        raise InvalidArgumentError(f"exponents must lie in [0, {r.n})")
    vec = r.rows[exps].sum(axis=0) if exps else np.zeros(r.phi_n, dtype=np.int64)
    return RootSum(r.n, tuple(exps), tuple(int(v) for v in vec))


def root_sum_from_mask(r: CyclotomicReducer, mask: int) -> RootSum:
    return root_sum(r, [e for e in range(r.n) if mask >> e & 1])


def sums_equal(a: RootSum, b: RootSum) -> bool:
    if a.n != b.n:
        raise InvalidArgumentError(f"moduli differ: {a.n} vs {b.n}")
    return a.reduced == b.reduced


def rotate(r: CyclotomicReducer, s: RootSum, shift: int = 1) -> RootSum:
    """Multiply the sum by ``zeta_n**shift``."""
    return root_sum(r, [(e + shift) % r.n for e in s.exponents])


def numerical_semigroup_members(generators, bound: int) -> np.ndarray:
    """Boolean array ``m[v]``: is ``v`` a non-negative combination of ``generators``."""
    reach = np.zeros(bound + 1, dtype=bool)
    reach[0] = True
    gens = sorted(set(int(g) for g in generators))
    for v in range(1, bound + 1):
        for g in gens:
            if g > v:
                break
            if reach[v - g]:
                reach[v] = True
                break
    return reach


def is_k_balancing(t: PrimeTable, n: int, k: int) -> bool:
    """Whether some k distinct n-th roots of unity sum to zero.

    Decided by membership of both ``k`` and ``n - k`` in the numerical
    semigroup generated by the primes dividing ``n``.
    """
    if n < 2:
        raise InvalidArgumentError(f"n must be >= 2, got {n}")
    if not 0 <= k <= n:
        raise InvalidArgumentError(f"k={k} outside [0, {n}]")
    reach = numerical_semigroup_members(factorize(t, n), n)
    return bool(reach[k] and reach[n - k])


def has_vanishing_subset(r: CyclotomicReducer, k: int):
    """Exhaustive search for a k-subset with zero sum; returns the subset or None."""
    if not 0 <= k <= r.n:
        raise InvalidArgumentError(f"k={k} outside [0, {r.n}]")
    found, mask = kernels.find_vanishing(r.rows, r.row_hash, k)
    if not found:
        return None
    return tuple(e for e in range(r.n) if mask >> e & 1)
