"""Which Grassmannians G(k, n) have coalescing canonical coordinates.

The closed form: G(k, n) coalesces exactly when ``P1(n) <= k <= n - P1(n)``,
with ``P1`` the smallest prime factor. :func:`is_coalescing_oracle` decides
the same question without that formula, by exact search for two k-subsets of
n-th roots of unity with equal sums.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from math import comb

import numpy as np

from clab._backend import kernels
from clab.cyclotomic import CyclotomicReducer, build_reducer
from clab.errors import InvalidArgumentError, ResourceLimitError
from clab.primes import PrimeTable

DEFAULT_ORACLE_GUARD = 2 * 10**7


@dataclass(frozen=True)
class CoalescenceRecord:
    n: int
    p1: int
    coalescing_interval: tuple[int, int] | None
    l_tilde: int
    nc_set: tuple[int, ...]


def _check_n(t: PrimeTable, n: int):
    if n < 2 or n > t.limit:
        raise InvalidArgumentError(f"n={n} outside [2, {t.limit}]")


def is_coalescing(t: PrimeTable, k: int, n: int) -> bool:
    _check_n(t, n)
    if not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"k={k} outside [1, {n - 1}]")
    p = int(t.spf[n])
    return p <= k <= n - p


def find_coalescing_pair(r: CyclotomicReducer, k: int,
                         guard: int = DEFAULT_ORACLE_GUARD):
    """Two distinct k-subsets of exponents with equal root sums, or None."""
    n = r.n
    if not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"k={k} outside [1, {n - 1}]")
    count = comb(n, k)
    if count > guard:
        raise ResourceLimitError(
            f"C({n},{k}) = {count} subsets exceeds the enumeration guard {guard}")
    found, a, b = kernels.find_collision(r.rows, r.row_hash, k)
    if not found:
        return None
    unpack = lambda m: tuple(e for e in range(n) if m >> e & 1)  # noqa: E731
    return unpack(a), unpack(b)


def is_coalescing_oracle(r: CyclotomicReducer, k: int, n: int | None = None,
                         guard: int = DEFAULT_ORACLE_GUARD) -> bool:
    if n is not None and n != r.n:
        raise InvalidArgumentError(f"reducer is for n={r.n}, not {n}")
    return find_coalescing_pair(r, k, guard) is not None


def l_tilde(t: PrimeTable, n: int) -> int:
    _check_n(t, n)
    p = int(t.spf[n])
    return n - 1 if p == n else 2 * (p - 1)


def l_tilde_array(t: PrimeTable, n_max: int | None = None) -> np.ndarray:
    """``out[n]`` = number of non-coalescing k for G(k, n); zero for n < 2."""
    n_max = t.limit if n_max is None else n_max
    _check_n(t, n_max)
    n = np.arange(n_max + 1, dtype=np.int64)
    spf = t.spf[: n_max + 1].astype(np.int64)
    out = np.where(t.is_prime[: n_max + 1], n - 1, 2 * (spf - 1))
    out[:2] = 0
    return out


def coalescence_record(t: PrimeTable, n: int) -> CoalescenceRecord:
    _check_n(t, n)
    p = int(t.spf[n])
    if p <= n - p:
        interval = (p, n - p)
        nc = tuple(range(1, p)) + tuple(range(n - p + 1, n))
    else:
        interval = None
        nc = tuple(range(1, n))
    return CoalescenceRecord(n, p, interval, len(nc), nc)


def nc_partial_sum(t: PrimeTable, n: int) -> int:
    """Sum of l_tilde(k) for 2 <= k <= n, from the prefix tables."""
    _check_n(t, n)
    return (2 * (1 - n) + int(t.prefix_pi0[n]) - int(t.prefix_pi1[n])
            + 2 * int(t.prefix_spf[n]))


def rareness_ratio(t: PrimeTable, n: int) -> float:
    if n < 3:
        raise InvalidArgumentError("rareness ratio needs n >= 3")
    return nc_partial_sum(t, n) / (n * n / (2.0 * math.log(n)))


def composite_l_tilde_sum(t: PrimeTable, n: int) -> int:
    """Sum of l_tilde(k) over composite k <= n."""
    _check_n(t, n)
    pi0 = int(t.prefix_pi0[n])
    composites = n - 1 - pi0
    return 2 * (int(t.prefix_spf[n]) - int(t.prefix_pi1[n])) - 2 * composites


def sigma_bar_estimate(t: PrimeTable, n: int) -> float:
    if n < 4:
        raise InvalidArgumentError("needs n >= 4 (first composite)")
    return math.log(composite_l_tilde_sum(t, n)) / math.log(n)


def triangle_map(t: PrimeTable, n_max: int) -> list[tuple[bool, ...]]:
    """Coalescence flags for every G(k, n), ``2 <= n <= n_max``, ``1 <= k < n``.

    Row ``n - 2`` holds the flags for k = 1..n-1; True means coalescing.
    """
    if n_max < 2:
        raise InvalidArgumentError("n_max must be >= 2")
    _check_n(t, n_max)
    rows = []
    for n in range(2, n_max + 1):
        p = int(t.spf[n])
        rows.append(tuple(p <= k <= n - p for k in range(1, n)))
    return rows


def triangle_csv(rows, out=None) -> str:
    """CSV with header ``n,k,coalescing``; returns the text if ``out`` is None."""
    buf = io.StringIO() if out is None else out
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "coalescing"])
    for i, row in enumerate(rows):
        n = i + 2
        for k, flag in enumerate(row, start=1):
            w.writerow([n, k, int(flag)])
    return buf.getvalue() if out is None else ""


def oracle_sweep(t: PrimeTable, n_max: int, guard: int = DEFAULT_ORACLE_GUARD):
    """Yield ``(n, k, closed, oracle)`` for all 2 <= n <= n_max, 1 <= k < n."""
    for n in range(2, n_max + 1):
        r = build_reducer(n)
        for k in range(1, n):
            yield n, k, is_coalescing(t, k, n), is_coalescing_oracle(r, k, guard=guard)
