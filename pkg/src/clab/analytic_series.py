"""Riemann zeta, prime zeta, truncated Euler products and the series
``Lt(s) = sum_{n>=2} l_tilde(n) / n**s`` with certified truncation bounds.

Every evaluator that truncates an infinite sum returns a :class:`SeriesValue`
whose ``tail_bound`` is a rigorous upper bound on the omitted part plus a
floating-point rounding allowance.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from clab.coalescence import l_tilde_array
from clab.errors import (DomainError, InsufficientCutError, InvalidArgumentError,
                         PoleError, SingularProductError)
from clab.primes import PrimeTable

EM_TERMS = 10
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    tail_bound: float
    terms_used: int

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "tail_bound", float(self.tail_bound))
        object.__setattr__(self, "terms_used", int(self.terms_used))

    def to_json(self, s: complex) -> str:
        s = complex(s)
        v = complex(self.value)
        return json.dumps({"s": [s.real, s.imag], "value": [v.real, v.imag],
                           "tail_bound": self.tail_bound, "terms_used": self.terms_used})


@lru_cache(maxsize=None)
def _bernoulli_even(m: int) -> tuple[Fraction, ...]:
    """B_0, B_2, ..., B_{2m} (B_1 = -1/2 convention, unused here)."""
    b = [Fraction(1)]
    for j in range(1, 2 * m + 1):
        b.append(-sum(Fraction(math.comb(j + 1, i)) * b[i] for i in range(j)) / (j + 1))
    return tuple(b[0::2])


def _em_remainder(s: complex, n: int, m: int) -> float:
    """Bound on the Euler-Maclaurin error after ``m`` Bernoulli corrections at shift ``n``."""
    b = _bernoulli_even(m + 1)[m + 1]
    rising = 1.0
    for i in range(2 * m + 1):
        rising *= abs(s + i)
    sigma = s.real
    first_omitted = rising * abs(float(b)) / math.factorial(2 * m + 2) * n ** (-sigma - 2 * m - 1)
    return first_omitted * abs(s + 2 * m + 1) / (sigma + 2 * m + 1)


def zeta(s, target_abs_err: float = 1e-14) -> SeriesValue:
    """Riemann zeta for Re(s) > 0.05 by Euler-Maclaurin summation."""
    s = complex(s)
    if abs(s - 1) < 1e-8:
        raise PoleError(f"s={s} too close to the pole at 1")
    if s.real <= 0.05:
        raise DomainError(f"Re(s)={s.real} below the supported half-plane Re(s) > 0.05")
    target = max(target_abs_err, 1e-14)
    m = EM_TERMS
    n = max(8, int(abs(s)) + 2)
    while _em_remainder(s, n, m) > target:
        n = int(n * 1.25) + 1
    bern = _bernoulli_even(m)
    if s.imag == 0.0:
        x = s.real
        total = math.fsum(k ** -x for k in range(1, n))
        total += n ** (1 - x) / (x - 1) + 0.5 * n ** -x
        rising = x
        for j in range(1, m + 1):
            total += float(bern[j]) / math.factorial(2 * j) * rising * n ** (-x - 2 * j + 1)
            rising *= (x + 2 * j - 1) * (x + 2 * j)
        value = complex(total)
    else:
        logs = np.log(np.arange(1, n, dtype=float))
        value = complex(np.exp(-s * logs).sum())
        ns = cmath.exp(-s * math.log(n))
        value += n * ns / (s - 1) + 0.5 * ns
        rising = s
        for j in range(1, m + 1):
            value += float(bern[j]) / math.factorial(2 * j) * rising * ns * n ** (1 - 2 * j)
            rising *= (s + 2 * j - 1) * (s + 2 * j)
    return SeriesValue(value, _em_remainder(s, n, m), n)


def zeta_truncated(s, kcut: float, t: PrimeTable) -> complex:
    """Euler product over primes ``p <= kcut``."""
    s = complex(s)
    if s == 0:
        raise InvalidArgumentError("s must be nonzero")
    if kcut > t.limit:
        raise InvalidArgumentError(f"kcut={kcut} beyond sieve limit {t.limit}")
    ps = t.primes[: int(t.prefix_pi0[math.floor(kcut)])] if kcut >= 2 else t.primes[:0]
    factors = 1.0 - _neg_power(ps, s)
    # exact zeros (Re s = 0, s log p in 2 pi i Z) only surface as rounding noise
    if (np.abs(factors) <= 1e-12).any():
        raise SingularProductError(f"1 - p^-s vanishes at s={s}")
    return complex(1.0 / np.prod(factors)) if len(ps) else 1 + 0j


def prime_zeta_partial(s, kcut: float, t: PrimeTable) -> complex:
    s = complex(s)
    if kcut > t.limit:
        raise InvalidArgumentError(f"kcut={kcut} beyond sieve limit {t.limit}")
    if kcut < 2:
        return 0j
    ps = t.primes[: int(t.prefix_pi0[math.floor(kcut)])].astype(float)
    return complex(_neg_power(ps, s).sum())


def _neg_power(n: np.ndarray, s: complex) -> np.ndarray:
    """``n**-s`` elementwise; the real path avoids the complex exponential."""
    n = np.asarray(n, dtype=float)
    if s.imag == 0:
        return np.power(n, -s.real).astype(complex)
    return np.exp(-s * np.log(n))


def _zeta_minus_one_bound(x: float) -> float:
    """Upper bound for zeta(x) - 1, x > 1."""
    return 2.0 ** -x * (1 + 2 / (x - 1))


def prime_zeta(s, target_abs_err: float = 1e-12, t: PrimeTable | None = None) -> SeriesValue:
    """Prime zeta via ``sum mu(n)/n * log zeta(n s)``.

    The principal logarithm is used. It is the right branch whenever
    ``zeta(Re s) < e**pi``, which is enforced for non-real ``s``.
    """
    s = complex(s)
    sigma = s.real
    if sigma <= 1:
        raise DomainError(f"prime zeta needs Re(s) > 1, got {s}")
    if s.imag != 0:
        if abs(s.imag) > 10:
            raise DomainError("|Im(s)| > 10 not supported (logarithm branch guard)")
        if zeta(sigma).value.real >= math.exp(math.pi):
            raise DomainError(f"Re(s)={sigma} too close to 1 for the principal logarithm")
    target = max(target_abs_err, 1e-14)

    def tail_after(nn):
        x = (nn + 1) * sigma
        return (1 + 2 / (x - 1)) / (nn + 1) * 2.0 ** -x / (1 - 2.0 ** -sigma)

    nterms = 1
    while tail_after(nterms) > target / 2:
        nterms += 1
    if t is None or t.limit < nterms:
        from clab.primes import build_prime_table
        t = build_prime_table(max(nterms, 2))
    per_term = target / (2 * nterms)
    total = 0j
    err = tail_after(nterms)
    for k in range(1, nterms + 1):
        mu = int(t.mu[k])
        if mu == 0:
            continue
        w = k * s
        z = zeta(w, per_term / 4)
        # |zeta(w)| >= zeta(2 Re w) / zeta(Re w) on Re(w) > 1
        xr = w.real
        lower = 1.0 / (1 + _zeta_minus_one_bound(xr))
        u = z.tail_bound / lower
        total += mu / k * cmath.log(z.value)
        err += (u / (1 - u) + 8 * _EPS) / k
    return SeriesValue(total, err, nterms)


def l_tilde_direct(s, ncut: int, t: PrimeTable) -> SeriesValue:
    """Partial sum up to ``ncut``; tail bounded via ``l_tilde(n) <= n - 1``."""
    s = complex(s)
    sigma = s.real
    if sigma <= 2:
        raise DomainError(f"direct series diverges for Re(s) <= 2, got {s}")
    if ncut > t.limit or ncut < 2:
        raise InvalidArgumentError(f"ncut={ncut} outside [2, {t.limit}]")
    lt = l_tilde_array(t, ncut)[2:].astype(float)
    terms = lt * _neg_power(np.arange(2, ncut + 1), s)
    value = complex(terms.sum())
    tail = ncut ** (2 - sigma) / (sigma - 2)
    rounding = 8 * _EPS * math.log2(ncut + 1) * float(np.abs(terms).sum())
    return SeriesValue(value, tail + rounding, ncut - 1)


def l_tilde_prime_series(s, pcut: float, t: PrimeTable) -> SeriesValue:
    """``sum_{p <= pcut} (p-1)/p**s * (2 zeta(s)/zeta(s, p-1) - 1)``."""
    s = complex(s)
    sigma = s.real
    if sigma <= 2:
        raise DomainError(f"prime-indexed series needs Re(s) > 2, got {s}")
    if pcut > t.limit or pcut < 2:
        raise InvalidArgumentError(f"pcut={pcut} outside [2, {t.limit}]")
    big_p = math.floor(pcut)
    ps = t.primes[: int(t.prefix_pi0[big_p])].astype(float)
    p_s = _neg_power(ps, s)
    inv_trunc = np.concatenate(([1.0 + 0j], np.cumprod(1.0 - p_s)[:-1]))
    z = zeta(s, 1e-14)
    weights = (ps - 1) * p_s
    terms = weights * (2 * z.value * inv_trunc - 1)
    value = complex(terms.sum())
    factor = 1 + 2 * (big_p ** -sigma + big_p ** (1 - sigma) / (sigma - 1))
    tail = factor * big_p ** (2 - sigma) / (sigma - 2)
    # zeta error propagates through every term; |1/zeta(s, p-1)| <= zeta(sigma)
    zeta_err = 2 * z.tail_bound * (1 + _zeta_minus_one_bound(sigma)) * float(np.abs(weights).sum())
    rounding = 8 * _EPS * (len(ps) + 1) * float(np.abs(terms).sum())
    return SeriesValue(value, tail + zeta_err + rounding, len(ps))


def l_tilde_accelerated(s, ncut: int, t: PrimeTable) -> SeriesValue:
    """``zeta_P(s-1) - zeta_P(s) + 2 * sum_{composite n} (P1(n)-1)/n**s``.

    The prime part is summed in closed form; the composite part is summed to
    ``ncut`` with tail bounded through ``P1(n) <= sqrt(n)``. Usable close to
    the singularity at s = 2 where the direct series converges too slowly.
    """
    s = complex(s)
    sigma = s.real
    if sigma <= 2:
        raise DomainError(f"needs Re(s) > 2, got {s}")
    if ncut > t.limit or ncut < 4:
        raise InvalidArgumentError(f"ncut={ncut} outside [4, {t.limit}]")
    pz1 = prime_zeta(s - 1, 1e-12, t)
    pz0 = prime_zeta(s, 1e-12, t)
    n = np.arange(ncut + 1, dtype=float)
    comp = ~t.is_prime[: ncut + 1]
    comp[:2] = False
    w = t.spf[: ncut + 1][comp].astype(float) - 1
    terms = w * _neg_power(n[comp], s)
    csum = complex(terms.sum())
    tail = 2 * ncut ** (1.5 - sigma) / (sigma - 1.5)
    rounding = 16 * _EPS * math.log2(ncut + 1) * float(np.abs(terms).sum())
    value = pz1.value - pz0.value + 2 * csum
    return SeriesValue(value, pz1.tail_bound + pz0.tail_bound + tail + rounding, ncut)


def duality_check(s, cut: int, t: PrimeTable) -> float:
    """``|sum_{n<=cut} (l(n) + l_tilde(n))/n**s - (zeta(s-1) - zeta(s))|``.

    ``l(n)`` counts the coalescing k. Since ``l + l_tilde = n - 1`` the full
    series is ``zeta(s-1) - zeta(s)``.
    """
    s = complex(s)
    if s.real <= 2:
        raise DomainError(f"needs Re(s) > 2, got {s}")
    if cut > t.limit or cut < 2:
        raise InvalidArgumentError(f"cut={cut} outside [2, {t.limit}]")
    n = np.arange(2, cut + 1, dtype=np.int64)
    lt = l_tilde_array(t, cut)[2:]
    spf = t.spf[2: cut + 1].astype(np.int64)
    l_coal = np.maximum(n - 2 * spf + 1, 0)
    total = (l_coal + lt).astype(float) * _neg_power(n, s)
    target = zeta(s - 1).value - zeta(s).value
    return abs(complex(total.sum()) - target)


@dataclass(frozen=True)
class ProbePoint:
    eps: float
    deviation: float
    value: float
    tail_bound: float

    def __iter__(self):
        return iter((self.eps, self.deviation))


def singularity_probe(epsilons, ncut: int, t: PrimeTable,
                      method: str = "accelerated") -> list[ProbePoint]:
    """``|Lt(2 + eps) - log(1/eps)|`` along a ladder of eps values.

    Raises :class:`InsufficientCutError` when the certified tail at some eps
    exceeds 10% of ``log(1/eps)``.
    """
    evaluator = {"accelerated": l_tilde_accelerated, "direct": l_tilde_direct}[method]
    out = []
    for eps in epsilons:
        eps = float(eps)
        if not 0.01 <= eps < 1:
            raise InvalidArgumentError(f"eps={eps} outside [0.01, 1)")
        sv = evaluator(2 + eps, ncut, t)
        ref = math.log(1 / eps)
        if sv.tail_bound > 0.1 * ref:
            raise InsufficientCutError(
                f"tail bound {sv.tail_bound:.3g} at eps={eps} exceeds 10% of log(1/eps)={ref:.3g}; "
                f"increase ncut beyond {ncut}")
        out.append(ProbePoint(eps, abs(sv.value.real - ref), sv.value.real, float(sv.tail_bound)))
    return out
