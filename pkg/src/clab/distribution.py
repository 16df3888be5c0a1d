"""Counting rough numbers and the non-coalescing counting functions.

``Phi(x, y)`` counts ``2 <= n <= x`` with every prime factor above ``y``;
``H(x, y)`` counts ``2 <= n <= x`` with more than ``y`` non-coalescing k.
Since ``l_tilde(p) = p - 1`` and ``l_tilde(n) = 2(P1(n) - 1)`` otherwise,

    H(x, y) = Phi(x, y/2 + 1) - pi(min(y + 1, x)) + pi(y/2 + 1).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from clab.coalescence import l_tilde_array
from clab.errors import InvalidArgumentError, TableRangeError
from clab.primes import PrimeTable, prime_pi

EULER_GAMMA = 0.5772156649015329
DIRECT_CHECK_LIMIT = 10**5


def _check_x(t: PrimeTable, x, lo=2):
    if x < lo:
        raise InvalidArgumentError(f"x={x} below {lo}")
    if x > t.limit:
        raise InvalidArgumentError(f"x={x} beyond sieve limit {t.limit}")


class _Legendre:
    """Legendre's phi(v, a) with a per-``v`` list of already computed ``a``."""

    def __init__(self, t: PrimeTable):
        self.t = t
        self.memo: dict[int, list[int]] = {}

    def phi(self, v: int, a: int) -> int:
        # integers in [1, v] free of the first a primes
        if a == 0 or v < 2:
            return v
        p = self.t.primes
        if p[a - 1] * p[a - 1] >= v:
            return 1 + max(int(self.t.prefix_pi0[v]) - a, 0)
        row = self.memo.setdefault(v, [v])
        while len(row) <= a:
            b = len(row)
            row.append(row[b - 1] - self.phi(v // int(p[b - 1]), b - 1))
        return row[a]


_legendre_cache: dict[int, _Legendre] = {}


def _legendre(t: PrimeTable) -> _Legendre:
    key = id(t)
    leg = _legendre_cache.get(key)
    if leg is None or leg.t is not t:
        leg = _legendre_cache[key] = _Legendre(t)
    return leg


def rough_count_direct(t: PrimeTable, x, y) -> int:
    _check_x(t, x)
    xi = math.floor(x)
    return int(np.count_nonzero(t.spf[2: xi + 1] > y))


def rough_count(t: PrimeTable, x, y, verify: bool = False) -> int:
    """Phi(x, y) by Legendre's recursion.

    With ``verify=True`` and ``x <= 10**5`` the result is also checked against
    a direct scan of the smallest-prime-factor table.
    """
    _check_x(t, x)
    if y <= 0:
        raise InvalidArgumentError(f"y must be positive, got {y}")
    xi = math.floor(x)
    a = prime_pi(t, min(y, xi))
    out = _legendre(t).phi(xi, a) - 1
    if verify and xi <= DIRECT_CHECK_LIMIT:
        direct = rough_count_direct(t, xi, y)
        if direct != out:
            raise ArithmeticError(f"Phi({x},{y}): recursion {out} != scan {direct}")
    return out


def rough_count_table(t: PrimeTable, x_max: int, y) -> np.ndarray:
    """``out[x] = Phi(x, y)`` for every ``0 <= x <= x_max``."""
    _check_x(t, x_max)
    flags = t.spf[: x_max + 1] > y
    flags[:2] = False
    return np.cumsum(flags, dtype=np.int64)


def _check_xy(t, x, y):
    _check_x(t, x)
    if y < 2 or y > x:
        raise InvalidArgumentError(f"need 2 <= y <= x, got x={x}, y={y}")


def h_count_direct(t: PrimeTable, x, y) -> int:
    _check_xy(t, x, y)
    xi = math.floor(x)
    return int(np.count_nonzero(l_tilde_array(t, xi)[2:] > y))


def h_count_direct_many(t: PrimeTable, x, ys) -> list[int]:
    """``[H(x, y) for y in ys]`` with a single scan."""
    _check_x(t, x)
    xi = math.floor(x)
    ordered = np.sort(l_tilde_array(t, xi)[2:])
    out = []
    for y in ys:
        _check_xy(t, x, y)
        out.append(int(len(ordered) - np.searchsorted(ordered, y, side="right")))
    return out


def h_count_table(t: PrimeTable, x_max: int, y) -> np.ndarray:
    """``out[x] = H(x, y)`` for every ``0 <= x <= x_max`` by one scan."""
    _check_x(t, x_max)
    return np.cumsum(l_tilde_array(t, x_max) > y, dtype=np.int64)


def h_count_identity(t: PrimeTable, x, y) -> int:
    _check_xy(t, x, y)
    z = y / 2 + 1
    return rough_count(t, x, z) - prime_pi(t, min(y + 1, x)) + prime_pi(t, z)


def h_hat(t: PrimeTable, x) -> int:
    """H(x, 2 sqrt(x))."""
    if x < 4:
        raise InvalidArgumentError(f"x={x} below 4")
    return h_count_direct(t, x, 2 * math.sqrt(x))


def h_hat_intro(t: PrimeTable, x) -> int:
    """Count of n <= x with G(k, n) non-coalescing for every k <= [sqrt x] + 1.

    Every composite n <= x has a coalescing k = P1(n) in that range, so this
    is pi(x); it exceeds :func:`h_hat` by pi(min(2 sqrt(x) + 1, x)).
    """
    _check_x(t, x, 4)
    xi = math.floor(x)
    kmax = math.isqrt(xi) + 1
    n = np.arange(2, xi + 1)
    p = t.spf[2: xi + 1]
    # non-coalescing for k = 1..min(kmax, n-1) iff that range avoids [p, n-p]
    top = np.minimum(kmax, n - 1)
    ok = (p > n - p) | (top < p)
    return int(np.count_nonzero(ok))


def li(x, target_abs_err: float = 1e-9) -> float:
    """Logarithmic integral (principal value) by the series in ``log x``."""
    if x <= 1:
        raise InvalidArgumentError(f"li needs x > 1, got {x}")
    lx = math.log(x)
    terms = []
    term = 1.0
    k = 1
    # all terms are positive; past k > log x they shrink geometrically
    while True:
        term *= lx / k
        terms.append(term / k)
        if k > 2 * lx and terms[-1] < 1e-18 * sum(terms[-50:]):
            break
        k += 1
    return EULER_GAMMA + math.log(lx) + math.fsum(terms)


@dataclass(frozen=True, eq=False)
class BuchstabTable:
    step: float
    u_max: float
    u: np.ndarray
    values: np.ndarray
    slopes: np.ndarray

    def __call__(self, u: float) -> float:
        return buchstab_omega(self, u)


def _hermite(x0, h, y0, y1, d0, d1, s):
    """Cubic Hermite on ``[x0, x0 + h]`` at fractional position ``s``."""
    s2 = s * s
    s3 = s2 * s
    return ((2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0
            + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1)


def build_buchstab_table(step: float = 1e-3, u_max: float = 20.0) -> BuchstabTable:
    """Integrate ``(u w(u))' = w(u - 1)`` from ``w = 1/u`` on [1, 2] by RK4.

    ``step`` must divide 1 so that grid points land on the integers, where
    the derivative of w is discontinuous.
    """
    per_unit = round(1 / step)
    if per_unit < 4 or abs(per_unit * step - 1) > 1e-12:
        raise InvalidArgumentError(f"step={step} must be 1/m for an integer m >= 4")
    if u_max < 2:
        raise InvalidArgumentError("u_max must be >= 2")
    h = 1.0 / per_unit
    m = per_unit
    total = math.ceil((u_max - 1) * m)
    u = 1 + np.arange(total + 1) * h
    w = np.empty(total + 1)
    d = np.empty(total + 1)
    w[: m + 1] = 1 / u[: m + 1]
    d[: m + 1] = -1 / u[: m + 1] ** 2
    # right-sided slope at u = 2 follows the delay equation
    d[m] = (w[0] - w[m]) / u[m]
    for i in range(m, total):
        j = i - m  # u[i] - 1 == u[j]
        lag0 = w[j]
        lag1 = w[j + 1]
        if u[j] < 2 - 0.5 * h:
            mid = 1 / (u[j] + 0.5 * h)
        else:
            mid = _hermite(u[j], h, w[j], w[j + 1], d[j], d[j + 1], 0.5)
        v = u[i] * w[i] + h / 6 * (lag0 + 4 * mid + lag1)
        w[i + 1] = v / u[i + 1]
        d[i + 1] = (w[j + 1] - w[i + 1]) / u[i + 1]
    for arr in (u, w, d):
        arr.setflags(write=False)
    return BuchstabTable(h, float(u[-1]), u, w, d)


def buchstab_omega(tbl: BuchstabTable, u: float) -> float:
    if u < 1 or u > tbl.u_max:
        raise InvalidArgumentError(f"u={u} outside [1, {tbl.u_max}]")
    if u <= 2:
        return 1 / u
    pos = (u - 1) / tbl.step
    i = min(int(pos), len(tbl.u) - 2)
    s = pos - i
    if s == 0.0:
        return float(tbl.values[i])
    return float(_hermite(tbl.u[i], tbl.step, tbl.values[i], tbl.values[i + 1],
                          tbl.slopes[i], tbl.slopes[i + 1], s))


@dataclass(frozen=True)
class GaugeResult:
    observed: int
    predicted: float
    rel_err: float

    def __iter__(self):
        return iter((self.observed, self.predicted, self.rel_err))


def mertens_product(t: PrimeTable, z) -> float:
    """``prod_{p <= z} (1 - 1/p)^{-1}``."""
    if z > t.limit:
        raise InvalidArgumentError(f"z={z} beyond sieve limit {t.limit}")
    ps = t.primes[: prime_pi(t, z)].astype(float)
    return float(1 / np.prod(1 - 1 / ps)) if len(ps) else 1.0


def debruijn_gauge(t: PrimeTable, tbl: BuchstabTable, x, y) -> GaugeResult:
    """Compare H(x, y) with its Buchstab-function prediction.

    Only meaningful for ``x / y >= 10``; smaller ratios raise.
    """
    _check_xy(t, x, y)
    if y < 4:
        raise InvalidArgumentError(f"y={y} below 4")
    if x < 10 * y:
        raise InvalidArgumentError(f"x/y = {x / y:.3g} below 10: gauge not meaningful")
    z = y / 2 + 1
    arg = math.log(x) / math.log(z)
    if arg > tbl.u_max:
        raise TableRangeError(f"omega argument {arg:.4g} beyond table range {tbl.u_max}")
    observed = h_count_direct(t, x, y)
    predicted = (x / mertens_product(t, z) * math.exp(EULER_GAMMA) * buchstab_omega(tbl, arg)
                 - (prime_pi(t, min(y + 1, x)) - prime_pi(t, z)))
    rel = abs(observed - predicted) / observed if observed else math.inf
    return GaugeResult(observed, predicted, rel)


@dataclass(frozen=True)
class EnvelopeResult:
    h_hat: int
    li: float
    diff: float
    normalized: float

    def __iter__(self):
        return iter((self.diff, self.normalized))


def rh_envelope(t: PrimeTable, x, theta: float = 0.5) -> EnvelopeResult:
    if x < 1000:
        raise InvalidArgumentError(f"x={x} below 1000")
    if not 0.5 <= theta <= 1:
        raise InvalidArgumentError(f"theta={theta} outside [0.5, 1]")
    hh = h_hat(t, x)
    lv = li(x)
    diff = hh - lv
    return EnvelopeResult(hh, lv, diff, abs(diff) / (x ** theta * math.log(x)))


def h_rows_csv(rows, out=None) -> str:
    """Rows ``(x, y, H_direct, H_identity)`` as CSV."""
    buf = io.StringIO() if out is None else out
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "H_direct", "H_identity"])
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue() if out is None else ""


def envelope_rows_csv(rows, out=None) -> str:
    """Rows ``(x, H_hat, li, diff, normalized)`` as CSV."""
    buf = io.StringIO() if out is None else out
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "H_hat", "li", "diff", "normalized"])
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue() if out is None else ""


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    return str(int(v)) if v.is_integer() and abs(v) < 2**53 else repr(v)
