"""Small quantum cohomology of G(k, n) in the wedge model.

H(G(k, n)) is identified with the k-th exterior power of H(P^{n-1}); the
basis state ``(i_1 < ... < i_k)`` stands for ``s^{i_1} ^ ... ^ s^{i_k}`` with
``s`` the hyperplane class. Quantum multiplication by the power-sum class
``p_l`` acts as a derivation: it raises one exponent at a time by ``l``, and
an exponent reaching ``n`` wraps around with the factor ``(-1)**(k-1) * q``.
"""
from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from clab.errors import InvalidArgumentError, ResourceLimitError

DEFAULT_EIGEN_GUARD = 3000


@dataclass(frozen=True, eq=False)
class WedgeBasis:
    n: int
    k: int
    states: tuple[tuple[int, ...], ...]
    index: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)


@dataclass(frozen=True, eq=False)
class WedgeOperator:
    basis: WedgeBasis
    q: complex
    entries: tuple[tuple[int, int, complex], ...]

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.basis.dim, self.basis.dim), dtype=complex)
        for row, col, c in self.entries:
            a[row, col] += c
        return a

    def trace(self) -> complex:
        return sum((c for r, col, c in self.entries if r == col), 0j)


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    max_residual: float


@dataclass(frozen=True)
class MatchReport:
    max_distance: float
    tolerance: float
    pairs: list = field(repr=False)


def wedge_basis(n: int, k: int) -> WedgeBasis:
    if n < 2 or not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")
    states = tuple(itertools.combinations(range(n), k))
    return WedgeBasis(n, k, states, {s: i for i, s in enumerate(states)})


def _sort_sign(seq):
    """Sign of the permutation sorting ``seq``, or 0 if it has a repeat."""
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def p_ell_operator(b: WedgeBasis, ell: int, q: complex) -> WedgeOperator:
    n, k = b.n, b.k
    if not 1 <= ell <= n - 1:
        raise InvalidArgumentError(f"ell={ell} outside [1, {n - 1}]")
    qt = (-1) ** (k - 1) * complex(q)
    acc: dict[tuple[int, int], complex] = {}
    for col, state in enumerate(b.states):
        for j in range(k):
            e = state[j] + ell
            coef = 1 + 0j
            if e >= n:
                e -= n
                coef = qt
            new = state[:j] + (e,) + state[j + 1:]
            sign = _sort_sign(new)
            if sign == 0 or coef == 0:
                continue
            row = b.index[tuple(sorted(new))]
            acc[row, col] = acc.get((row, col), 0) + sign * coef
    entries = tuple((r, c, v) for (r, c), v in sorted(acc.items()) if v != 0)
    return WedgeOperator(b, complex(q), entries)


def projective_coordinates(n: int, t: float, k_parity: int) -> list[complex]:
    """Canonical coordinates of P^{n-1} at the shifted point ``t + (k-1)*pi*i``."""
    if n < 2:
        raise InvalidArgumentError("n must be >= 2")
    scale = n * cmath.exp((t + (k_parity - 1) * math.pi * 1j) / n)
    return [scale * cmath.exp(2j * math.pi * h / n) for h in range(n)]


def grassmannian_coordinates_closed(n: int, k: int, t: float = 0.0) -> np.ndarray:
    """All ``C(n, k)`` sums of k distinct projective coordinates, with multiplicity."""
    if not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"k={k} outside [1, {n - 1}]")
    scale = n * cmath.exp((t + (k - 1) * math.pi * 1j) / n)
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    idx = np.array(list(itertools.combinations(range(n), k)))
    return scale * roots[idx].sum(axis=1)


def c1_spectrum(b: WedgeBasis, q: complex = 1.0, tol: float = 1e-8,
                guard: int = DEFAULT_EIGEN_GUARD) -> SpectrumResult:
    """Eigenvalues of quantum multiplication by c1 = n * sigma_1."""
    if b.dim > guard:
        raise ResourceLimitError(f"dimension {b.dim} exceeds eigensolver guard {guard}")
    a = b.n * p_ell_operator(b, 1, q).to_dense()
    w, v = np.linalg.eig(a)
    norm_a = np.linalg.norm(a, 2) or 1.0
    res = np.linalg.norm(a @ v - v * w, axis=0) / (norm_a * np.linalg.norm(v, axis=0))
    max_res = float(res.max()) if res.size else 0.0
    if max_res > tol:
        raise ArithmeticError(f"eigen residual {max_res:.3g} above tolerance {tol:.3g}")
    return SpectrumResult(w, max_res)


def greedy_match(a, b):
    """Pair two equal-size multisets by repeatedly taking the closest unused pair."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise InvalidArgumentError("multisets differ in size")
    d = np.abs(a[:, None] - b[None, :])
    order = np.argsort(d, axis=None, kind="stable")
    used_a = np.zeros(len(a), bool)
    used_b = np.zeros(len(b), bool)
    pairs = []
    for flat in order:
        i, j = divmod(int(flat), len(b))
        if used_a[i] or used_b[j]:
            continue
        used_a[i] = used_b[j] = True
        pairs.append((i, j, float(d[i, j])))
        if len(pairs) == len(a):
            break
    return pairs


def spectrum_matches_closed(n: int, k: int, tol: float = 1e-8):
    """Compare the c1 spectrum at q=1 against the closed-form coordinates at t=0.

    Returns ``(ok, MatchReport)``; ``ok`` iff every matched distance is at most ``tol*n``.
    """
    eig = c1_spectrum(wedge_basis(n, k), 1.0)
    closed = grassmannian_coordinates_closed(n, k, 0.0)
    pairs = greedy_match(eig.eigenvalues, closed)
    worst = max(p[2] for p in pairs)
    return worst <= tol * n, MatchReport(worst, tol * n, pairs)


def has_repeated_value(values, rel_tol: float, scale: float) -> bool:
    """True if two entries of ``values`` lie within ``rel_tol * scale`` of each other."""
    v = np.asarray(values, dtype=complex)
    d = np.abs(v[:, None] - v[None, :])
    np.fill_diagonal(d, np.inf)
    return bool((d <= rel_tol * scale).any())


def _chop(x: float, eps: float) -> float:
    return 0.0 if abs(x) < eps else float(x)


def spectrum_json(n: int, k: int, q: complex, result: SpectrumResult) -> str:
    eps = 1e-12 * n
    vals = sorted(result.eigenvalues, key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    return json.dumps({
        "n": n, "k": k, "q_re": complex(q).real, "q_im": complex(q).imag,
        "eigenvalues": [[_chop(z.real, eps), _chop(z.imag, eps)] for z in vals],
        "max_residual": result.max_residual,
    })

