import numpy as np
import pytest
from hypothesis import given, strategies as st

from clab.errors import InvalidArgumentError, ResourceLimitError
from clab.primes import (build_prime_table, factorize, load_table, mobius, prime_pi,
                         prime_power_sum, save_table, smallest_prime_factor, spf_sum)


def trial_spf(n):
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def trial_mu(n):
    out, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    return -out if n > 1 else out


def test_spf_and_mu_match_trial_division(t_small):
    for n in range(2, 3000):
        assert t_small.spf[n] == trial_spf(n)
        assert t_small.mu[n] == trial_mu(n)
    assert t_small.mu[1] == 1


def test_prime_counts(t_small):
    assert prime_pi(t_small, 100) == 25
    assert prime_pi(t_small, 10**4) == 1229
    assert prime_pi(t_small, 1.9) == 0
    assert prime_pi(t_small, 10.5) == 4
    assert prime_power_sum(t_small, 10, 1) == 17
    assert prime_power_sum(t_small, 10, 0) == 4


def test_spf_sum(t_small):
    assert spf_sum(t_small, 10) == 2 + 3 + 2 + 5 + 2 + 7 + 2 + 3 + 2
    assert spf_sum(t_small, 2) == 2


def test_primes_array_consistent(t_small):
    assert np.array_equal(np.flatnonzero(t_small.is_prime), t_small.primes)
    assert np.all(t_small.spf[t_small.primes] == t_small.primes)


def test_tables_are_read_only(t_small):
    with pytest.raises(ValueError):
        t_small.spf[5] = 1


def test_guards():
    with pytest.raises(InvalidArgumentError):
        build_prime_table(1)
    with pytest.raises(ResourceLimitError):
        build_prime_table(10**8 + 1)


def test_range_errors(t_small):
    with pytest.raises(InvalidArgumentError):
        smallest_prime_factor(t_small, 1)
    with pytest.raises(InvalidArgumentError):
        mobius(t_small, 10**4 + 1)
    with pytest.raises(InvalidArgumentError):
        prime_pi(t_small, 10**5)
    with pytest.raises(InvalidArgumentError):
        prime_power_sum(t_small, 10, 2)


def test_cache_roundtrip(tmp_path, t_small):
    path = tmp_path / "sieve.bin"
    save_table(t_small, path)
    back = load_table(path)
    assert back.limit == t_small.limit
    for name in ("is_prime", "spf", "primes", "mu", "prefix_pi0", "prefix_pi1", "prefix_spf"):
        assert np.array_equal(getattr(back, name), getattr(t_small, name)), name


def test_cache_rejects_garbage(tmp_path):
    bad = tmp_path / "x.bin"
    bad.write_bytes(b"NOPE" + bytes(20))
    with pytest.raises(InvalidArgumentError):
        load_table(bad)
    t = build_prime_table(50)
    good = tmp_path / "y.bin"
    save_table(t, good)
    good.write_bytes(good.read_bytes()[:-3])
    with pytest.raises(InvalidArgumentError):
        load_table(good)


@given(st.integers(2, 10**4))
def test_factorize_reconstructs(n):
    t = _table()
    f = factorize(t, n)
    prod = 1
    for p, e in f.items():
        assert t.is_prime[p]
        prod *= p**e
    assert prod == n
    assert min(f) == t.spf[n]
    expected_mu = 0 if any(e > 1 for e in f.values()) else (-1) ** len(f)
    assert mobius(t, n) == expected_mu


_cache = {}


def _table():
    if "t" not in _cache:
        _cache["t"] = build_prime_table(10**4)
    return _cache["t"]
