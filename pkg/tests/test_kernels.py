import numpy as np
import pytest

from clab import _kernels_py
from clab._backend import BACKEND, get_kernels
from clab.cyclotomic import build_reducer

try:
    compiled = get_kernels("compiled")
except ImportError:
    compiled = None

BACKENDS = [_kernels_py] + ([compiled] if compiled is not None else [])
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def test_backend_name():
    assert BACKEND in ("compiled", "python")
    with pytest.raises(ValueError):
        get_kernels("fortran")


@needs_compiled
@pytest.mark.parametrize("limit", [2, 3, 10, 97, 1000, 65537])
def test_sieves_identical(limit):
    a = _kernels_py.linear_sieve(limit)
    b = compiled.linear_sieve(limit)
    for x, y in zip(a, b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


def _mask_sum(r, m):
    return r.rows[[e for e in range(r.n) if m >> e & 1]].sum(axis=0)


@pytest.mark.parametrize("kern", BACKENDS, ids=lambda k: k.__name__)
@pytest.mark.parametrize("n", [2, 3, 4, 6, 9, 10, 12, 15])
def test_collision_pairs_are_genuine(kern, n):
    r = build_reducer(n)
    for k in range(1, n):
        found, a, b = kern.find_collision(r.rows, r.row_hash, k)
        if found:
            assert a != b
            assert bin(a).count("1") == bin(b).count("1") == k
            assert np.array_equal(_mask_sum(r, a), _mask_sum(r, b))


@needs_compiled
@pytest.mark.parametrize("n", range(2, 17))
def test_collision_verdicts_agree(n):
    r = build_reducer(n)
    for k in range(1, n):
        assert (_kernels_py.find_collision(r.rows, r.row_hash, k)[0]
                == compiled.find_collision(r.rows, r.row_hash, k)[0])


@needs_compiled
@pytest.mark.parametrize("n", range(2, 17))
def test_vanishing_verdicts_agree(n):
    r = build_reducer(n)
    for k in range(0, n + 1):
        fa, ma = _kernels_py.find_vanishing(r.rows, r.row_hash, k)
        fb, mb = compiled.find_vanishing(r.rows, r.row_hash, k)
        assert fa == fb
        for f, m in ((fa, ma), (fb, mb)):
            if f:
                assert not _mask_sum(r, m).any()
