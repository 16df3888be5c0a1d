import csv
import io
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from clab.distribution import (build_buchstab_table, buchstab_omega, debruijn_gauge,
                               envelope_rows_csv, h_count_direct, h_count_direct_many,
                               h_count_identity, h_count_table, h_hat, h_hat_intro, h_rows_csv,
                               li, mertens_product, rh_envelope, rough_count, rough_count_direct,
                               rough_count_table)
from clab.errors import InvalidArgumentError, TableRangeError
from clab.primes import build_prime_table, prime_pi

T = build_prime_table(10**4)


def test_rough_count_examples():
    assert rough_count(T, 10, 2) == 4
    assert rough_count(T, 10, 3) == 2
    assert rough_count(T, 10, 10) == 0
    assert rough_count(T, 10.7, 2.5) == 4


@settings(max_examples=200)
@given(st.integers(2, 10**4), st.floats(0.5, 200))
def test_legendre_matches_scan(x, y):
    assert rough_count(T, x, y, verify=True) == rough_count_direct(T, x, y)


def test_rough_count_table():
    tab = rough_count_table(T, 100, 3)
    assert [int(tab[x]) for x in (1, 4, 5, 10, 100)] == [0, 0, 1, 2, rough_count(T, 100, 3)]


def test_rough_count_errors():
    with pytest.raises(InvalidArgumentError):
        rough_count(T, 10**4 + 1, 3)
    with pytest.raises(InvalidArgumentError):
        rough_count(T, 1, 3)
    with pytest.raises(InvalidArgumentError):
        rough_count(T, 10, 0)


def test_h_examples():
    assert h_count_direct(T, 10, 3) == 3
    assert h_count_identity(T, 10, 3) == 3
    assert h_count_direct(T, 10, 9) == 0
    assert h_count_direct(T, 2, 2) == 0
    assert h_count_identity(T, 100, 10) == h_count_direct(T, 100, 10)
    assert h_count_identity(T, 50, 50) == h_count_direct(T, 50, 50) == 0


@settings(max_examples=300)
@given(st.integers(2, 10**4).flatmap(lambda x: st.tuples(st.just(x), st.floats(2, x))))
def test_h_identity_matches_scan(xy):
    x, y = xy
    assert h_count_identity(T, x, y) == h_count_direct(T, x, y)


@given(st.integers(4, 10**4), st.integers(2, 50), st.integers(0, 50))
def test_h_nonincreasing_in_y(x, y, dy):
    if y + dy > x:
        return
    assert h_count_direct(T, x, y + dy) <= h_count_direct(T, x, y)


def test_h_bulk_helpers():
    ys = [2, 3, 7.5, 40]
    assert h_count_direct_many(T, 1000, ys) == [h_count_direct(T, 1000, y) for y in ys]
    tab = h_count_table(T, 500, 5)
    assert all(tab[x] == h_count_direct(T, x, 5) for x in range(5, 501, 37))


def test_h_range_errors():
    with pytest.raises(InvalidArgumentError):
        h_count_direct(T, 10, 11)
    with pytest.raises(InvalidArgumentError):
        h_count_identity(T, 10, 1)


def test_h_hat():
    assert h_hat(T, 100) == 17
    assert h_hat(T, 16) == 2
    assert h_hat(T, 4) == 0


@pytest.mark.parametrize("x", [4, 16, 100, 1000, 5000, 10**4])
def test_h_hat_definitions(x):
    edge = prime_pi(T, min(2 * math.sqrt(x) + 1, x))
    assert h_hat(T, x) == prime_pi(T, x) - edge
    assert h_hat_intro(T, x) == prime_pi(T, x)
    assert h_hat_intro(T, x) - h_hat(T, x) == edge


def test_li_values():
    assert abs(li(2) - 1.045163780117) < 1e-9
    assert abs(li(1e6) - 78627.549) < 1e-2
    with pytest.raises(InvalidArgumentError):
        li(1)


@settings(max_examples=40, deadline=None)
@given(st.floats(1.01, 1e9))
def test_li_against_mpmath(x):
    ref = float(mpmath.li(x))
    assert abs(li(x) - ref) <= 1e-9 * max(1.0, abs(ref))


@pytest.mark.parametrize("x", [3.0, 10.0, 1e3, 1e5])
def test_li_additivity(x):
    integral, err = quad(lambda t: 1 / math.log(t), 2, x, limit=200)
    assert abs(li(x) - li(2) - integral) <= 10 * err + 1e-9 * integral


def test_buchstab_values(buchstab):
    assert buchstab_omega(buchstab, 1.5) == 2 / 3
    assert abs(buchstab_omega(buchstab, 3) - (1 + math.log(2)) / 3) <= 1e-9
    assert abs(buchstab_omega(buchstab, 10) - 0.561459483567) <= 1e-4
    # exact piece on [2, 3]: u w(u) = 1 + log(u - 1)
    for u in (2.25, 2.5, 2.9):
        assert abs(buchstab_omega(buchstab, u) - (1 + math.log(u - 1)) / u) < 1e-10


def test_buchstab_table_shape(buchstab):
    v = buchstab.values
    u = buchstab.u
    assert np.array_equal(v[u <= 2], 1 / u[u <= 2])
    assert np.all((v[u >= 2] >= 0.5) & (v[u >= 2] <= 1))
    assert abs(buchstab_omega(buchstab, 2 - 1e-12) - buchstab_omega(buchstab, 2 + 1e-12)) < 1e-9


def test_buchstab_local_step(buchstab):
    h = buchstab.step
    for u in (2.5, 3.3, 4.0 + h, 7.77):
        lhs = u * buchstab_omega(buchstab, u) - (u - h) * buchstab_omega(buchstab, u - h)
        rhs, _ = quad(lambda s: buchstab_omega(buchstab, s - 1), u - h, u)
        assert abs(lhs - rhs) <= 10 * h**4


def test_buchstab_errors(buchstab):
    with pytest.raises(InvalidArgumentError):
        buchstab_omega(buchstab, 0.9)
    with pytest.raises(InvalidArgumentError):
        buchstab_omega(buchstab, 21)
    with pytest.raises(InvalidArgumentError):
        build_buchstab_table(step=0.3)


def test_buchstab_step_refinement(buchstab):
    coarse = build_buchstab_table(step=1e-2, u_max=10)
    for u in (3.5, 6.0, 9.9):
        assert abs(buchstab_omega(coarse, u) - buchstab_omega(buchstab, u)) < 1e-7


def test_mertens_product():
    assert mertens_product(T, 1) == 1
    assert mertens_product(T, 3) == pytest.approx(3.0)


def test_gauge(t_big, buchstab):
    assert debruijn_gauge(t_big, buchstab, 10**6, 100).rel_err <= 0.15
    assert debruijn_gauge(t_big, buchstab, 10**6, 10).rel_err <= 0.25
    with pytest.raises(InvalidArgumentError):
        debruijn_gauge(t_big, buchstab, 100, 100)
    short = build_buchstab_table(u_max=3)
    with pytest.raises(TableRangeError):
        debruijn_gauge(t_big, short, 10**6, 10)


def test_envelope(t_big):
    e = rh_envelope(t_big, 10**6)
    assert e.h_hat == 78195
    assert e.diff == pytest.approx(-432.549, abs=1e-2)
    assert e.normalized == pytest.approx(0.0313, abs=1e-4)
    assert rh_envelope(t_big, 10**4).normalized <= 1
    assert rh_envelope(t_big, 10**5, 1.0).normalized <= rh_envelope(t_big, 10**5, 0.5).normalized
    with pytest.raises(InvalidArgumentError):
        rh_envelope(t_big, 999)
    with pytest.raises(InvalidArgumentError):
        rh_envelope(t_big, 10**4, 0.4)


def test_csv_writers():
    text = h_rows_csv([(10, 3, 3, 3), (10.5, 2.5, 4, 4)])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows == [["x", "y", "H_direct", "H_identity"], ["10", "3", "3", "3"],
                    ["10.5", "2.5", "4", "4"]]
    text = envelope_rows_csv([(1000, 1, 2.5, -1.5, 0.25)])
    assert text.splitlines() == ["x,H_hat,li,diff,normalized", "1000,1,2.5,-1.5,0.25"]
