import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clab.errors import InvalidArgumentError, ResourceLimitError
from clab.qh_satake import (c1_spectrum, grassmannian_coordinates_closed, greedy_match,
                            has_repeated_value, p_ell_operator, projective_coordinates,
                            spectrum_json, spectrum_matches_closed, wedge_basis)


def test_basis():
    b = wedge_basis(4, 2)
    assert b.dim == 6 and b.states[0] == (0, 1) and b.index[(2, 3)] == 5
    with pytest.raises(InvalidArgumentError):
        wedge_basis(4, 4)


def test_projective_line_operator():
    op = p_ell_operator(wedge_basis(2, 1), 1, 1.0)
    assert op.to_dense().tolist() == [[0, 1], [1, 0]]


def test_wrap_sign_for_g24():
    b = wedge_basis(4, 2)
    a = p_ell_operator(b, 1, 1.0).to_dense()
    # raising s^3 wraps to -q s^0, and reordering s^2 ^ s^0 costs another sign
    col = a[:, b.index[(2, 3)]]
    assert col[b.index[(0, 2)]] == 1
    assert op_trace_zero(b)


def op_trace_zero(b):
    return p_ell_operator(b, 1, 1.0).trace() == 0


def test_projective_space_spectrum():
    # P^{n-1}: eigenvalues of n*sigma_1 are n times the n-th roots of unity
    for n in range(2, 8):
        eig = c1_spectrum(wedge_basis(n, 1), 1.0).eigenvalues
        expected = projective_coordinates(n, 0.0, 1)
        assert max(p[2] for p in greedy_match(eig, expected)) < 1e-9 * n


def test_nilpotent_at_q0():
    eig = c1_spectrum(wedge_basis(3, 1), 0.0).eigenvalues
    assert np.allclose(eig, 0, atol=1e-5)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))),
       st.floats(0.1, 3.0))
def test_spectrum_scales_with_q(nk, qabs):
    # a rescaling of the grading turns q into 1 up to the factor q^(1/n)
    n, k = nk
    b = wedge_basis(n, k)
    eig = c1_spectrum(b, qabs).eigenvalues
    ref = c1_spectrum(b, 1.0).eigenvalues * qabs ** (1 / n)
    assert max(p[2] for p in greedy_match(eig, ref)) < 1e-7 * n


@pytest.mark.parametrize("n,k", [(4, 2), (6, 3), (5, 2), (9, 3)])
def test_closed_form_match(n, k):
    ok, rep = spectrum_matches_closed(n, k)
    assert ok and rep.max_distance <= rep.tolerance


def test_closed_form_values():
    vals = grassmannian_coordinates_closed(4, 2)
    # (k-1) pi i / n phase; zero occurs for the two antipodal pairs
    assert sum(1 for v in vals if abs(v) < 1e-12) == 2
    assert len(vals) == 6
    z = 4 * cmath.exp(1j * math.pi / 4) * (1 + 1j)
    assert min(abs(v - z) for v in vals) < 1e-12


def test_greedy_match_exact_permutation():
    a = np.array([1, 2j, -3, 0.5])
    b = a[[2, 0, 3, 1]]
    pairs = greedy_match(a, b)
    assert max(p[2] for p in pairs) == 0
    with pytest.raises(InvalidArgumentError):
        greedy_match(a, b[:3])


def test_repeated_values():
    assert has_repeated_value([1, 2, 1 + 1e-12], 1e-9, 1.0)
    assert not has_repeated_value([1, 2, 3], 1e-9, 1.0)


def test_guards():
    with pytest.raises(ResourceLimitError):
        c1_spectrum(wedge_basis(12, 6), guard=100)
    with pytest.raises(InvalidArgumentError):
        p_ell_operator(wedge_basis(4, 2), 4, 1.0)


def test_json_shows_double_zero():
    import json
    out = json.loads(spectrum_json(4, 2, 1, c1_spectrum(wedge_basis(4, 2), 1.0)))
    assert out["eigenvalues"].count([0.0, 0.0]) == 2
    assert out["n"] == 4 and out["k"] == 2
