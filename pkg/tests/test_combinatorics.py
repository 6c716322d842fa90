import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dicke_synth.combinatorics import (
    BinomialTable,
    binomial,
    check_amplitudes,
    oracle_dicke_state,
    oracle_symmetric_state,
    rotation_angle,
    split_coefficients,
)


def test_binomial_values():
    assert binomial(6, 3) == 20
    assert binomial(5, 0) == 1
    assert binomial(4, 2) == 6
    assert binomial(3, 5) == 0
    assert binomial(3, -1) == 0


def test_binomial_errors():
    with pytest.raises(ValueError):
        binomial(-1, 0)
    with pytest.raises(OverflowError):
        binomial(10**6, 2)


def test_table_pascal_and_edges():
    t = BinomialTable(30)
    for a in range(1, 31):
        assert t(a, 0) == t(a, a) == 1
        for b in range(1, a):
            assert t(a, b) == t(a - 1, b - 1) + t(a - 1, b)
        assert t(a, a + 1) == 0


def test_split_coefficients_examples():
    co = split_coefficients(6, 3, 3, 3)
    assert co.x == (1, 9, 9, 1)
    assert co.s == (20, 19, 10, 1)
    co = split_coefficients(5, 2, 3, 3)
    assert co.x == (1, 6, 3, 0)
    assert co.s == (10, 9, 3, 0)
    co = split_coefficients(7, 2, 4, 0)
    assert co.x == (1,) and co.s == (1,)


def test_split_coefficients_bad_params():
    with pytest.raises(ValueError):
        split_coefficients(4, 4, 2, 1)
    with pytest.raises(ValueError):
        split_coefficients(4, 2, 2, 3)


def test_vandermonde_exhaustive():
    for n in range(2, 31):
        for m in range(1, n):
            for ell in range(n + 1):
                co = split_coefficients(n, m, ell, ell)
                assert sum(co.x) == binomial(n, ell) == co.s[0] == co.total


def test_zero_pattern_of_terms():
    for n, m, ell in [(5, 2, 3), (9, 3, 7), (8, 6, 5)]:
        co = split_coefficients(n, m, ell, ell)
        for i, xi in enumerate(co.x):
            assert (xi == 0) == (i > m or ell - i > n - m)


def test_rotation_angle_values():
    assert rotation_angle(1, 1) == 0.0
    assert rotation_angle(0, 1) == pytest.approx(math.pi)
    assert rotation_angle(1, 2) == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        rotation_angle(3, 2)
    with pytest.raises(ValueError):
        rotation_angle(0, 0)


@given(st.integers(1, 10**6), st.integers(0, 10**6))
def test_rotation_angle_amplitudes(y, x):
    x = x % (y + 1)
    th = rotation_angle(x, y)
    assert math.cos(th / 2) ** 2 == pytest.approx(x / y, abs=1e-12)
    assert 0.0 <= th <= math.pi


def test_oracle_d42_support():
    psi = oracle_dicke_state(4, 2)
    support = {format(i, "04b") for i in np.nonzero(np.abs(psi) > 1e-12)[0]}
    assert support == {"1100", "1010", "1001", "0110", "0101", "0011"}
    assert np.allclose(psi[np.abs(psi) > 0], 1 / math.sqrt(6))


def test_oracle_small_cases():
    assert oracle_dicke_state(5, 0)[0] == 1
    psi = oracle_dicke_state(3, 1)
    assert np.allclose(psi[[1, 2, 4]], 1 / math.sqrt(3))
    assert np.count_nonzero(psi) == 3


def test_oracle_bounds():
    with pytest.raises(ValueError):
        oracle_dicke_state(25, 1)
    with pytest.raises(ValueError):
        oracle_dicke_state(4, 5)


def test_oracle_normalized_and_complement():
    for n in range(1, 11):
        for ell in range(n + 1):
            psi = oracle_dicke_state(n, ell)
            assert np.linalg.norm(psi) == pytest.approx(1, abs=1e-12)
            flipped = {(~i) & (2**n - 1) for i in np.nonzero(psi)[0]}
            assert flipped == set(np.nonzero(oracle_dicke_state(n, n - ell))[0])


def test_symmetric_oracle():
    assert oracle_symmetric_state(4, [1, 0, 0])[0] == 1
    assert np.allclose(oracle_symmetric_state(5, [0, 0, 1]), oracle_dicke_state(5, 2))
    psi = oracle_symmetric_state(4, [1 / math.sqrt(2), 1 / math.sqrt(2)])
    assert psi[0] == pytest.approx(1 / math.sqrt(2))
    for i in (1, 2, 4, 8):
        assert psi[i] == pytest.approx(1 / (2 * math.sqrt(2)))


def test_symmetric_oracle_rejects_unnormalized():
    with pytest.raises(ValueError):
        check_amplitudes([1, 1])
    with pytest.raises(ValueError):
        oracle_symmetric_state(2, [0.5, 0.5, 0.5, 0.5])
