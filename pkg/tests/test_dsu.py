import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dicke_synth.circuit import Circuit, CircuitError, Topology, invert, metrics, validate_connectivity
from dicke_synth.combinatorics import oracle_dicke_state, oracle_symmetric_state
from dicke_synth.dsu import (
    DsuSpec,
    binary_width,
    build_compression,
    build_dsu,
    onehot_to_binary,
    prepare_symmetric,
    unary_amplitude_gates,
)
from dicke_synth.simulator import basis_state, fidelity, run


def dsu_worst(n, k, lnn, placement=None):
    c = build_dsu(n, k, placement, lnn=lnn)
    order = placement or range(n)
    worst = 1.0
    for ell in range(k + 1):
        bits = ["0"] * n
        for q in list(order)[n - ell :]:
            bits[q] = "1"
        psi = run(c, basis_state(n, "".join(bits)))
        worst = min(worst, fidelity(oracle_dicke_state(n, ell), psi))
    return worst


def test_three_qubit_two_weight_example():
    c = build_dsu(3, 2)
    assert fidelity(run(c, basis_state(3, "011")), oracle_dicke_state(3, 2)) == pytest.approx(1)
    assert fidelity(run(c, basis_state(3, "001")), oracle_dicke_state(3, 1)) == pytest.approx(1)
    assert run(c)[0] == pytest.approx(1)


@pytest.mark.parametrize("lnn", [True, False])
def test_dsu_every_weight(lnn):
    for n in range(2, 11):
        for k in range(1, n + 1):
            assert dsu_worst(n, k, lnn) > 1 - 1e-9, (n, k)


def test_dsu_larger_registers():
    for n, k in [(12, 6), (13, 3), (14, 7), (14, 2)]:
        assert dsu_worst(n, k, True) > 1 - 1e-9


def test_path_form_is_nearest_neighbour():
    for n in range(2, 12):
        for k in range(1, n + 1):
            c = build_dsu(n, k, lnn=True)
            assert validate_connectivity(c, Topology.path(n)).ok, (n, k)


def test_placement_on_reversed_path():
    placement = tuple(range(7, -1, -1))
    assert dsu_worst(8, 3, True, placement) > 1 - 1e-9
    assert validate_connectivity(build_dsu(8, 3, placement), Topology.path(8)).ok


def test_inverse_returns_unary_input():
    c = build_dsu(7, 3)
    back = invert(c)
    for ell in range(4):
        psi = run(back, oracle_dicke_state(7, ell).astype(complex))
        assert abs(psi[(1 << ell) - 1]) == pytest.approx(1)


def test_gate_count_linear_in_kn():
    ratios = [metrics(build_dsu(n, k)).cnot_count / (k * n) for n in (8, 16, 32) for k in (2, 4)]
    assert max(ratios) / min(ratios) < 3


def test_frozen_dsu_metrics():
    assert metrics(build_dsu(4, 2)).cnot_count == 70
    assert metrics(build_dsu(4, 2, lnn=False)).cnot_count == 34
    assert metrics(build_dsu(3, 2)).depth == 27


def test_spec_errors():
    with pytest.raises(CircuitError):
        DsuSpec(3, 0)
    with pytest.raises(CircuitError):
        DsuSpec(3, 2, (0, 1, 1))
    with pytest.raises(CircuitError):
        build_dsu(4, 5)


# --- symmetric states -------------------------------------------------------


def random_alpha(rng, k):
    a = rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1)
    return a / np.linalg.norm(a)


def test_unary_amplitude_loader():
    rng = np.random.default_rng(3)
    for k in range(1, 6):
        alpha = random_alpha(rng, k)
        psi = run(Circuit(k, tuple(unary_amplitude_gates(range(k), alpha))))
        expected = np.zeros(2**k, complex)
        for ell, a in enumerate(alpha):
            expected[(1 << ell) - 1] = a
        assert np.allclose(psi, expected, atol=1e-12)


def test_loader_with_zero_amplitudes():
    alpha = np.array([0, 0, 1j, 0])
    psi = run(Circuit(3, tuple(unary_amplitude_gates((0, 1, 2), alpha))))
    assert psi[0b011] == pytest.approx(1j)


@pytest.mark.parametrize("topology", [None, "path", "grid"])
def test_prepare_symmetric(topology):
    n, k = 8, 2
    topo = {None: None, "path": Topology.path(n), "grid": Topology.grid(2, 4)}[topology]
    rng = np.random.default_rng(11)
    for _ in range(5):
        alpha = random_alpha(rng, k)
        psi = run(prepare_symmetric(n, k, alpha, topo))
        assert fidelity(psi, oracle_symmetric_state(n, alpha)) > 1 - 1e-9


def test_prepare_symmetric_keeps_global_phase():
    alpha = np.array([1j, 0, 0])
    psi = run(prepare_symmetric(5, 2, alpha))
    assert psi[0] == pytest.approx(1j)


def test_prepare_symmetric_errors():
    with pytest.raises(CircuitError):
        prepare_symmetric(5, 2, [1, 0])
    with pytest.raises(ValueError):
        prepare_symmetric(5, 2, [1, 1, 0])


# --- compression ------------------------------------------------------------


def test_binary_width():
    assert [binary_width(k) for k in (1, 2, 3, 4, 7, 8)] == [1, 2, 2, 3, 3, 4]


@pytest.mark.parametrize("k", range(1, 9))
def test_onehot_to_binary(k):
    c = Circuit(k, tuple(onehot_to_binary(range(k))))
    for pos in range(1, k + 1):
        out = run(c, basis_state(k, 1 << (pos - 1)))
        assert abs(out[pos]) == pytest.approx(1), pos


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(5, 2), (6, 2), (7, 3), (8, 3)]), st.integers(0, 2**32 - 1))
def test_compression_round_trip(nk, seed):
    n, k = nk
    alpha = random_alpha(np.random.default_rng(seed), k)
    out = run(build_compression(n, k), oracle_symmetric_state(n, alpha).astype(complex))
    assert np.allclose(out[: k + 1], alpha, atol=1e-8)
    assert np.linalg.norm(out[k + 1 :]) < 1e-8


def test_frozen_compression_metrics():
    assert metrics(build_compression(6, 2)).cnot_count == 137
    assert metrics(build_compression(8, 3)).depth == 207
