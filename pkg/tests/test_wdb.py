import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dicke_synth.circuit import Circuit, CircuitError, Topology, metrics, validate_connectivity
from dicke_synth.simulator import basis_state, run, support_weights
from dicke_synth.wdb import (
    RegisterLayout,
    build_wdb,
    onehot_to_unary,
    reversal_swaps,
    reverse_register,
    unary_to_onehot,
)

from helpers import wdb_expected, wdb_worst_error


def test_unary_onehot_conversions():
    reg = (0, 1, 2, 3)
    to_hot = Circuit(4, tuple(unary_to_onehot(reg)))
    back = Circuit(4, tuple(onehot_to_unary(reg)))
    for ell in range(1, 5):
        hot = run(to_hot, basis_state(4, (1 << ell) - 1))
        assert hot[1 << (ell - 1)] == pytest.approx(1)
        assert run(back, hot)[(1 << ell) - 1] == pytest.approx(1)
    assert len(to_hot) == 3


def test_wdb_633_from_unary_three():
    c = build_wdb(6, 3, 3, RegisterLayout((3, 4, 5), (0, 1, 2)))
    psi = run(c, basis_state(6, "000111"))
    amps = {format(i, "06b"): abs(a) ** 2 for i, a in enumerate(psi) if abs(a) > 1e-12}
    assert amps == pytest.approx({"000111": 1 / 20, "001011": 9 / 20, "011001": 9 / 20, "111000": 1 / 20})


def test_truncated_block_from_eleven_qubit_plan():
    assert wdb_worst_error(5, 2, 3, False) < 1e-10
    assert wdb_worst_error(5, 2, 3, True) < 1e-10


def test_wdb_on_zero_input_is_identity():
    c = build_wdb(7, 3, 3, RegisterLayout((3, 4, 5), (0, 1, 2)))
    assert run(c)[0] == pytest.approx(1)


@pytest.mark.parametrize("lnn", [False, True])
def test_wdb_semantics_small_batch(lnn):
    for n in range(2, 9):
        for m in range(1, n):
            for k in range(1, min(n, 5)):
                assert wdb_worst_error(n, m, k, lnn) < 1e-10, (n, m, k)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n - 1), st.integers(1, min(6, n - 1)), st.booleans())))
def test_wdb_semantics_property(params):
    n, m, k, lnn = params
    assert wdb_worst_error(n, m, k, lnn) < 1e-10


def test_nearest_neighbour_mode_respects_path():
    for n, m, k in [(9, 4, 4), (6, 3, 3), (10, 2, 5)]:
        r = min(m, k)
        size = r + k
        c = build_wdb(n, m, k, RegisterLayout(range(r, size), range(r)), True, Topology.path(size))
        assert validate_connectivity(c, Topology.path(size)).ok


def test_all_to_all_mode_violates_path():
    c = build_wdb(6, 3, 3, RegisterLayout((3, 4, 5), (0, 1, 2)))
    assert not validate_connectivity(c, Topology.path(6)).ok


def test_broken_glued_path_is_rejected():
    with pytest.raises(CircuitError, match="glued path"):
        build_wdb(6, 3, 3, RegisterLayout((3, 4, 5), (0, 2, 1)), True, Topology.path(6))


def test_parameter_and_size_errors():
    with pytest.raises(CircuitError):
        build_wdb(4, 4, 2, RegisterLayout((0, 1), (2, 3)))
    with pytest.raises(CircuitError):
        build_wdb(6, 3, 3, RegisterLayout((3, 4), (0, 1, 2)))
    with pytest.raises(CircuitError):
        RegisterLayout((0, 1), (1, 2))


def test_frozen_block_metrics():
    lay = RegisterLayout((3, 4, 5), (0, 1, 2))
    assert metrics(build_wdb(6, 3, 3, lay)).cnot_count == 73
    assert metrics(build_wdb(6, 3, 3, lay, True)).cnot_count == 151
    assert metrics(build_wdb(5, 2, 3, RegisterLayout((2, 3, 4), (0, 1)))).depth == 25


def test_output_weights_preserved():
    c = build_wdb(8, 3, 4, RegisterLayout((3, 4, 5, 6), (0, 1, 2)))
    for ell in range(5):
        assert support_weights(run(c, basis_state(7, (1 << ell) - 1))) == {ell}


# --- register reversal ------------------------------------------------------


def test_reverse_four_qubits():
    rounds = reversal_swaps([0, 1, 2, 3])
    assert sum(len(r) for r in rounds) == 6
    assert len(rounds) == 4


@pytest.mark.parametrize("size", range(1, 8))
def test_reverse_register_permutes(size):
    c = reverse_register(list(range(size)))
    rng = np.random.default_rng(size)
    for idx in rng.integers(0, 2**size, 5):
        bits = format(int(idx), f"0{size}b")
        out = run(c, basis_state(size, bits))
        assert out[int(bits[::-1], 2)] == pytest.approx(1)
    assert validate_connectivity(c, Topology.path(size)).ok
    assert len(reversal_swaps(list(range(size)))) <= size
