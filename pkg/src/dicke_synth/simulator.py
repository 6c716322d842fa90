"""Dense statevector simulation of native-gate circuits.

Amplitudes are stored as an ``(2,) * n`` tensor view; axis ``j`` is qubit ``j``,
which makes qubit 0 the most significant bit of the flat index.
"""
from __future__ import annotations

import json
import os

import numpy as np

from .circuit import CCX, CRY, CSWAP, CX, PHASE, RY, X, Circuit, Gate

DEFAULT_CAP = 24


def qubit_cap() -> int:
    return int(os.environ.get("DICKE_SIM_CAP", DEFAULT_CAP))


class SimulationError(ValueError):
    pass


def basis_state(n: int, bits) -> np.ndarray:
    """|bits> as a flat vector; ``bits`` is a '0101' string or an integer index."""
    if isinstance(bits, str):
        if len(bits) != n:
            raise SimulationError(f"bitstring {bits!r} has length != {n}")
        idx = int(bits, 2)
    else:
        idx = int(bits)
    psi = np.zeros(2**n, dtype=complex)
    psi[idx] = 1.0
    return psi


def zero_state(n: int) -> np.ndarray:
    return basis_state(n, 0)


def unary_state(n: int, ell: int) -> np.ndarray:
    """|0^{n-ell} 1^ell>."""
    return basis_state(n, (1 << ell) - 1)


def _sl(n, fixed):
    idx = [slice(None)] * n
    for q, v in fixed.items():
        idx[q] = v
    return tuple(idx)


def _rotate(t, q, theta, fixed):
    """Apply RY(theta) on axis q of the sub-tensor selected by ``fixed``."""
    n = t.ndim
    a0 = t[_sl(n, {**fixed, q: 0})]
    a1 = t[_sl(n, {**fixed, q: 1})]
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    new0 = c * a0 - s * a1
    new1 = s * a0 + c * a1
    t[_sl(n, {**fixed, q: 0})] = new0
    t[_sl(n, {**fixed, q: 1})] = new1


def _flip(t, q, fixed):
    n = t.ndim
    i0, i1 = _sl(n, {**fixed, q: 0}), _sl(n, {**fixed, q: 1})
    tmp = t[i0].copy()
    t[i0] = t[i1]
    t[i1] = tmp


def apply_gate(tensor: np.ndarray, gate: Gate) -> None:
    """In-place application on an ``(2,)*n`` tensor."""
    n = tensor.ndim
    if max(gate.qubits) >= n:
        raise SimulationError(f"{gate} out of range for {n} qubits")
    k, qs = gate.kind, gate.qubits
    if k == X:
        _flip(tensor, qs[0], {})
    elif k == RY:
        _rotate(tensor, qs[0], gate.angle, {})
    elif k == PHASE:
        tensor[_sl(n, {qs[0]: 1})] *= np.exp(1j * gate.angle)
    elif k == CX:
        _flip(tensor, qs[1], {qs[0]: 1})
    elif k == CRY:
        _rotate(tensor, qs[1], gate.angle, {qs[0]: 1})
    elif k == CCX:
        _flip(tensor, qs[2], {qs[0]: 1, qs[1]: 1})
    elif k == CSWAP:
        c, a, b = qs
        i01 = _sl(n, {c: 1, a: 0, b: 1})
        i10 = _sl(n, {c: 1, a: 1, b: 0})
        tmp = tensor[i01].copy()
        tensor[i01] = tensor[i10]
        tensor[i10] = tmp
    else:  # pragma: no cover - Gate validates kinds
        raise SimulationError(f"unsupported gate {gate}")


def apply(state: np.ndarray, gate: Gate) -> np.ndarray:
    """Return ``gate |state>`` as a new flat vector."""
    n = _num_qubits(state)
    t = np.array(state, dtype=complex).reshape((2,) * n)
    apply_gate(t, gate)
    return t.reshape(-1)


def _num_qubits(state) -> int:
    size = len(state)
    n = size.bit_length() - 1
    if n < 1 or 1 << n != size:
        raise SimulationError(f"state length {size} is not a power of two >= 2")
    return n


def run(circuit: Circuit, initial=None, cap=None) -> np.ndarray:
    """Apply ``circuit`` gate by gate to ``initial`` (default |0...0>)."""
    n = circuit.qubit_count
    cap = qubit_cap() if cap is None else cap
    if n > cap:
        raise SimulationError(f"{n} qubits exceeds simulator cap {cap}")
    if initial is None:
        initial = zero_state(n)
    if len(initial) != 2**n:
        raise SimulationError("initial state size does not match circuit")
    t = np.array(initial, dtype=complex).reshape((2,) * n)
    for g in circuit.gates:
        apply_gate(t, g)
    return t.reshape(-1)


def unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary, column j = run(circuit, |j>). Small circuits only."""
    n = circuit.qubit_count
    cols = [run(circuit, basis_state(n, j)) for j in range(2**n)]
    return np.stack(cols, axis=1)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    if len(a) != len(b):
        raise SimulationError("state sizes differ")
    return float(abs(np.vdot(a, b)) ** 2)


def hamming_weights(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    w = np.zeros_like(idx)
    while np.any(idx):
        w += idx & 1
        idx = idx >> 1
    return w


def support_weights(state: np.ndarray, threshold=1e-12) -> set:
    n = _num_qubits(state)
    probs = np.abs(state) ** 2
    w = hamming_weights(n)
    mass = np.bincount(w, weights=probs, minlength=n + 1)
    return {int(h) for h in np.nonzero(mass > threshold)[0]}


def dump_state(state: np.ndarray, threshold=1e-12) -> str:
    """JSON list of [bitstring, re, im] for amplitudes above ``threshold``."""
    n = _num_qubits(state)
    rows = [
        [format(i, f"0{n}b"), float(a.real), float(a.imag)]
        for i, a in enumerate(state)
        if abs(a) > threshold
    ]
    return json.dumps(rows)
