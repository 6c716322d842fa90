"""Dicke state unitaries, symmetric-state preparation and compression.

DSU(n, k) is a cascade of single-qubit splits WDB(l, 1, min(k, l - 1)) for
l = n down to 2. Each split peels one qubit off the remaining unary register.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .circuit import Circuit, CircuitError, Topology, ccx, cry, cswap, cx, invert, phase, ry, swap, x
from .combinatorics import check_amplitudes, probability_angle
from .wdb import RegisterLayout, unary_to_onehot, wdb_gates

__all__ = [
    "DsuSpec",
    "build_dsu",
    "dsu_gates",
    "unary_amplitude_gates",
    "prepare_symmetric",
    "build_compression",
    "binary_width",
    "invert",
]


@dataclass(frozen=True)
class DsuSpec:
    n: int
    k: int
    placement: tuple = ()

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise CircuitError(f"DSU needs 1 <= k <= n, got n={self.n}, k={self.k}")
        p = tuple(self.placement) or tuple(range(self.n))
        if len(p) != self.n or len(set(p)) != self.n:
            raise CircuitError(f"placement must list {self.n} distinct qubits")
        object.__setattr__(self, "placement", p)


def _negated(q, gates):
    return [x(q)] + gates + [x(q)]


def _full_weight_guard(register, lnn):
    """Send |1^l> to |0 1^{l-2} 0> and fix every unary state of weight < l.

    A single split block carries |0 1^{l-2} 0> to the all-ones state, so a
    level whose register may be completely filled runs this guard first.
    Unary states of weight < l have register[0] = 0, which keeps every gate
    below idle on them.
    """
    c = list(register)
    l = len(c)
    if l == 2:
        return [cx(c[0], c[1])]
    if not lnn:
        return [cx(c[0], c[-1])] + _negated(c[-1], [ccx(c[1], c[-1], c[0])])
    # flip c[1:] when c[0] is set: difference pass then prefix pass
    gates = [cx(c[j], c[j + 1]) for j in range(l - 2, -1, -1)]
    gates += [cx(c[j], c[j + 1]) for j in range(1, l - 1)]
    # |1 0...0> -> |0 1 0...0>
    gates.append(cx(c[0], c[1]))
    gates += _negated(c[2], [ccx(c[1], c[2], c[0])])
    # grow the block of ones rightwards, stopping one short of the end
    for t in range(2, l - 1):
        gates += _negated(c[t + 1], [ccx(c[t - 1], c[t + 1], c[t])])
    return gates


def dsu_gates(n, k, placement: Sequence[int], lnn=True) -> list:
    """Gate list for DSU(n, k); ``placement`` is most significant first.

    With ``lnn`` every split sits on the qubit just before the active window
    and the split qubit's content is then shifted past the window, so the
    shrinking register stays a contiguous path.
    """
    spec = DsuSpec(n, k, tuple(placement))
    cur = list(spec.placement)
    gates = []
    for l in range(n, 1, -1):
        kk = min(k, l - 1)
        if l <= k:
            # the remaining register may be completely filled
            gates += _full_weight_guard(cur, lnn)
        if lnn:
            split = cur[-kk - 1]
            window = cur[-kk:]
            gates += wdb_gates(l, 1, kk, RegisterLayout(window, [split]), True)
            if kk < l - 1:
                path = [split] + window
                for a, b in zip(path, path[1:]):
                    gates += swap(a, b)
                cur = cur[:-1]
            else:
                cur = cur[1:]
        else:
            gates += wdb_gates(l, 1, kk, RegisterLayout(cur[-kk:], [cur[0]]), False)
            cur = cur[1:]
    return gates


def build_dsu(n, k, placement: Optional[Sequence[int]] = None, lnn=True, qubit_count=None) -> Circuit:
    """DSU(n, k): |0^{n-l} 1^l> -> D(n, l) for every l <= k on ``placement``."""
    placement = tuple(placement) if placement is not None else tuple(range(n))
    size = qubit_count or max(placement) + 1
    return Circuit(size, tuple(dsu_gates(n, k, placement, lnn)), f"DSU({n},{k})")


# --- symmetric states -------------------------------------------------------


def unary_amplitude_gates(register: Sequence[int], alpha) -> list:
    """Prepare sum_l alpha_l |0^{k-l} 1^l> on ``register`` from |0...0>.

    One RY on the last qubit, then a CRY chain towards the front; each angle
    conditions on the remaining suffix of |alpha|^2. Phases are added per
    unary qubit (qubit j carries arg(alpha_j) - arg(alpha_{j-1})), and the
    phase of alpha_0 is applied globally through X P X P.
    """
    a = check_amplitudes(alpha)
    k = len(register)
    if len(a) != k + 1:
        raise CircuitError(f"need {k + 1} amplitudes for a {k}-qubit register, got {len(a)}")
    w = {j: register[k - j] for j in range(1, k + 1)}  # w[1] least significant
    probs = np.abs(a) ** 2
    tail = np.cumsum(probs[::-1])[::-1]  # tail[j] = sum_{i >= j} |alpha_i|^2
    gates = []
    for j in range(k):
        if tail[j] <= 1e-15:
            break
        theta = probability_angle(probs[j] / tail[j])
        if theta == 0.0:
            continue
        gates.append(ry(w[1], theta) if j == 0 else cry(w[j], w[j + 1], theta))

    phases = np.angle(a)
    prev = phases[0]
    for j in range(1, k + 1):
        if probs[j] <= 1e-15:
            continue
        delta = float(phases[j] - prev)
        if abs(delta) > 1e-15:
            gates.append(phase(w[j], delta))
        prev = phases[j]
    if abs(phases[0]) > 1e-15:
        q = w[1]
        gates += [x(q), phase(q, float(phases[0])), x(q), phase(q, float(phases[0]))]
    return gates


def prepare_symmetric(n, k, alpha, topology: Optional[Topology] = None, s=1) -> Circuit:
    """sum_l alpha_l D(n, l) from |0...0>, using the planner's DSU stack."""
    from .planner import plan_for

    a = check_amplitudes(alpha)
    if len(a) != k + 1:
        raise CircuitError(f"alpha must have k+1 = {k + 1} entries")
    if not 1 <= k < n:
        raise CircuitError(f"prepare_symmetric needs 1 <= k < n, got n={n}, k={k}")
    topology = topology or Topology.all_to_all(n)
    plan = plan_for(n, k, topology, s=s)
    prefix = unary_amplitude_gates(plan.input_register, a)
    body = plan.circuit()
    return Circuit(topology.size, tuple(prefix) + body.gates, f"symmetric({n},{k})")


# --- compression ------------------------------------------------------------


def binary_width(k) -> int:
    return max(1, math.ceil(math.log2(k + 1)))


def onehot_to_binary(register: Sequence[int]) -> list:
    """One-hot position l of ``register`` -> bin(l) on its last binary_width(k) qubits.

    Works top bit first: bit qubit o_h (h a power of two) absorbs every
    position >= h, and controlled swaps fold position l down to l - h. Bit t
    then sits on o_{2^t} and is swapped into o_{t+1}.
    """
    k = len(register)
    o = {j: register[k - j] for j in range(1, k + 1)}
    b = binary_width(k)
    gates = []
    h = 1 << (b - 1)
    top = k
    while h >= 1:
        for pos in range(h + 1, top + 1):
            gates.append(cx(o[pos], o[h]))
            gates.append(cswap(o[h], o[pos], o[pos - h]))
        top = h - 1
        h >>= 1
    for t in range(2, b):
        gates += swap(o[1 << t], o[t + 1])
    return gates


def build_compression(n, k, placement: Optional[Sequence[int]] = None) -> Circuit:
    """Map sum_l alpha_l D(n, l) to |0...0> (x) sum_l alpha_l |bin(l)>.

    The binary value lands on the binary_width(k) least significant qubits.
    The encoding conversions are the plain O(k) stairs, not log-depth ones.
    """
    if not 1 <= k < n:
        raise CircuitError(f"compression needs 1 <= k < n, got n={n}, k={k}")
    placement = tuple(placement) if placement is not None else tuple(range(n))
    size = max(placement) + 1
    undo = invert(build_dsu(n, k, placement, lnn=True, qubit_count=size))
    unary = placement[-k:]
    tail = unary_to_onehot(unary) + onehot_to_binary(unary)
    return Circuit(size, undo.gates + tuple(tail), f"compress({n},{k})")
