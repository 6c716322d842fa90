"""Weight distribution blocks.

A block WDB(n, m, k) moves part of a unary-encoded weight ``ell <= k`` from an
(n - m)-qubit set into a fresh m-qubit set, with amplitude
sqrt(C(m, i) C(n - m, ell - i) / C(n, ell)) for the outcome that sends ``i``
ones across. Only the last ``k`` qubits of the source set (``first``) and the
last ``min(m, k)`` qubits of the receiving set (``second``) are touched.

The block is built in four passes over the two registers:

1. unary -> one-hot on ``first``;
2. controlled addition: for each one-hot position ``ell`` a ladder of
   controlled RY gates loads the weight-``i`` superposition into ``second``;
3. one-hot -> unary on ``first``;
4. unary subtraction: every set qubit of ``second`` removes one unit from
   ``first`` (a CX followed by a ladder of controlled swaps).

In nearest-neighbour mode the glued path is ``second + first``; during pass 2
each qubit of ``first`` travels through ``second`` and during pass 4 each
qubit of ``second`` travels back through ``first``, so every controlled gate
acts on three consecutive path qubits. Both registers end where they started.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .circuit import Circuit, CircuitError, Topology, ccx, cry, cswap, cx, ry, swap
from .combinatorics import rotation_angle, split_coefficients


@dataclass(frozen=True)
class RegisterLayout:
    """Qubit placement of one block.

    Both registers list global qubit indices most significant first, so the
    unary weight sits at the end of each list. In nearest-neighbour mode
    ``second + first`` must be a path (``second[-1]`` next to ``first[0]``).
    """

    first: tuple
    second: tuple

    def __post_init__(self):
        object.__setattr__(self, "first", tuple(self.first))
        object.__setattr__(self, "second", tuple(self.second))
        if set(self.first) & set(self.second):
            raise CircuitError("registers overlap")
        if len(set(self.first)) != len(self.first) or len(set(self.second)) != len(self.second):
            raise CircuitError("repeated qubit inside a register")

    glue_orientation = "second-then-first"

    @property
    def glued_path(self) -> tuple:
        return self.second + self.first


def check_params(n, m, k):
    if not 1 <= m < n:
        raise CircuitError(f"WDB needs 1 <= m < n, got n={n}, m={m}")
    if not 1 <= k <= n - 1:
        raise CircuitError(f"WDB needs 1 <= k <= n-1, got k={k}, n={n}")


def ccry(a, b, t, theta, nearest_neighbour=False) -> list:
    """RY(theta) on ``t`` iff ``a`` and ``b`` are both 1.

    The CX form needs a-t and b-t edges; the Toffoli form only needs the three
    qubits to be consecutive on a path.
    """
    if nearest_neighbour:
        return [ry(t, theta / 2), ccx(a, b, t), ry(t, -theta / 2), ccx(a, b, t)]
    q = theta / 4
    return [ry(t, q), cx(b, t), ry(t, -q), cx(a, t), ry(t, q), cx(b, t), ry(t, -q), cx(a, t)]


def unary_to_onehot(register: Sequence[int]) -> list:
    """|0^{k-l} 1^l> -> |0^{k-l} 1 0^{l-1}> on a most-significant-first register."""
    u = _unary_view(register)
    return [cx(u[j + 1], u[j]) for j in range(1, len(register))]


def onehot_to_unary(register: Sequence[int]) -> list:
    u = _unary_view(register)
    return [cx(u[j + 1], u[j]) for j in range(len(register) - 1, 0, -1)]


def _unary_view(register):
    # u[j] is the j-th least significant qubit, 1-based
    k = len(register)
    return {j: register[k - j] for j in range(1, k + 1)}


def _ladder(n, m, k, ell, r):
    """(control position i, angle) pairs of the addition ladder for weight ell.

    Entry 0 is the singly controlled rotation on v_1; entry i >= 1 rotates
    v_{i+1} conditioned on v_i. Identity rotations are dropped.
    """
    co = split_coefficients(n, m, k, ell)
    out = []
    for i in range(min(ell, r)):
        if co.s[i] == 0:
            break
        theta = rotation_angle(co.x[i], co.s[i])
        if theta != 0.0:
            out.append((i, theta))
    return out


def controlled_addition(n, m, k, first, second) -> list:
    """Pass 2 for all-to-all placement (one-hot ``first`` controls ladders)."""
    u, v = _unary_view(first), _unary_view(second)
    r = len(second)
    gates = []
    for ell in range(k, 0, -1):
        for i, theta in _ladder(n, m, k, ell, r):
            if i == 0:
                gates.append(cry(u[ell], v[1], theta))
            else:
                gates.extend(ccry(u[ell], v[i], v[i + 1], theta))
    return gates


def unary_subtraction(first, second) -> list:
    """Pass 4 for all-to-all placement: subtract unary ``second`` from ``first``."""
    u, v = _unary_view(first), _unary_view(second)
    k, r = len(first), len(second)
    gates = []
    for j in range(r, 0, -1):
        gates.append(cx(v[j], u[1]))
        gates.extend(cswap(v[j], u[t], u[t + 1]) for t in range(1, k))
    return gates


class _PathTracker:
    """Logical labels riding on a fixed path of physical qubits."""

    def __init__(self, path, labels):
        self.path = list(path)
        self.at = list(labels)
        self.pos = {lab: p for p, lab in enumerate(labels)}
        self.gates = []

    def q(self, label):
        return self.path[self.pos[label]]

    def neighbours(self, *labels):
        ps = sorted(self.pos[l] for l in labels)
        if ps[-1] - ps[0] != len(ps) - 1:
            raise CircuitError(f"labels {labels} not consecutive on the path")

    def swap(self, a, b):
        self.neighbours(a, b)
        pa, pb = self.pos[a], self.pos[b]
        self.gates.extend(swap(self.path[pa], self.path[pb]))
        self.at[pa], self.at[pb] = b, a
        self.pos[a], self.pos[b] = pb, pa


def _wdb_nearest_neighbour(n, m, k, first, second) -> list:
    r = len(second)
    labels = [("v", r - p) for p in range(r)] + [("u", k - p) for p in range(k)]
    tr = _PathTracker(tuple(second) + tuple(first), labels)
    U = lambda j: ("u", j)
    V = lambda j: ("v", j)

    # pass 1
    for j in range(1, k):
        tr.gates.append(cx(tr.q(U(j + 1)), tr.q(U(j))))
    # pass 2: u_k, u_{k-1}, ... each cross the whole second register
    for ell in range(k, 0, -1):
        steps = dict(_ladder(n, m, k, ell, r))
        for i in range(1, r + 1):
            if i == 1 and 0 in steps:
                tr.neighbours(U(ell), V(1))
                tr.gates.append(cry(tr.q(U(ell)), tr.q(V(1)), steps[0]))
            if i in steps:
                tr.neighbours(V(i + 1), V(i), U(ell))
                tr.gates.extend(ccry(tr.q(U(ell)), tr.q(V(i)), tr.q(V(i + 1)), steps[i], True))
            tr.swap(V(i), U(ell))
    # pass 3
    for j in range(k - 1, 0, -1):
        tr.gates.append(cx(tr.q(U(j + 1)), tr.q(U(j))))
    # pass 4: v_r, ..., v_1 each cross the whole first register
    for j in range(r, 0, -1):
        for t in range(1, k + 1):
            if t == 1:
                tr.gates.append(cx(tr.q(V(j)), tr.q(U(1))))
            if t < k:
                tr.neighbours(U(t + 1), U(t), V(j))
                tr.gates.append(cswap(tr.q(V(j)), tr.q(U(t)), tr.q(U(t + 1))))
            tr.swap(U(t), V(j))
    assert tr.at == labels
    return tr.gates


def wdb_gates(n, m, k, layout: RegisterLayout, lnn_mode=False) -> list:
    check_params(n, m, k)
    first, second = layout.first, layout.second
    if len(first) != k or len(second) != min(m, k):
        raise CircuitError(
            f"WDB({n},{m},{k}) needs registers of size {k} and {min(m, k)}, "
            f"got {len(first)} and {len(second)}"
        )
    if lnn_mode:
        return _wdb_nearest_neighbour(n, m, k, first, second)
    return (
        unary_to_onehot(first)
        + controlled_addition(n, m, k, first, second)
        + onehot_to_unary(first)
        + unary_subtraction(first, second)
    )


def build_wdb(n, m, k, layout: RegisterLayout, lnn_mode=False,
              topology: Optional[Topology] = None, qubit_count=None) -> Circuit:
    """Circuit for WDB(n, m, k) on ``layout``.

    ``second`` must be |0...0> when the block runs. With ``lnn_mode`` and a
    ``topology``, the glued path is checked edge by edge.
    """
    if lnn_mode and topology is not None:
        path = layout.glued_path
        for a, b in zip(path, path[1:]):
            if not topology.adjacent(a, b):
                raise CircuitError(f"glued path breaks between qubits {a} and {b} on {topology}")
    gates = wdb_gates(n, m, k, layout, lnn_mode)
    size = qubit_count or (topology.size if topology else max(layout.glued_path) + 1)
    return Circuit(size, tuple(gates), f"WDB({n},{m},{k})")


def reversal_swaps(register: Sequence[int]) -> list:
    """Odd-even transposition rounds reversing ``register``: list of rounds of index pairs."""
    k = len(register)
    order = list(range(k))  # order[p] = original slot now at position p
    rounds = []
    for t in range(k):
        rnd = []
        for p in range(t % 2, k - 1, 2):
            # a pair is out of order w.r.t. the reversed target when order[p] < order[p+1]
            if order[p] < order[p + 1]:
                order[p], order[p + 1] = order[p + 1], order[p]
                rnd.append((register[p], register[p + 1]))
        if rnd:
            rounds.append(rnd)
    assert order == list(range(k - 1, -1, -1))
    return rounds


def reverse_register_gates(register: Sequence[int]) -> list:
    return [g for rnd in reversal_swaps(register) for a, b in rnd for g in swap(a, b)]


def reverse_register(register: Sequence[int], qubit_count=None) -> Circuit:
    """Reverse the qubit order of ``register`` with nearest-neighbour SWAPs."""
    if not register:
        raise CircuitError("empty register")
    size = qubit_count or max(register) + 1
    return Circuit(size, tuple(reverse_register_gates(register)), f"reverse{tuple(register)}")
