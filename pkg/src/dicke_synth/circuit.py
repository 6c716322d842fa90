"""Gate-level circuit representation, metrics, lowering and connectivity checks.

Qubit 0 is the most significant bit of every basis-state index (big-endian).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

# Gate kinds. PHASE is not a composite; it is needed in the lowered basis
# because {X, RY, CX} has no determinant -1 element on three qubits.
X = "x"
RY = "ry"
PHASE = "p"
CX = "cx"
CRY = "cry"
CCX = "ccx"
CSWAP = "cswap"

ARITY = {X: 1, RY: 1, PHASE: 1, CX: 2, CRY: 2, CCX: 3, CSWAP: 3}
PARAMETRIC = {RY, PHASE, CRY}
BASIS = {X, RY, PHASE, CX}


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    angle: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ARITY:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        qs = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qs)
        if len(qs) != ARITY[self.kind]:
            raise CircuitError(f"{self.kind} acts on {ARITY[self.kind]} qubits, got {qs}")
        if len(set(qs)) != len(qs):
            raise CircuitError(f"repeated qubit in {self.kind}{qs}")
        if min(qs) < 0:
            raise CircuitError(f"negative qubit index in {self.kind}{qs}")
        if self.kind in PARAMETRIC:
            if self.angle is None or not math.isfinite(self.angle):
                raise CircuitError(f"{self.kind} needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise CircuitError(f"{self.kind} takes no angle")

    def inverse(self) -> "Gate":
        if self.kind in PARAMETRIC:
            return Gate(self.kind, self.qubits, -self.angle)
        return self

    def remap(self, mapping) -> "Gate":
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.angle)

    def __str__(self):
        args = ",".join(map(str, self.qubits))
        if self.angle is None:
            return f"{self.kind}({args})"
        return f"{self.kind}[{self.angle:.6g}]({args})"


def x(q):
    return Gate(X, (q,))


def ry(q, angle):
    return Gate(RY, (q,), angle)


def phase(q, angle):
    return Gate(PHASE, (q,), angle)


def cx(c, t):
    return Gate(CX, (c, t))


def cry(c, t, angle):
    return Gate(CRY, (c, t), angle)


def ccx(c1, c2, t):
    return Gate(CCX, (c1, c2, t))


def cswap(c, a, b):
    return Gate(CSWAP, (c, a, b))


def swap(a, b):
    """SWAP as three CX gates (SWAP is not a native kind)."""
    return [cx(a, b), cx(b, a), cx(a, b)]


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    gates: tuple = ()
    label: str = ""

    def __post_init__(self):
        if self.qubit_count < 1:
            raise CircuitError("qubit_count must be positive")
        gates = tuple(self.gates)
        for g in gates:
            if not isinstance(g, Gate):
                raise CircuitError(f"not a Gate: {g!r}")
            if max(g.qubits) >= self.qubit_count:
                raise CircuitError(f"{g} out of range for {self.qubit_count} qubits")
        object.__setattr__(self, "gates", gates)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.qubit_count != self.qubit_count:
            raise CircuitError("qubit counts differ")
        return Circuit(self.qubit_count, self.gates + other.gates, self.label)

    def with_label(self, label: str) -> "Circuit":
        return Circuit(self.qubit_count, self.gates, label)


def invert(circuit: Circuit) -> Circuit:
    """Adjoint circuit: reversed order, every gate replaced by its inverse."""
    return Circuit(
        circuit.qubit_count,
        tuple(g.inverse() for g in reversed(circuit.gates)),
        circuit.label + "^dagger" if circuit.label else "",
    )


# --- metrics ----------------------------------------------------------------


def layers(circuit: Circuit) -> list:
    """ASAP layering: list of layers, each a list of gate indices."""
    front = {}
    out = []
    for i, g in enumerate(circuit.gates):
        lvl = max((front.get(q, 0) for q in g.qubits), default=0)
        for q in g.qubits:
            front[q] = lvl + 1
        if lvl == len(out):
            out.append([])
        out[lvl].append(i)
    return out


def compute_depth(circuit: Circuit) -> int:
    front = {}
    depth = 0
    for g in circuit.gates:
        lvl = max(front.get(q, 0) for q in g.qubits) + 1
        for q in g.qubits:
            front[q] = lvl
        depth = max(depth, lvl)
    return depth


@dataclass(frozen=True)
class Metrics:
    depth: int
    cnot_count: int
    total_gates: int
    histogram: dict = field(default_factory=dict)


def metrics(circuit: Circuit) -> Metrics:
    return Metrics(
        depth=compute_depth(circuit),
        cnot_count=count_cnots(circuit),
        total_gates=len(circuit.gates),
        histogram=dict(Counter(g.kind for g in circuit.gates)),
    )


# --- topologies -------------------------------------------------------------


@dataclass(frozen=True)
class Topology:
    """Connectivity model. Grid qubit index = row * cols + col."""

    kind: str
    rows: int
    cols: int

    @classmethod
    def all_to_all(cls, n):
        return cls("all-to-all", 1, n)

    @classmethod
    def path(cls, n):
        return cls("path", 1, n)

    @classmethod
    def grid(cls, rows, cols):
        return cls("grid", rows, cols)

    def __post_init__(self):
        if self.kind not in ("all-to-all", "path", "grid"):
            raise CircuitError(f"unknown topology {self.kind!r}")
        if self.rows < 1 or self.cols < 1:
            raise CircuitError("topology dimensions must be positive")

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def coords(self, q):
        return divmod(q, self.cols)

    def adjacent(self, a, b) -> bool:
        if a == b:
            return False
        if self.kind == "all-to-all":
            return True
        if self.kind == "path":
            return abs(a - b) == 1
        (ra, ca), (rb, cb) = self.coords(a), self.coords(b)
        return abs(ra - rb) + abs(ca - cb) == 1

    def neighbors(self, q):
        return [p for p in range(self.size) if self.adjacent(q, p)]

    def path_order(self, qubits) -> Optional[tuple]:
        """Order the qubits as a simple path in this topology, or None."""
        qs = list(qubits)
        if len(qs) <= 1:
            return tuple(qs)
        for start in qs:
            order = _extend_path([start], set(qs) - {start}, self)
            if order is not None:
                return tuple(order)
        return None

    def __str__(self):
        if self.kind == "grid":
            return f"grid({self.rows}x{self.cols})"
        return f"{self.kind}({self.size})"


def _extend_path(prefix, rest, topo):
    if not rest:
        return prefix
    for q in sorted(rest):
        if topo.adjacent(prefix[-1], q):
            found = _extend_path(prefix + [q], rest - {q}, topo)
            if found is not None:
                return found
    return None


# --- lowering ---------------------------------------------------------------

_H = lambda q: [phase(q, math.pi), ry(q, math.pi / 2)]
_T = lambda q: phase(q, math.pi / 4)
_TDG = lambda q: phase(q, -math.pi / 4)


def _toffoli_standard(a, b, t):
    # textbook 6-CX Toffoli; H and T written in the {RY, Phase} basis
    return [
        *_H(t), cx(b, t), _TDG(t), cx(a, t), _T(t), cx(b, t), _TDG(t), cx(a, t),
        _T(b), _T(t), *_H(t), cx(a, b), _T(a), _TDG(b), cx(a, b),
    ]


def _toffoli_line(p, q, r, target):
    """Toffoli on the path p - q - r (q in the middle), 8 nearest-neighbour CX.

    CCZ is symmetric in its three qubits, so the CCZ phase polynomial is laid
    down with CX only on (p, q) and (q, r), then conjugated by H on the target.
    """
    return [
        *_H(target),
        _T(p), _T(q), _T(r),
        cx(p, q), _TDG(q),             # q = p^q
        cx(q, r), _T(r),               # r = p^q^r
        cx(p, q), cx(q, r), _TDG(r),   # q = q, r = p^r
        cx(p, q), cx(q, r), _TDG(r),   # q = p^q, r = q^r
        cx(p, q), cx(q, r),            # restored
        *_H(target),
    ]


def _line_segment(qubits, topology):
    if topology is None:
        s = sorted(qubits)
        if s[2] - s[0] == 2:
            return tuple(s)
        return None
    return topology.path_order(qubits)


def lower_gate(gate: Gate, topology_aware=False, topology: Optional[Topology] = None) -> list:
    k = gate.kind
    if k in BASIS:
        return [gate]
    if k == CRY:
        c, t = gate.qubits
        th = gate.angle
        return [ry(t, th / 2), cx(c, t), ry(t, -th / 2), cx(c, t)]
    if k == CSWAP:
        c, a, b = gate.qubits
        return [cx(b, a)] + lower_gate(ccx(c, a, b), topology_aware, topology) + [cx(b, a)]
    if k == CCX:
        a, b, t = gate.qubits
        if not topology_aware:
            return _toffoli_standard(a, b, t)
        seg = _line_segment(gate.qubits, topology)
        if seg is None:
            raise CircuitError(f"Toffoli {gate} is not on a contiguous path segment")
        return _toffoli_line(*seg, target=t)
    raise CircuitError(f"cannot lower {gate}")


def lower_to_basis(circuit: Circuit, topology_aware=False, topology: Optional[Topology] = None) -> Circuit:
    """Rewrite into {X, RY, Phase, CX}.

    With ``topology_aware`` every Toffoli must sit on three consecutive path
    qubits (of ``topology``, or consecutive indices when no topology is given)
    and is lowered with the 8-CX nearest-neighbour form.
    """
    out = []
    for i, g in enumerate(circuit.gates):
        try:
            out.extend(lower_gate(g, topology_aware, topology))
        except CircuitError as exc:
            raise CircuitError(f"gate #{i}: {exc}") from None
    return Circuit(circuit.qubit_count, tuple(out), circuit.label)


def count_cnots(circuit: Circuit) -> int:
    per_kind = {X: 0, RY: 0, PHASE: 0, CX: 1, CRY: 2, CCX: 6, CSWAP: 8}
    return sum(per_kind[g.kind] for g in circuit.gates)


# --- connectivity -----------------------------------------------------------


@dataclass
class ValidationReport:
    mode: str
    violations: list  # (gate index, qubits)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self):
        return len(self.violations)


def validate_connectivity(circuit: Circuit, topology: Topology, mode="lowered") -> ValidationReport:
    """Check every multi-qubit interaction against ``topology``.

    ``gate_support``: each multi-qubit gate's qubits must form a path.
    ``lowered``: after topology-aware lowering, every CX must be on an edge.
    Violations carry the index of the offending gate in ``circuit``.
    """
    if circuit.qubit_count != topology.size:
        raise CircuitError(
            f"circuit has {circuit.qubit_count} qubits, topology {topology} has {topology.size}"
        )
    if mode not in ("gate_support", "lowered"):
        raise CircuitError(f"unknown mode {mode!r}")
    bad = []
    for i, g in enumerate(circuit.gates):
        if len(g.qubits) < 2:
            continue
        if mode == "gate_support":
            if topology.path_order(g.qubits) is None:
                bad.append((i, g.qubits))
            continue
        try:
            low = lower_gate(g, True, topology)
        except CircuitError:
            bad.append((i, g.qubits))
            continue
        for h in low:
            if len(h.qubits) == 2 and not topology.adjacent(*h.qubits):
                bad.append((i, h.qubits))
    return ValidationReport(mode, bad)
