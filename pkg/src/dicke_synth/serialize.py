"""OpenQASM 2.0 and JSON round-trip for native-gate circuits."""
from __future__ import annotations

import json
import re

from .circuit import CCX, CRY, CSWAP, CX, PHASE, RY, X, Circuit, CircuitError, Gate

# Self-contained definitions on top of the U / CX builtins, so the output
# does not depend on which qelib1.inc a consumer ships.
QASM_HEADER = """OPENQASM 2.0;
// big-endian: q[0] is the most significant bit
gate x a { U(pi,0,pi) a; }
gate ry(theta) a { U(theta,0,0) a; }
gate p(lambda) a { U(0,0,lambda) a; }
gate cx c,t { CX c,t; }
gate h a { U(pi/2,0,pi) a; }
gate t a { U(0,0,pi/4) a; }
gate tdg a { U(0,0,-pi/4) a; }
gate ccx a,b,c { h c; cx b,c; tdg c; cx a,c; t c; cx b,c; tdg c; cx a,c; t b; t c; h c; cx a,b; t a; tdg b; cx a,b; }
gate cswap c,a,b { cx b,a; ccx c,a,b; cx b,a; }
gate cry(theta) c,t { ry(theta/2) t; cx c,t; ry(-theta/2) t; cx c,t; }
"""

_NATIVE = {X, RY, PHASE, CX, CRY, CCX, CSWAP}


def to_qasm(circuit: Circuit) -> str:
    lines = [QASM_HEADER.rstrip("\n")]
    if circuit.label:
        lines.append(f"// label: {json.dumps(circuit.label)}")
    lines.append(f"qreg q[{circuit.qubit_count}];")
    for g in circuit.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.angle is None:
            lines.append(f"{g.kind} {args};")
        else:
            lines.append(f"{g.kind}({g.angle!r}) {args};")
    return "\n".join(lines) + "\n"


_GATE_LINE = re.compile(r"^(\w+)(?:\(([^)]*)\))?\s+(.+);$")
_QUBIT = re.compile(r"^q\[(\d+)\]$")


def from_qasm(text: str) -> Circuit:
    """Parse the output of :func:`to_qasm` (native gates, float-literal angles)."""
    size = None
    label = ""
    gates = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("// label:"):
            label = json.loads(line[len("// label:"):].strip())
            continue
        if not line or line.startswith("//") or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        if line.startswith("gate "):
            continue
        if line.startswith("qreg"):
            m = re.match(r"^qreg\s+q\[(\d+)\];$", line)
            if not m:
                raise CircuitError(f"line {lineno}: unsupported register {line!r}")
            size = int(m.group(1))
            continue
        m = _GATE_LINE.match(line)
        if not m or m.group(1) not in _NATIVE:
            raise CircuitError(f"line {lineno}: cannot parse {line!r}")
        kind, angle, args = m.groups()
        qubits = []
        for a in args.split(","):
            qm = _QUBIT.match(a.strip())
            if not qm:
                raise CircuitError(f"line {lineno}: bad operand {a!r}")
            qubits.append(int(qm.group(1)))
        gates.append(Gate(kind, tuple(qubits), float(angle) if angle is not None else None))
    if size is None:
        raise CircuitError("no qreg declaration")
    return Circuit(size, tuple(gates), label)


def to_dict(circuit: Circuit) -> dict:
    out = []
    for g in circuit.gates:
        d = {"kind": g.kind, "qubits": list(g.qubits)}
        if g.angle is not None:
            d["angle"] = g.angle
        out.append(d)
    return {"qubit_count": circuit.qubit_count, "gates": out, "label": circuit.label}


def to_json(circuit: Circuit, indent=None) -> str:
    return json.dumps(to_dict(circuit), indent=indent)


def from_dict(data: dict) -> Circuit:
    try:
        gates = tuple(
            Gate(g["kind"], tuple(g["qubits"]), g.get("angle")) for g in data["gates"]
        )
        return Circuit(int(data["qubit_count"]), gates, data.get("label", ""))
    except (KeyError, TypeError) as exc:
        raise CircuitError(f"malformed circuit JSON: {exc}") from None


def from_json(text: str) -> Circuit:
    return from_dict(json.loads(text))

