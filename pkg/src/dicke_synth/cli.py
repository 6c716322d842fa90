"""dicke-synth: synthesize, verify, sweep and plan Dicke-state circuits."""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys

from .circuit import Circuit, CircuitError, Topology, metrics, validate_connectivity, x
from .combinatorics import oracle_dicke_state
from .planner import plan_for, prepare_dicke
from .serialize import to_json, to_qasm
from .simulator import SimulationError, fidelity, qubit_cap, run

FIDELITY_TOL = 1e-9
CSV_FIELDS = ["n", "k", "topology", "depth", "cnot_count", "total_gates", "rounds", "normalized_depth"]


def _topology(kind, n, rows=None, cols=None) -> Topology:
    if kind == "all-to-all":
        return Topology.all_to_all(n)
    if kind == "path":
        return Topology.path(n)
    if rows is None or cols is None:
        raise CircuitError("grid topology needs --rows and --cols")
    if rows * cols != n:
        raise CircuitError(f"--rows {rows} x --cols {cols} does not equal --n {n}")
    return Topology.grid(rows, cols)


def _dicke(n, k, topo, s):
    """prepare_dicke plus the schedule it ran (the complement's when k > n/2)."""
    inner = n - k if 2 * k > n else k
    sched = plan_for(n, inner, topo, s) if inner >= 1 else None
    return prepare_dicke(n, k, topo, s), sched


def _weighted_circuit(args, topo, ell):
    """DSU(n, k) schedule fed with weight ``ell``; ``ell`` = k is D(n, k) itself."""
    if ell == args.k:
        return _dicke(args.n, args.k, topo, args.s)
    sched = plan_for(args.n, args.k, topo, args.s)
    load = tuple(x(q) for q in sched.input_register[len(sched.input_register) - ell:])
    return Circuit(args.n, load + sched.circuit().gates, f"D({args.n},{ell})"), sched


def cmd_synth(args) -> int:
    topo = _topology(args.topology, args.n, args.rows, args.cols)
    ell = args.k if args.l is None else args.l
    if not 0 <= ell <= args.k:
        raise CircuitError(f"--l must lie in [0, {args.k}]")
    circuit, sched = _weighted_circuit(args, topo, ell)
    text = to_qasm(circuit) if args.format == "qasm" else to_json(circuit, indent=1) + "\n"
    report = sys.stdout
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        report = sys.stderr
    met = metrics(circuit)
    if sched is not None:
        print("plan:", file=report)
        for i, line in enumerate(sched.summary(), 1):
            print(f"  round {i}: {line}", file=report)
    print(f"depth: {met.depth}", file=report)
    print(f"cnot_count: {met.cnot_count}", file=report)
    print(f"total_gates: {met.total_gates}", file=report)
    print(f"rounds: {sched.wdb_rounds if sched else 0}", file=report)
    return 0


def cmd_verify(args) -> int:
    topo = _topology(args.topology, args.n, args.rows, args.cols)
    if args.n > qubit_cap():
        print(f"error: n={args.n} exceeds simulator cap {qubit_cap()} (set DICKE_SIM_CAP)", file=sys.stderr)
        return 2
    weights = range(args.k + 1) if args.l is None else [args.l]
    ok = True
    for ell in weights:
        circuit, _ = _weighted_circuit(args, topo, ell)
        f = fidelity(oracle_dicke_state(args.n, ell), run(circuit))
        passed = f >= 1 - FIDELITY_TOL
        ok &= passed
        print(f"l={ell} fidelity={f:.12f} {'ok' if passed else 'FAIL'}")
    full = prepare_dicke(args.n, args.k, topo, args.s)
    violations = len(validate_connectivity(full, topo, "lowered"))
    print(f"connectivity_violations={violations}")
    ok &= violations == 0
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _square_grid(n):
    r = int(math.isqrt(n))
    while n % r:
        r -= 1
    return r, n // r


def normalized_depth(kind, n, k, depth) -> float:
    if kind == "all-to-all":
        return depth / (k * (1 + math.log2(n / k)))
    if kind == "grid":
        return depth / math.sqrt(n * k)
    return depth / n


def sweep_rows(kind, ns, ks, s=1) -> list:
    rows = []
    for n in sorted(set(ns)):
        for k in sorted(set(ks)):
            if not 1 <= k <= n:
                continue
            if kind == "grid":
                topo = Topology.grid(*_square_grid(n))
            else:
                topo = _topology(kind, n)
            circuit, sched = _dicke(n, k, topo, s)
            met = metrics(circuit)
            rows.append({
                "n": n, "k": k, "topology": str(topo), "depth": met.depth,
                "cnot_count": met.cnot_count, "total_gates": met.total_gates,
                "rounds": sched.wdb_rounds if sched else 0,
                "normalized_depth": f"{normalized_depth(kind, n, k, met.depth):.6f}",
            })
    return rows


def cmd_sweep(args) -> int:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(sweep_rows(args.topology, args.n, args.k, args.s))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_plan(args) -> int:
    topo = _topology(args.topology, args.n, args.rows, args.cols)
    text = plan_for(args.n, args.k, topo, args.s).to_json() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--topology", choices=["all-to-all", "path", "grid"], default="all-to-all")
    common.add_argument("--rows", type=int)
    common.add_argument("--cols", type=int)
    common.add_argument("--s", type=int, default=1, help="rectangle aspect parameter (grid)")
    common.add_argument("--out", help="output file (default: stdout)")

    single = argparse.ArgumentParser(add_help=False, parents=[common])
    single.add_argument("--n", type=int, required=True)
    single.add_argument("--k", type=int, required=True)
    single.add_argument("--l", type=int, help="input weight fed to the DSU(n, k) schedule (default k)")

    parser = argparse.ArgumentParser(prog="dicke-synth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    synth = sub.add_parser("synth", parents=[single], help="write a circuit and print metrics")
    synth.add_argument("--format", choices=["qasm", "json"], default="qasm")
    sub.add_parser("verify", parents=[single], help="simulate every weight l <= k")
    sweep = sub.add_parser("sweep", parents=[common], help="metrics CSV over n and k")
    sweep.add_argument("--n", type=int, nargs="+", required=True)
    sweep.add_argument("--k", type=int, nargs="+", required=True)
    sub.add_parser("plan", parents=[single], help="dump the schedule as JSON")
    return parser


COMMANDS = {"synth": cmd_synth, "verify": cmd_verify, "sweep": cmd_sweep, "plan": cmd_plan}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CircuitError, SimulationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
