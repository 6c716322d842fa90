"""Shared oracles for the test modules."""
import numpy as np

from dicke_synth import Circuit, PlanError, Topology, plan_for
from dicke_synth.circuit import x
from dicke_synth.combinatorics import split_coefficients
from dicke_synth.simulator import basis_state, run
from dicke_synth.wdb import RegisterLayout, build_wdb


def wdb_expected(n, m, k, ell):
    """Ideal WDB output on the glued (second + first) register."""
    r = min(m, k)
    co = split_coefficients(n, m, k, ell)
    psi = np.zeros(2 ** (r + k), complex)
    for i, xi in enumerate(co.x):
        if xi:
            idx = (((1 << i) - 1) << k) | ((1 << (ell - i)) - 1)
            psi[idx] = np.sqrt(xi / co.total)
    return psi


def wdb_worst_error(n, m, k, lnn):
    r = min(m, k)
    size = r + k
    layout = RegisterLayout(tuple(range(r, size)), tuple(range(r)))
    c = build_wdb(n, m, k, layout, lnn, Topology.path(size) if lnn else None)
    worst = 0.0
    for ell in range(k + 1):
        psi = run(c, basis_state(size, (1 << ell) - 1))
        worst = max(worst, float(np.abs(psi - wdb_expected(n, m, k, ell)).max()))
    return worst


def weighted_circuit(n, k, ell, topology):
    """The DSU(n, k) schedule on ``topology`` with weight ``ell`` loaded."""
    sched = plan_for(n, k, topology)
    reg = sched.input_register
    load = tuple(x(q) for q in reg[len(reg) - ell:])
    return Circuit(topology.size, load + sched.circuit().gates)


def grid_shapes(n):
    return [(r, n // r) for r in range(2, n) if n % r == 0 and n // r >= 2]


def feasible_grids(n, k):
    out = []
    for rows, cols in grid_shapes(n):
        topo = Topology.grid(rows, cols)
        try:
            plan_for(n, k, topo)
        except PlanError:
            continue
        out.append(topo)
    return out


# criterion number -> (passed, detail); filled by test_acceptance, printed by conftest
ACCEPTANCE = {}
