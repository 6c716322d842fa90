"""Walk through the all-to-all schedule for D(11, 3) and check every weight."""
from dicke_synth import Topology, metrics, oracle_dicke_state, plan_for, prepare_dicke, run
from dicke_synth.circuit import Circuit, x
from dicke_synth.simulator import fidelity

n, k = 11, 3
topo = Topology.all_to_all(n)
sched = plan_for(n, k, topo)

print(f"D({n},{k}) on all-to-all: sets of {k} qubits merged into a tree, then split again")
for i, line in enumerate(sched.summary(), 1):
    print(f"  round {i}: {line}")
print("input register (unary weight goes here):", sched.input_register)

# the same schedule distributes any weight l <= k
for ell in range(k + 1):
    load = tuple(x(q) for q in sched.input_register[k - ell:])
    c = Circuit(n, load + sched.circuit().gates)
    print(f"  l={ell}: fidelity {fidelity(run(c), oracle_dicke_state(n, ell)):.12f}")

m = metrics(prepare_dicke(n, k))
print(f"depth {m.depth}, CNOTs {m.cnot_count}, gates {m.total_gates}")
