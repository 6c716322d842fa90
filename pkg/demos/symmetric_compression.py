"""Prepare a symmetric state, then squeeze it into ceil(log2(k+1)) qubits."""
import numpy as np

from dicke_synth import build_compression, oracle_symmetric_state, prepare_symmetric, run
from dicke_synth.dsu import binary_width
from dicke_synth.simulator import dump_state, fidelity

n, k = 8, 3
rng = np.random.default_rng(5)
alpha = rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1)
alpha /= np.linalg.norm(alpha)

psi = run(prepare_symmetric(n, k, alpha))
print("fidelity vs oracle:", round(fidelity(psi, oracle_symmetric_state(n, alpha)), 12))

out = run(build_compression(n, k), psi)
b = binary_width(k)
print(f"after compression only the last {b} qubits are populated:")
print(dump_state(out, 1e-9))
print("recovered alpha:", np.round(out[: k + 1], 6))
print("original alpha: ", np.round(alpha, 6))
