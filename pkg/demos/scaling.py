"""Depth and CNOT scaling against the asymptotic shapes, without simulation."""
import math

from dicke_synth import Topology, metrics, prepare_dicke

print("all-to-all, depth / (k (1 + log2(n/k)))")
for k in (2, 4):
    row = []
    for j in range(1, 7):
        n = k * 2**j
        row.append(metrics(prepare_dicke(n, k)).depth / (k * (1 + math.log2(n / k))))
    print(f"  k={k}:", " ".join(f"{v:5.2f}" for v in row))

print("square grids, k=4, depth / sqrt(nk)")
for side in (4, 8, 16):
    n = side * side
    d = metrics(prepare_dicke(n, 4, Topology.grid(side, side))).depth
    print(f"  {side}x{side}: {d / math.sqrt(4 * n):.2f}")

print("CNOTs / (kn)")
for k in (2, 4, 8):
    print(f"  k={k}:", " ".join(f"{metrics(prepare_dicke(n, k)).cnot_count / (k * n):5.2f}" for n in (16, 32, 64, 128)))

# the hand-tuned D(8,2) circuits in the literature use 27 and 31 CNOTs
print("D(8,2) CNOTs: all-to-all", metrics(prepare_dicke(8, 2)).cnot_count,
      "| 4x2 grid", metrics(prepare_dicke(8, 2, Topology.grid(4, 2))).cnot_count)
