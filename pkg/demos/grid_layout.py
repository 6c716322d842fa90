"""Show how D(16, 4) is laid out on a 4x4 grid, and a grid where no plan exists."""
from dicke_synth import PlanError, Topology, build_grid_plan, metrics, prepare_dicke, schedule_grid, validate_connectivity

plan = build_grid_plan(16, 4, 4, 4)
print(f"mode={plan.mode}, rectangles of {plan.rect_shape[0]}x{plan.rect_shape[1]}")
for rect in plan.rects.values():
    print(f"  {rect.name}: tier {rect.tier}, snake {plan.final[rect.name]}")
for i, line in enumerate(schedule_grid(plan).summary(), 1):
    print(f"  round {i}: {line}")

topo = Topology.grid(4, 4)
c = prepare_dicke(16, 4, topo)
print("lowered-mode violations:", len(validate_connectivity(c, topo)))
print("depth", metrics(c).depth)

# a k-qubit block must fit in a row or a column, or tile the grid exactly
try:
    build_grid_plan(9, 4, 3, 3)
except PlanError as exc:
    print("3x3, k=4:", exc)
