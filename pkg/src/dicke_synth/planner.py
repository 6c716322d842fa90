"""Recursion schedules for Dicke state preparation.

All-to-all: qubits are cut into sets of k (plus a remainder set), the sets are
merged by union-by-size into a tree, and the merges are undone with weight
distribution blocks, highest-tier child first. Grid: the grid is tiled by
rectangles of k qubits (or by k-qubit row blocks followed by whole-row
snakes); weight moves down the first column and then along every row.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .circuit import Circuit, CircuitError, Topology, x
from .dsu import dsu_gates
from .wdb import RegisterLayout, reverse_register_gates, wdb_gates


class PlanError(CircuitError):
    pass


# --- blocks and schedules ---------------------------------------------------


@dataclass(frozen=True)
class Block:
    """One WDB or DSU invocation.

    For a WDB, ``first`` is the source register (holding the weight) and
    ``second`` the receiving register; for a DSU, ``first`` is the placement.
    ``reverse`` is a register whose qubit order is reversed just before the
    block runs (empty when no reversal is needed).
    """

    kind: str
    n: int
    m: int
    k: int
    first: tuple
    second: tuple = ()
    source: str = ""
    target: str = ""
    lnn: bool = False
    reverse: tuple = ()

    @property
    def name(self) -> str:
        if self.kind == "wdb":
            return f"WDB({self.n},{self.m},{self.k})"
        return f"DSU({self.n},{self.k})"

    @property
    def support(self) -> frozenset:
        return frozenset(self.first) | frozenset(self.second) | frozenset(self.reverse)

    def gates(self) -> list:
        out = reverse_register_gates(self.reverse) if self.reverse else []
        if self.kind == "wdb":
            layout = RegisterLayout(self.first, self.second)
            out += wdb_gates(self.n, self.m, self.k, layout, self.lnn)
        else:
            out += dsu_gates(self.n, self.k, self.first, self.lnn)
        return out

    def to_dict(self) -> dict:
        d = {"block": self.name, "kind": self.kind, "n": self.n, "k": self.k}
        if self.kind == "wdb":
            d.update(m=self.m, first=list(self.first), second=list(self.second),
                     source=self.source, target=self.target)
        else:
            d.update(placement=list(self.first), target=self.target)
        d["lnn"] = self.lnn
        if self.reverse:
            d["reverse"] = list(self.reverse)
        return d


@dataclass
class Schedule:
    topology: Topology
    n: int
    k: int
    input_register: tuple
    rounds: list = field(default_factory=list)

    def blocks(self) -> list:
        return [b for rnd in self.rounds for b in rnd]

    @property
    def wdb_rounds(self) -> int:
        return sum(1 for rnd in self.rounds if any(b.kind == "wdb" for b in rnd))

    def check_disjoint(self):
        for i, rnd in enumerate(self.rounds):
            seen = set()
            for b in rnd:
                if seen & b.support:
                    raise PlanError(f"round {i}: {b.name} overlaps another block")
                seen |= b.support

    def summary(self) -> list:
        """Human-readable rounds, e.g. ['WDB(6,3,3) | WDB(5,2,3)', 'DSU(3,3) x3 | DSU(2,2)']."""
        lines = []
        for rnd in self.rounds:
            counts = Counter(b.name for b in rnd)
            names = dict.fromkeys(b.name for b in rnd)
            lines.append(" | ".join(f"{nm} x{counts[nm]}" if counts[nm] > 1 else nm for nm in names))
        return lines

    def circuit(self) -> Circuit:
        gates = [g for b in self.blocks() for g in b.gates()]
        return Circuit(self.topology.size, tuple(gates), f"plan D({self.n},{self.k})")

    def to_dict(self) -> dict:
        return {
            "topology": str(self.topology),
            "n": self.n,
            "k": self.k,
            "input_register": list(self.input_register),
            "wdb_rounds": self.wdb_rounds,
            "rounds": [[b.to_dict() for b in rnd] for rnd in self.rounds],
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


# --- all-to-all: tier tree ---------------------------------------------------


@dataclass
class TierNode:
    index: int
    size: int
    tier: int
    qubits: tuple = ()
    parent: Optional[int] = None
    children: list = field(default_factory=list)  # in merge order


@dataclass
class TierTree:
    n: int
    k: int
    nodes: list
    root: int
    merges: list  # (child, parent) in the order the unions happened

    def height(self) -> int:
        def h(i):
            return 1 + max((h(c) for c in self.nodes[i].children), default=0)

        return h(self.root)

    def label(self, i) -> str:
        return f"set{i}"


def build_tier_tree(n, k) -> TierTree:
    """Union-by-size over the k-sets (and the remainder set).

    The two lowest-tier roots are merged, the lower one becoming a child.
    Among equal tiers the lowest-index root is attached to the
    highest-index one.
    """
    if not 1 <= k <= n:
        raise PlanError(f"need 1 <= k <= n, got n={n}, k={k}")
    sizes = [k] * (n // k) + ([n % k] if n % k else [])
    nodes = [TierNode(i, s, s) for i, s in enumerate(sizes)]
    roots = set(range(len(nodes)))
    merges = []
    while len(roots) > 1:
        a = min(roots, key=lambda i: (nodes[i].tier, i))
        b = min(roots - {a}, key=lambda i: (nodes[i].tier, -i))
        nodes[a].parent = b
        nodes[b].children.append(a)
        nodes[b].tier += nodes[a].tier
        roots.remove(a)
        merges.append((a, b))
    root = roots.pop()

    # root on the last qubits, the other sets in index order before it
    order = [i for i in range(len(nodes)) if i != root] + [root]
    start = 0
    for i in order:
        nodes[i].qubits = tuple(range(start, start + nodes[i].size))
        start += nodes[i].size
    return TierTree(n, k, nodes, root, merges)


def unwind_tree(tree: TierTree, topology: Optional[Topology] = None, lnn=False) -> Schedule:
    """Undo the merges: each round, every active root splits off its
    highest-tier remaining child with WDB(x, y, k); then DSU per set."""
    k = tree.k
    nodes = tree.nodes
    topology = topology or Topology.all_to_all(tree.n)
    pending = {i: list(nodes[i].children) for i in range(len(nodes))}
    remaining = {i: nodes[i].tier for i in range(len(nodes))}
    active = [tree.root]
    rounds = []
    while True:
        rnd, born = [], []
        for i in active:
            if not pending[i]:
                continue
            c = max(reversed(pending[i]), key=lambda j: nodes[j].tier)
            pending[i].remove(c)
            xt, yt = remaining[i], nodes[c].tier
            r = min(yt, k)
            rnd.append(Block("wdb", xt, yt, k, nodes[i].qubits[-k:], nodes[c].qubits[-r:],
                             tree.label(i), tree.label(c), lnn))
            remaining[i] -= yt
            born.append(c)
        if not rnd:
            break
        active += born
        rounds.append(rnd)
    leaves = [Block("dsu", nd.size, 0, nd.size, nd.qubits, target=tree.label(nd.index), lnn=lnn)
              for nd in nodes if nd.size > 1]
    if leaves:
        rounds.append(leaves)
    return Schedule(topology, tree.n, k, nodes[tree.root].qubits, rounds)


# --- grid ----------------------------------------------------------------------


@dataclass
class Rect:
    name: str
    row: int        # position in the rectangle grid
    col: int
    cells: tuple    # virtual (r, c) coordinates
    tier: int


@dataclass
class GridPlan:
    rows: int
    cols: int
    n: int
    k: int
    s: int
    mode: str                  # "perfect" or "row_snake"
    transposed: bool           # bands run along grid columns
    rect_shape: tuple          # (height, width) of a rectangle / block
    rects: dict                # (i, j) -> Rect
    steps: list                # [(phase, [(src, tgt, reverse_src), ...]), ...]
    snakes: dict               # rect name -> qubit order when the rect first receives weight
    final: dict                # rect name -> qubit order at leaf time
    leaf_reverse: dict         # rect name -> order reversed just before its leaf DSU
    leaf_paths: dict           # rect name -> DSU placement

    def qubit(self, cell) -> int:
        r, c = cell
        return c * self.cols + r if self.transposed else r * self.cols + c

    @property
    def root(self) -> Rect:
        return self.rects[(0, 0)]


def _rect_cells(top, left, h, w):
    return tuple((top + a, left + b) for a in range(h) for b in range(w))


def _boustrophedon(cells, start, style):
    """Hamiltonian path through a rectangle starting at corner ``start``.

    ``style`` 'row' sweeps rows (moving away from the start row), 'col'
    sweeps columns.
    """
    rs = sorted({r for r, _ in cells})
    cs = sorted({c for _, c in cells})
    if start[0] not in (rs[0], rs[-1]) or start[1] not in (cs[0], cs[-1]):
        return None
    r_order = rs if start[0] == rs[0] else rs[::-1]
    c_order = cs if start[1] == cs[0] else cs[::-1]
    path = []
    if style == "row":
        for t, r in enumerate(r_order):
            seq = c_order if t % 2 == 0 else c_order[::-1]
            path += [(r, c) for c in seq]
    else:
        for t, c in enumerate(c_order):
            seq = r_order if t % 2 == 0 else r_order[::-1]
            path += [(r, c) for r in seq]
    return path


def _adjacent(a, b):
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


class _SnakeSolver:
    """Tracks rect orientations (head = order[0], weight at order[-1])."""

    def __init__(self, rects):
        self.rects = rects
        self.orient = {}

    def connect(self, src, tgt, style):
        """Orient ``tgt`` so its tail touches the head of ``src``.

        Reverses ``src`` first when only its tail touches ``tgt``. Returns
        whether ``src`` was reversed.
        """
        cells = self.rects[tgt].cells
        for flip in (False, True):
            order = self.orient[src]
            end = order[-1] if flip else order[0]
            for e in cells:
                if _adjacent(end, e):
                    path = _boustrophedon(cells, e, style)
                    if path is not None:
                        if flip:
                            self.orient[src] = order[::-1]
                        self.orient[tgt] = path[::-1]
                        return flip
        raise PlanError(f"no snake gluing between {self.rects[src].name} and {self.rects[tgt].name}")


def _perfect_shapes(rows, cols, k, s):
    out = []
    for h in range(1, k + 1):
        if k % h:
            continue
        w = k // h
        if rows % h == 0 and cols % w == 0 and rows // h == cols // w:
            out.append((h, w))
    want_h = math.sqrt(k / s)
    out.sort(key=lambda hw: (abs(math.log(hw[0] / want_h)), hw[0]))
    return out


def build_grid_plan(n, k, rows, cols, s=1) -> GridPlan:
    """Rectangle layout for D(n, k) on a rows x cols grid.

    Perfect mode needs equal-count tilings by k-qubit rectangles; the shape
    sqrt(k/s) x sqrt(ks) is preferred when it fits. Otherwise bands of one
    grid row (or, failing that, one grid column) are used: a k-qubit block at
    the start of every band plus a snake over the whole band.
    """
    if rows * cols != n:
        raise PlanError(f"grid {rows}x{cols} holds {rows * cols} qubits, not n={n}")
    if not 1 <= k <= n:
        raise PlanError(f"need 1 <= k <= n, got n={n}, k={k}")
    if not 1 <= s <= k:
        raise PlanError(f"need 1 <= s <= k, got s={s}")
    shapes = _perfect_shapes(rows, cols, k, s)
    if shapes:
        return _perfect_plan(n, k, rows, cols, s, shapes[0])
    if cols >= k:
        return _row_snake_plan(n, k, rows, cols, s, transposed=False)
    if rows >= k:
        return _row_snake_plan(n, k, cols, rows, s, transposed=True)
    raise PlanError(
        f"no grid plan for n={n}, k={k} on {rows}x{cols}: no k-qubit rectangle tiling "
        f"and neither side holds k={k} qubits"
    )


def _perfect_plan(n, k, rows, cols, s, shape):
    h, w = shape
    R = rows // h
    rects = {}
    for i in range(R):
        for j in range(R):
            tier = (R - i) * R * k if j == 0 else (R - j) * k
            rects[(i, j)] = Rect(f"R{i},{j}", i, j, _rect_cells(i * h, j * w, h, w), tier)
    solver = _SnakeSolver(rects)
    root = rects[(0, 0)]
    # head at the bottom-right corner when a row sweep allows it
    start = (0, w - 1) if h % 2 == 0 else (0, 0)
    solver.orient[(0, 0)] = _boustrophedon(root.cells, start, "row")[::-1]
    snakes = {root.name: solver.orient[(0, 0)]}

    steps = []
    column = []
    for i in range(R - 1):
        flip = solver.connect((i, 0), (i + 1, 0), "row")
        snakes[rects[(i + 1, 0)].name] = solver.orient[(i + 1, 0)]
        column.append(((i, 0), (i + 1, 0), flip))
    steps += [("column", [st]) for st in column]
    row_rounds = [[] for _ in range(R - 1)]
    for i in range(R):
        for j in range(R - 1):
            flip = solver.connect((i, j), (i, j + 1), "col")
            snakes[rects[(i, j + 1)].name] = solver.orient[(i, j + 1)]
            row_rounds[j].append(((i, j), (i, j + 1), flip))
    steps += [("row", rnd) for rnd in row_rounds]

    plan = GridPlan(rows, cols, n, k, s, "perfect", False, (h, w), rects, steps,
                    {}, {}, {}, {})
    plan.snakes = {nm: tuple(plan.qubit(c) for c in o) for nm, o in snakes.items()}
    for key, rect in rects.items():
        order = tuple(plan.qubit(c) for c in solver.orient[key])
        plan.final[rect.name] = order
        plan.leaf_paths[rect.name] = order
    return plan


def _row_snake_plan(n, k, bands, length, s, transposed):
    # virtual grid: ``bands`` rows of ``length`` cells; transposed maps back to columns
    rects = {}
    for i in range(bands):
        rects[(i, 0)] = Rect(f"B{i}", i, 0, _rect_cells(i, 0, 1, k), (bands - i) * length)
    solver = _SnakeSolver(rects)
    solver.orient[(0, 0)] = [(0, c) for c in range(k - 1, -1, -1)]
    snakes = {"B0": solver.orient[(0, 0)]}
    steps = []
    for i in range(bands - 1):
        flip = solver.connect((i, 0), (i + 1, 0), "row")
        snakes[f"B{i + 1}"] = solver.orient[(i + 1, 0)]
        steps.append(("column", [((i, 0), (i + 1, 0), flip)]))

    rows, cols = (length, bands) if transposed else (bands, length)
    plan = GridPlan(rows, cols, n, k, s, "row_snake", transposed, (1, k), rects, steps,
                    {}, {}, {}, {})
    plan.snakes = {nm: tuple(plan.qubit(c) for c in o) for nm, o in snakes.items()}
    for i in range(bands):
        order = solver.orient[(i, 0)]
        want = [(i, c) for c in range(k - 1, -1, -1)]  # weight ends on the band's first cell
        name = f"B{i}"
        plan.final[name] = tuple(plan.qubit(c) for c in order)
        if order != want:
            plan.leaf_reverse[name] = plan.final[name]
        band = [(i, c) for c in range(length - 1, -1, -1)]
        plan.leaf_paths[name] = tuple(plan.qubit(c) for c in band)
    return plan


def schedule_grid(plan: GridPlan) -> Schedule:
    """Column rounds, then row rounds (rows in parallel), then leaf DSUs."""
    topo = Topology.grid(plan.rows, plan.cols)
    k = plan.k
    rects = plan.rects
    qubits = lambda cells: tuple(plan.qubit(c) for c in cells)

    # replay orientations so every block sees the order valid at its time
    orient = {(0, 0): list(plan.snakes[plan.root.name])}
    rounds = []
    for phase, steps in plan.steps:
        rnd = []
        for src, tgt, flip in steps:
            rev = ()
            if flip:
                rev = tuple(orient[src])
                orient[src] = orient[src][::-1]
            orient[tgt] = list(plan.snakes[rects[tgt].name])
            xt = rects[src].tier if phase == "column" else _row_tier(plan, src)
            yt = rects[tgt].tier if phase == "column" else _row_tier(plan, tgt)
            rnd.append(Block("wdb", xt, yt, k, tuple(orient[src]), tuple(orient[tgt]),
                             rects[src].name, rects[tgt].name, True, rev))
        rounds.append(rnd)

    leaves = []
    for key, rect in rects.items():
        assert tuple(orient[key]) == plan.final[rect.name]
        if plan.mode == "perfect":
            leaves.append(Block("dsu", k, 0, k, plan.leaf_paths[rect.name], target=rect.name, lnn=True))
        else:
            path = plan.leaf_paths[rect.name]
            leaves.append(Block("dsu", len(path), 0, k, path, target=rect.name, lnn=True,
                                reverse=plan.leaf_reverse.get(rect.name, ())))
    rounds.append(leaves)
    return Schedule(topo, plan.n, k, plan.snakes[plan.root.name], rounds)


def _row_tier(plan, key):
    i, j = key
    R = plan.rows // plan.rect_shape[0]
    return (R - j) * plan.k


# --- dispatch ----------------------------------------------------------------


def plan_for(n, k, topology: Topology, s=1) -> Schedule:
    """Schedule realizing DSU(n, k) with its input register on ``topology``."""
    if topology.size != n:
        raise PlanError(f"topology {topology} has {topology.size} qubits, n={n}")
    if not 1 <= k <= n:
        raise PlanError(f"need 1 <= k <= n, got n={n}, k={k}")
    if topology.kind == "all-to-all":
        sched = unwind_tree(build_tier_tree(n, k), topology)
    elif topology.kind == "path":
        block = Block("dsu", n, 0, k, tuple(range(n)), target="path", lnn=True)
        sched = Schedule(topology, n, k, tuple(range(n - k, n)), [[block]] if n > 1 else [])
    else:
        sched = schedule_grid(build_grid_plan(n, k, topology.rows, topology.cols, s))
    sched.check_disjoint()
    return sched


def prepare_dicke(n, k, topology: Optional[Topology] = None, s=1) -> Circuit:
    """|0...0> -> D(n, k) respecting ``topology``.

    For k > n/2 the complement D(n, n-k) is prepared and every qubit flipped.
    """
    topology = topology or Topology.all_to_all(n)
    if topology.size != n:
        raise PlanError(f"topology {topology} has {topology.size} qubits, n={n}")
    if not 0 <= k <= n:
        raise PlanError(f"need 0 <= k <= n, got n={n}, k={k}")
    if k == 0:
        return Circuit(n, (), f"D({n},0)")
    if 2 * k > n:
        inner = prepare_dicke(n, n - k, topology, s)
        return Circuit(n, inner.gates + tuple(x(q) for q in range(n)), f"D({n},{k})")
    sched = plan_for(n, k, topology, s)
    load = tuple(x(q) for q in sched.input_register)
    return Circuit(n, load + sched.circuit().gates, f"D({n},{k})")
