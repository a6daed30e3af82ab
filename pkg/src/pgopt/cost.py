"""Nearest-neighbour CX cost model and ladder compilation for gadgets.

The cost of a phase gadget on a topology is the weight of a minimum
spanning tree over its legs, taken in the complete graph whose edge
weight between legs u and v is 4*d(u, v) - 2 for graph distance d.
That weight is exactly the number of adjacent-qubit CX gates in the
compiled form produced by :func:`compile_gadget`: one CX ladder per
tree edge on each side of a single rotation on the lowest-index leg.

Prim's algorithm starts from the lowest-index leg and breaks ties
lexicographically on (weight, new vertex, attached partner), so the
tree, and hence the compiled gate list, is deterministic.
"""

from dataclasses import dataclass

from .circuit import CXGate, PhaseCircuit, PhaseGadget, Angle
from .topology import Topology


@dataclass(frozen=True)
class Rotation:
    """Single-qubit rotation exp(i*angle*Z) or exp(i*angle*X)."""

    basis: str
    angle: Angle
    qubit: int


@dataclass(frozen=True)
class GadgetCost:
    """Spanning-tree breakdown of one gadget's CX cost.

    ``edges`` lists (parent, child, distance) in Prim attach order;
    ``root`` is the lowest-index leg and carries the rotation.
    """

    cost: int
    root: int
    edges: tuple[tuple[int, int, int], ...]


def _prim(legs: list[int], dist) -> GadgetCost:
    # legs sorted ascending, at least one entry; dist indexable as dist[i][j]
    root = legs[0]
    best: dict[int, tuple[int, int]] = {}
    for v in legs[1:]:
        best[v] = (4 * int(dist[root][v]) - 2, root)
    edges = []
    cost = 0
    while best:
        v = min(best, key=lambda u: (best[u][0], u, best[u][1]))
        w, parent = best.pop(v)
        cost += w
        edges.append((parent, v, (w + 2) // 4))
        for u in best:
            cand = (4 * int(dist[v][u]) - 2, v)
            if cand < best[u]:
                best[u] = cand
    return GadgetCost(cost, root, tuple(edges))


def _bits_to_sorted(bits: int) -> list[int]:
    out = []
    q = 0
    while bits:
        if bits & 1:
            out.append(q)
        bits >>= 1
        q += 1
    return out


class CostCache:
    """Memo of leg bitset -> MST cost for one fixed topology."""

    __slots__ = ("_dist", "_table")

    def __init__(self, topology: Topology):
        self._dist = topology.dist.tolist()
        self._table: dict[int, int] = {}

    def cost(self, bits: int) -> int:
        if bits & (bits - 1) == 0:
            return 0
        c = self._table.get(bits)
        if c is None:
            c = _prim(_bits_to_sorted(bits), self._dist).cost
            self._table[bits] = c
        return c


def spanning_tree(gadget: PhaseGadget, topology: Topology) -> GadgetCost:
    """Tie-broken minimum spanning tree over the gadget's legs."""
    if max(gadget.legs) >= topology.num_qubits:
        raise ValueError(
            f"legs {sorted(gadget.legs)} out of range for {topology.num_qubits}-qubit topology"
        )
    return _prim(sorted(gadget.legs), topology.dist)


def gadget_cost(gadget: PhaseGadget, topology: Topology) -> int:
    """Number of adjacent-qubit CX gates needed for one gadget."""
    if len(gadget.legs) <= 1:
        return 0
    return spanning_tree(gadget, topology).cost


def circuit_cost(circuit: PhaseCircuit, topology: Topology, cache: CostCache | None = None) -> int:
    """Total CX cost of a circuit, summed over gadgets."""
    if circuit.num_qubits > topology.num_qubits:
        raise ValueError(
            f"circuit has {circuit.num_qubits} qubits but topology only {topology.num_qubits}"
        )
    if cache is None:
        cache = CostCache(topology)
    return sum(cache.cost(circuit.leg_bits(i)) for i in range(len(circuit)))


def _ladder(path: list[int], z_basis: bool) -> list[CXGate]:
    """CX ladder for one tree edge, over path[0]=child .. path[-1]=parent.

    Built inside out: each longer ladder wraps the previous one in the
    CX for the next path segment, so the list is palindromic with
    2*d - 1 gates.  Z gadgets point every CX child-to-parent along the
    path; X gadgets use the opposite orientation throughout.
    """
    def cx(a: int, b: int) -> CXGate:
        return CXGate(a, b) if z_basis else CXGate(b, a)

    gates = [cx(path[0], path[1])]
    for i in range(2, len(path)):
        step = cx(path[i - 1], path[i])
        gates = [step, *gates, step]
    return gates


def compile_gadget(gadget: PhaseGadget, topology: Topology) -> list[CXGate | Rotation]:
    """Expand one gadget into adjacent-qubit CX gates and one rotation.

    Gates are in time order.  The ladders before the rotation undo leg
    by leg what the ladders after it build up, so the whole list is
    palindromic around the rotation and its CX count equals
    :func:`gadget_cost`.
    """
    tree = spanning_tree(gadget, topology)
    ladders = []
    for parent, child, _ in tree.edges:
        path = topology.shortest_path(child, parent)
        ladders.append(_ladder(path, gadget.basis == "Z"))
    out: list[CXGate | Rotation] = []
    for ladder in reversed(ladders):
        out.extend(ladder)
    out.append(Rotation(gadget.basis, gadget.angle, tree.root))
    for ladder in ladders:
        out.extend(ladder)
    return out


def compile_circuit(circuit: PhaseCircuit, topology: Topology) -> list[CXGate | Rotation]:
    """Concatenate :func:`compile_gadget` over the circuit in time order."""
    if circuit.num_qubits > topology.num_qubits:
        raise ValueError(
            f"circuit has {circuit.num_qubits} qubits but topology only {topology.num_qubits}"
        )
    out: list[CXGate | Rotation] = []
    for i in range(len(circuit)):
        out.extend(compile_gadget(circuit[i], topology))
    return out
