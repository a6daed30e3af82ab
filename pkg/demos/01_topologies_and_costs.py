"""Pricing phase gadgets on different qubit connectivities.

A phase gadget exp(i*theta*P) acts on a set of legs.  On hardware where
CX gates only connect neighbouring qubits, its price is the weight of a
minimum spanning tree over the legs, with an edge of graph distance d
costing 4d - 2 gates.  This script walks through that model on a line,
a cycle and a grid.
"""

from pgopt import PhaseGadget, Topology, gadget_cost, spanning_tree
from pgopt.circuit import Angle

theta = Angle.pi_times(1, 4)

print("= line of 5 qubits =")
line = Topology.line(5)
for legs in [{2}, {1, 2}, {0, 2}, {0, 4}, {0, 2, 4}]:
    gadget = PhaseGadget("Z", theta, frozenset(legs))
    print(f"  legs {sorted(legs)!s:12} cost {gadget_cost(gadget, line)}")

print()
print("closing the line into a cycle shortens the long hops:")
cycle = Topology.cycle(5)
gadget = PhaseGadget("Z", theta, frozenset({0, 4}))
print(f"  legs [0, 4]     line {gadget_cost(gadget, line)}  cycle {gadget_cost(gadget, cycle)}")

print()
print("= 3x3 grid =")
grid = Topology.grid(3, 3)
print("  qubit layout:   0 1 2 / 3 4 5 / 6 7 8")
gadget = PhaseGadget("Z", theta, frozenset({0, 3, 5, 6}))
tree = spanning_tree(gadget, grid)
print(f"  legs [0, 3, 5, 6] cost {tree.cost}, rooted at {tree.root}")
for parent, child, distance in tree.edges:
    print(f"    attach {child} to {parent} at distance {distance} "
          f"({4 * distance - 2} gates)")
print()
print("the same legs interpreted as an X gadget cost the same, since")
print("only the tree matters:", gadget_cost(PhaseGadget("X", theta, gadget.legs), grid))
