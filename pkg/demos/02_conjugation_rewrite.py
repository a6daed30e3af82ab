"""How CX conjugation rewrites gadget legs, with a dense-matrix check.

Conjugating a circuit by a CX gate leaves gadget order, bases and
angles alone; it only toggles one leg per affected gadget:

  * Z gadget, CX target among the legs  -> toggle the control
  * X gadget, CX control among the legs -> toggle the target

Because the rule is an involution, a block C applied around a circuit
can be undone exactly, which is what makes block conjugation a free
rewrite apart from the CX gates of C itself.
"""

from pgopt import (
    CXGate,
    PhaseCircuit,
    PhaseGadget,
    circuit_unitary,
    cx_unitary,
    equivalent,
)
from pgopt.circuit import Angle


def show(circ: PhaseCircuit, label: str) -> None:
    print(f"  {label}:")
    for i in range(len(circ)):
        g = circ[i]
        print(f"    {i}: {g.basis} {str(g.angle):8} legs {sorted(g.legs)}")


circ = PhaseCircuit(3)
circ.append(PhaseGadget("Z", Angle.pi_times(1, 4), frozenset({1, 2})))
circ.append(PhaseGadget("X", Angle.pi_times(1, 2), frozenset({0, 1})))
circ.append(PhaseGadget("Z", Angle.pi_times(7, 4), frozenset({0})))

show(circ, "before")
gate = CXGate(0, 1)
before_u = circuit_unitary(circ)
touched = circ.conjugate_by_cx(gate)
print(f"\nconjugate by CX(control=0, target=1); gadgets touched: {touched}")
show(circ, "after")

# the dense matrices agree: conjugation really is cx . U . cx
ucx = cx_unitary(gate, 3)
outcome = equivalent(circuit_unitary(circ), ucx @ before_u @ ucx)
print(f"\nmatches the matrix model exactly: {outcome.ok} "
      f"(max deviation {outcome.max_deviation:.1e})")

circ.conjugate_by_cx(gate)
show(circ, "conjugating again restores the circuit")

# a leg set can collapse: this pair becomes a single-leg gadget, which
# costs nothing to route
wide = PhaseCircuit(3, [PhaseGadget("Z", Angle.pi_times(1, 4), frozenset({0, 1}))])
wide.conjugate_by_cx(CXGate(0, 1))
print(f"\nZ gadget on legs [0, 1] conjugated by CX(0, 1) has legs "
      f"{sorted(wide[0].legs)}: routing cost gone")
