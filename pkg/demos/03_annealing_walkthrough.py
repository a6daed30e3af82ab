"""One full optimization run, narrated.

We draw a random 6-gadget circuit on a line of five qubits, anneal a
3-layer CX block around it and inspect what the search did: the
temperature schedule, the cost trace, the final block and the dense
unitary check that nothing changed semantically.
"""

from pgopt import (
    AnnealConfig,
    PhaseCircuit,
    Topology,
    anneal,
    suggested_t0,
    verify_optimized,
)

topo = Topology.line(5)
circ = PhaseCircuit.random(5, 6, min_legs=2, max_legs=3, seed=8)

print(f"input: {len(circ)} gadgets on {topo.num_qubits} qubits")
for i in range(len(circ)):
    g = circ[i]
    print(f"  {i}: {g.basis} {str(g.angle):8} legs {sorted(g.legs)}")

config = AnnealConfig(iterations=2000, schedule="geometric", seed=4,
                      repetitions=1, keep_trace=True)
print(f"\nannealing for {config.iterations} iterations, "
      f"t0 = {suggested_t0(len(circ))} (auto), t1 = {config.t1}")

result = anneal(circ, topo, config)
print(f"cost {result.initial_cost} -> {result.final_cost}")

print("\ntrace samples (iteration, temperature, running cost, best):")
for row in result.trace[:: len(result.trace) // 8]:
    print(f"  {row.iter:5d}  t={row.temp:7.3f}  cost={row.cost:3d}  best={row.best_cost:3d}")

accepted = sum(r.accepted for r in result.trace)
uphill = sum(r.accepted and r.delta > 0 for r in result.trace)
print(f"\naccepted {accepted}/{len(result.trace)} moves, {uphill} of them uphill")

print(f"\nbest block found ({result.block.gate_count()} gates):")
for layer in range(result.block.num_layers):
    gates = result.block.layer_gates(layer)
    text = ", ".join(f"CX({g.control},{g.target})" for g in gates) or "(empty)"
    print(f"  layer {layer}: {text}")

print("\nconjugated circuit:")
for i in range(len(result.conjugated)):
    g = result.conjugated[i]
    print(f"  {i}: {g.basis} {str(g.angle):8} legs {sorted(g.legs)}")

outcome = verify_optimized(result.original, result.block, result.conjugated)
print(f"\ndense unitary check: C P' C+ == P is {outcome.ok} "
      f"(max deviation {outcome.max_deviation:.1e})")
