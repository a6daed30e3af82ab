"""Layered blocks of adjacent-qubit CX gates and incremental flips.

A block C holds a fixed number of layers; within a layer the gates
occupy pairwise disjoint qubit pairs, so they commute freely.  The
block conjugates a phase circuit P into P' = C^dagger P C, applying
layer L-1 first and layer 0 last, which makes C * P' * C^dagger == P.

The annealer edits the block one *flip* at a time: toggling a single
oriented gate in one layer.  :meth:`CXBlock.flip` keeps a conjugated
circuit in sync without recomputing it from scratch.  Toggling gate g
in layer l turns P' into D P' D with D = B^dagger g B, where B is the
product of the layers below l.  Gates in B whose light cone misses g
cancel between B and B^dagger, so only the causal past of g is
replayed: conjugate by the past gates from layer 0 upward, then by g,
then by the past gates back down.  Every step is a self-inverse CX
conjugation, so a rejected flip is undone by flipping again.
"""

from dataclasses import dataclass

from .circuit import CXGate, PhaseCircuit
from .topology import Topology, _normalize_edge


@dataclass(frozen=True)
class GateFlip:
    """Toggle one oriented CX gate in one layer."""

    layer: int
    gate: CXGate

    @property
    def edge(self) -> tuple[int, int]:
        return _normalize_edge(self.gate.control, self.gate.target)


class CXBlock:
    """Mutable layered CX block on a topology.

    ``topology`` may be None for blocks rebuilt from serialized form
    that are only inspected or verified; flips then refuse to run.
    """

    __slots__ = ("topology", "num_layers", "_layers", "_occupied")

    def __init__(self, topology: Topology | None, num_layers: int):
        if num_layers < 1:
            raise ValueError(f"num_layers must be >= 1, got {num_layers}")
        self.topology = topology
        self.num_layers = num_layers
        self._layers: list[dict[tuple[int, int], CXGate]] = [{} for _ in range(num_layers)]
        self._occupied: list[int] = [0] * num_layers

    # -- inspection ----------------------------------------------------

    def gate_at(self, layer: int, a: int, b: int) -> CXGate | None:
        """Gate on the (a, b) qubit pair of one layer, if any."""
        return self._layers[layer].get(_normalize_edge(a, b))

    def layer_gates(self, layer: int) -> tuple[CXGate, ...]:
        return tuple(sorted(self._layers[layer].values(), key=lambda g: g.control))

    def gates(self) -> list[CXGate]:
        """All gates in time order: layer 0 first."""
        out = []
        for layer in range(self.num_layers):
            out.extend(self.layer_gates(layer))
        return out

    def gate_count(self) -> int:
        return sum(len(layer) for layer in self._layers)

    def copy(self) -> "CXBlock":
        dup = CXBlock.__new__(CXBlock)
        dup.topology = self.topology
        dup.num_layers = self.num_layers
        dup._layers = [dict(layer) for layer in self._layers]
        dup._occupied = self._occupied.copy()
        return dup

    def __eq__(self, other) -> bool:
        if not isinstance(other, CXBlock):
            return NotImplemented
        return self._layers == other._layers

    def __repr__(self) -> str:
        return f"CXBlock({self.num_layers} layers, {self.gate_count()} gates)"

    # -- flip enumeration ---------------------------------------------
    #
    # Canonical order: layers bottom up, topology edges sorted; an
    # occupied edge offers its single removal, a fully free edge both
    # orientations, a half-blocked edge nothing.

    def _require_topology(self) -> Topology:
        if self.topology is None:
            raise ValueError("block has no topology; flips are unavailable")
        return self.topology

    def is_valid_flip(self, flip: GateFlip) -> bool:
        topo = self._require_topology()
        if not 0 <= flip.layer < self.num_layers:
            return False
        edge = flip.edge
        if not topo.has_edge(*edge):
            return False
        present = self._layers[flip.layer].get(edge)
        if present is not None:
            return present == flip.gate
        mask = (1 << edge[0]) | (1 << edge[1])
        return not self._occupied[flip.layer] & mask

    def count_valid_flips(self) -> int:
        topo = self._require_topology()
        count = 0
        for layer in range(self.num_layers):
            gates = self._layers[layer]
            occupied = self._occupied[layer]
            for a, b in topo.edges:
                if (a, b) in gates:
                    count += 1
                elif not occupied & ((1 << a) | (1 << b)):
                    count += 2
        return count

    def valid_flip_at(self, index: int) -> GateFlip:
        """index-th flip in canonical order; pair with count_valid_flips."""
        topo = self._require_topology()
        remaining = index
        for layer in range(self.num_layers):
            gates = self._layers[layer]
            occupied = self._occupied[layer]
            for a, b in topo.edges:
                present = gates.get((a, b))
                if present is not None:
                    if remaining == 0:
                        return GateFlip(layer, present)
                    remaining -= 1
                elif not occupied & ((1 << a) | (1 << b)):
                    if remaining < 2:
                        return GateFlip(layer, CXGate(a, b) if remaining == 0 else CXGate(b, a))
                    remaining -= 2
        raise IndexError(f"flip index {index} out of range")

    def valid_flips(self) -> list[GateFlip]:
        topo = self._require_topology()
        out = []
        for layer in range(self.num_layers):
            gates = self._layers[layer]
            occupied = self._occupied[layer]
            for a, b in topo.edges:
                present = gates.get((a, b))
                if present is not None:
                    out.append(GateFlip(layer, present))
                elif not occupied & ((1 << a) | (1 << b)):
                    out.append(GateFlip(layer, CXGate(a, b)))
                    out.append(GateFlip(layer, CXGate(b, a)))
        return out

    # -- mutation ------------------------------------------------------

    def past_set(self, layer: int, gate: CXGate) -> list[tuple[int, CXGate]]:
        """Gates below ``layer`` in the causal past of ``gate``.

        Sweeps downward growing the touched-qubit set; returned rows
        are (layer, gate) with layers descending.
        """
        touched = (1 << gate.control) | (1 << gate.target)
        past = []
        for l in range(layer - 1, -1, -1):
            joined = []
            for g in self.layer_gates(l):
                mask = (1 << g.control) | (1 << g.target)
                if touched & mask:
                    joined.append(g)
            for g in joined:
                touched |= (1 << g.control) | (1 << g.target)
                past.append((l, g))
        return past

    def _toggle(self, flip: GateFlip) -> bool:
        """Add or remove the gate; returns True if it was removed."""
        edge = flip.edge
        layer = self._layers[flip.layer]
        mask = (1 << edge[0]) | (1 << edge[1])
        if edge in layer:
            del layer[edge]
            self._occupied[flip.layer] &= ~mask
            return True
        layer[edge] = flip.gate
        self._occupied[flip.layer] |= mask
        return False

    def flip(self, flip: GateFlip, conjugated: PhaseCircuit) -> list[int]:
        """Apply a flip, updating ``conjugated`` in place.

        Returns the sorted positions of gadgets whose legs changed.
        Raises ValueError on an invalid flip, leaving both the block
        and the circuit untouched.
        """
        if not self.is_valid_flip(flip):
            raise ValueError(f"invalid flip {flip}")
        past = self.past_set(flip.layer, flip.gate)
        touched: set[int] = set()
        for _, g in reversed(past):
            touched.update(conjugated.conjugate_by_cx(g))
        touched.update(conjugated.conjugate_by_cx(flip.gate))
        self._toggle(flip)
        for _, g in past:
            touched.update(conjugated.conjugate_by_cx(g))
        return sorted(touched)

    def conjugate_full(self, circuit: PhaseCircuit) -> PhaseCircuit:
        """Conjugation of a fresh copy of ``circuit`` by the whole block."""
        out = circuit.copy()
        for layer in range(self.num_layers - 1, -1, -1):
            for g in self.layer_gates(layer):
                out.conjugate_by_cx(g)
        return out

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "layers": [
                [g.to_dict() for g in self.layer_gates(layer)]
                for layer in range(self.num_layers)
            ]
        }

    @classmethod
    def from_dict(cls, data: dict, topology: Topology | None = None) -> "CXBlock":
        layers = data["layers"]
        block = cls(topology, len(layers))
        for index, gates in enumerate(layers):
            for entry in gates:
                gate = CXGate.from_dict(entry)
                edge = _normalize_edge(gate.control, gate.target)
                mask = (1 << edge[0]) | (1 << edge[1])
                if block._occupied[index] & mask:
                    raise ValueError(
                        f"layer {index} gates overlap on qubits {edge}"
                    )
                if topology is not None and not topology.has_edge(*edge):
                    raise ValueError(
                        f"gate {gate} in layer {index} is not an edge of the topology"
                    )
                block._layers[index][edge] = gate
                block._occupied[index] |= mask
        return block
