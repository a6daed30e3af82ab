"""Simulated annealing over layered CX blocks.

The state is a block C together with the conjugation P' of the input
circuit by C.  The objective is

    total = 2 * gates(C) + repetitions * cost(P')

counting both the conjugated circuit (repeated ``repetitions`` times,
as in a product-formula loop) and the one-off cost of applying C and
C^dagger around it.  Moves are single gate flips; a move is accepted
when it does not increase the objective, and otherwise with
probability 2^(-delta / t) at temperature t.
"""

from dataclasses import dataclass, field
import csv
import io

import numpy as np

from .block import CXBlock
from .circuit import PhaseCircuit
from .cost import CostCache, circuit_cost
from .topology import Topology

SCHEDULE_KINDS = ("linear", "geometric", "reciprocal", "logarithmic")

TRACE_FIELDS = ("iter", "temp", "delta", "accepted", "cost", "best_cost")


def suggested_t0(num_gadgets: int) -> float:
    """Starting temperature that lets early moves roam: 2m + 2."""
    return 2.0 * num_gadgets + 2.0


def accept_probability(delta: float, t: float) -> float:
    """1 for non-worsening moves, else 2^(-delta/t); greedy as t -> 0."""
    if delta <= 0:
        return 1.0
    if t < 1e-12:
        return 0.0
    return 2.0 ** (-delta / t)


@dataclass(frozen=True)
class Schedule:
    """Temperature schedule from t0 down to t1 over a fixed run length."""

    kind: str
    t0: float
    t1: float = 0.1

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise ValueError(f"unknown schedule {self.kind!r}, expected one of {SCHEDULE_KINDS}")
        if not self.t0 >= self.t1 > 0:
            raise ValueError(f"need t0 >= t1 > 0, got t0={self.t0}, t1={self.t1}")

    def temperature(self, k: int, num_iterations: int) -> float:
        """Temperature at step k of a num_iterations-step run."""
        if not 0 <= k < num_iterations:
            raise ValueError(f"step {k} outside run of {num_iterations}")
        if num_iterations == 1:
            return self.t0
        t0, t1 = self.t0, self.t1
        span = num_iterations - 1
        if self.kind == "linear":
            return t0 + k * (t1 - t0) / span
        if self.kind == "geometric":
            return t0 * (t1 / t0) ** (k / span)
        if self.kind == "reciprocal":
            beta = (t0 / t1 - 1.0) / span
            return t0 / (1.0 + beta * k)
        return t1 + (t0 - t1) * (1.0 - np.log1p(k) / np.log(num_iterations))


@dataclass(frozen=True)
class AnnealConfig:
    """Knobs for one annealing run.

    ``t0=None`` means pick :func:`suggested_t0` for the input size.
    ``iterations`` may be 0, which returns the input unchanged.
    """

    iterations: int = 1000
    schedule: str = "linear"
    t0: float | None = None
    t1: float = 0.1
    num_layers: int = 3
    repetitions: int = 1
    seed: int | None = None
    keep_trace: bool = False

    def __post_init__(self):
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.num_layers < 1:
            raise ValueError(f"num_layers must be >= 1, got {self.num_layers}")


@dataclass(frozen=True)
class TraceRow:
    """One annealing step: objective move and acceptance."""

    iter: int
    temp: float
    delta: int
    accepted: bool
    cost: int
    best_cost: int


@dataclass
class OptimizedCircuit:
    """Best block found, its conjugated circuit, and the objective value."""

    original: PhaseCircuit
    block: CXBlock
    conjugated: PhaseCircuit
    repetitions: int
    final_cost: int
    initial_cost: int | None = None
    trace: list[TraceRow] | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "original": self.original.to_dict(),
            "block": self.block.to_dict(),
            "conjugated": self.conjugated.to_dict(),
            "repetitions": self.repetitions,
            "final_cost": self.final_cost,
        }

    @classmethod
    def from_dict(cls, data: dict, topology: Topology | None = None) -> "OptimizedCircuit":
        return cls(
            original=PhaseCircuit.from_dict(data["original"]),
            block=CXBlock.from_dict(data["block"], topology),
            conjugated=PhaseCircuit.from_dict(data["conjugated"]),
            repetitions=data["repetitions"],
            final_cost=data["final_cost"],
        )

    def trace_csv(self) -> str:
        if self.trace is None:
            raise ValueError("run was configured without keep_trace")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TRACE_FIELDS)
        for row in self.trace:
            writer.writerow(
                [row.iter, repr(row.temp), row.delta, int(row.accepted), row.cost, row.best_cost]
            )
        return buf.getvalue()


def total_cost(
    block: CXBlock,
    conjugated: PhaseCircuit,
    repetitions: int,
    topology: Topology,
    cache: CostCache | None = None,
) -> int:
    """Objective: 2 * block gates + repetitions * conjugated-circuit cost."""
    return 2 * block.gate_count() + repetitions * circuit_cost(conjugated, topology, cache)


def anneal(circuit: PhaseCircuit, topology: Topology, config: AnnealConfig) -> OptimizedCircuit:
    """Search for a CX block that cheapens the conjugated circuit.

    Deterministic for a fixed (circuit, topology, config) including
    seed.  The returned block is the best state seen, not necessarily
    the final one.
    """
    if circuit.num_qubits != topology.num_qubits:
        raise ValueError(
            f"circuit has {circuit.num_qubits} qubits but topology has {topology.num_qubits}"
        )
    reps = config.repetitions
    t0 = suggested_t0(len(circuit)) if config.t0 is None else config.t0
    schedule = Schedule(config.schedule, t0, config.t1)
    rng = np.random.default_rng(config.seed)
    cache = CostCache(topology)

    conj = circuit.copy()
    block = CXBlock(topology, config.num_layers)
    costs = [cache.cost(conj.leg_bits(i)) for i in range(len(conj))]
    gates = 0
    total = 2 * gates + reps * sum(costs)

    best_total = total
    best_block = block.copy()
    best_conj = conj.copy()
    trace: list[TraceRow] | None = [] if config.keep_trace else None

    for k in range(config.iterations):
        t = schedule.temperature(k, config.iterations)
        num_flips = block.count_valid_flips()
        if num_flips == 0:
            break
        flip = block.valid_flip_at(int(rng.integers(num_flips)))
        removing = block.gate_at(flip.layer, *flip.edge) is not None
        touched = block.flip(flip, conj)
        saved = [(i, costs[i]) for i in touched]
        delta = -2 if removing else 2
        for i in touched:
            new_cost = cache.cost(conj.leg_bits(i))
            delta += reps * (new_cost - costs[i])
            costs[i] = new_cost

        if delta <= 0:
            accepted = True
        else:
            accepted = rng.random() <= accept_probability(delta, t)

        if accepted:
            gates += -1 if removing else 1
            total += delta
            if total < best_total:
                best_total = total
                best_block = block.copy()
                best_conj = conj.copy()
        else:
            block.flip(flip, conj)
            for i, old in saved:
                costs[i] = old

        if trace is not None:
            trace.append(TraceRow(k, t, delta, accepted, total, best_total))

        if __debug__ and not k & 4095:
            assert gates == block.gate_count()
            assert total == total_cost(block, conj, reps, topology, cache)

    return OptimizedCircuit(
        original=circuit.copy(),
        block=best_block,
        conjugated=best_conj,
        repetitions=reps,
        final_cost=best_total,
        initial_cost=reps * sum(cache.cost(circuit.leg_bits(i)) for i in range(len(circuit))),
        trace=trace,
    )
