"""Topology-aware CX-count optimization for mixed ZX phase gadget circuits.

Workflow: build or load a :class:`PhaseCircuit`, pick a
:class:`Topology`, then :func:`anneal` a layered block of
adjacent-qubit CX gates whose conjugation cheapens the circuit.
Results round-trip through JSON and can be checked against dense
unitaries with :func:`verify_optimized` at small qubit counts.
"""

from .anneal import (
    AnnealConfig,
    OptimizedCircuit,
    SCHEDULE_KINDS,
    Schedule,
    TraceRow,
    accept_probability,
    anneal,
    suggested_t0,
    total_cost,
)
from .bench import (
    ExperimentConfig,
    RunCapError,
    RunRecord,
    SummaryRow,
    derive_seed,
    gnuplot_series,
    load_config,
    records_to_csv,
    run_experiment,
    summarize,
    summarize_by_time,
    summary_to_csv,
    write_records,
)
from .block import CXBlock, GateFlip
from .circuit import Angle, CXGate, PhaseCircuit, PhaseGadget, ccz_gadgets
from .cost import (
    CostCache,
    GadgetCost,
    Rotation,
    circuit_cost,
    compile_circuit,
    compile_gadget,
    gadget_cost,
    spanning_tree,
)
from .oracle import (
    Equivalence,
    MAX_ORACLE_QUBITS,
    block_unitary,
    circuit_unitary,
    cx_unitary,
    equivalent,
    gadget_unitary,
    gates_unitary,
    pauli_string,
    verify_optimized,
)
from .topology import Topology, parse_topology

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "AnnealConfig",
    "CXBlock",
    "CXGate",
    "CostCache",
    "Equivalence",
    "ExperimentConfig",
    "GadgetCost",
    "GateFlip",
    "MAX_ORACLE_QUBITS",
    "OptimizedCircuit",
    "PhaseCircuit",
    "PhaseGadget",
    "Rotation",
    "RunCapError",
    "RunRecord",
    "SCHEDULE_KINDS",
    "Schedule",
    "SummaryRow",
    "Topology",
    "TraceRow",
    "accept_probability",
    "anneal",
    "block_unitary",
    "ccz_gadgets",
    "circuit_cost",
    "circuit_unitary",
    "compile_circuit",
    "compile_gadget",
    "cx_unitary",
    "derive_seed",
    "equivalent",
    "gadget_cost",
    "gadget_unitary",
    "gates_unitary",
    "gnuplot_series",
    "load_config",
    "parse_topology",
    "pauli_string",
    "records_to_csv",
    "run_experiment",
    "spanning_tree",
    "suggested_t0",
    "summarize",
    "summarize_by_time",
    "summary_to_csv",
    "total_cost",
    "verify_optimized",
    "write_records",
]
