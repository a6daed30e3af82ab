"""Command-line front end.

Subcommands cover the library surface: sample a random circuit, price
a circuit on a topology, anneal a conjugating CX block, verify an
optimization against the dense-matrix oracle, compile to OpenQASM and
run benchmark sweeps.

Exit codes: 0 success, 2 unreadable or invalid input file, 3 bad
command-line flags, 4 failed verification, 5 resource guard tripped
(run cap, or brute-force verification on too many qubits).
"""

import argparse
import json
import sys

from .anneal import SCHEDULE_KINDS, AnnealConfig, OptimizedCircuit, anneal, total_cost
from .bench import (
    RunCapError,
    load_config,
    run_experiment,
    records_to_csv,
    summarize,
    summary_to_csv,
)
from .circuit import CXGate, PhaseCircuit
from .cost import Rotation, circuit_cost, compile_circuit
from .oracle import MAX_ORACLE_QUBITS, verify_optimized
from .topology import Topology, parse_topology

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_USAGE = 3
EXIT_VERIFY = 4
EXIT_RESOURCE = 5


class CliError(Exception):
    """Failure with a chosen exit code; message goes to stderr."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits 3 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INPUT, f"{path} is not valid JSON: {exc}") from exc


def _load_topology(value: str) -> Topology:
    if value.startswith(("line:", "cycle:", "grid:")):
        try:
            return parse_topology(value)
        except ValueError as exc:
            raise CliError(EXIT_USAGE, str(exc)) from exc
    data = _read_json(value)
    try:
        return Topology.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad topology in {value}: {exc}") from exc


def _load_circuit(path: str) -> PhaseCircuit:
    data = _read_json(path)
    try:
        return PhaseCircuit.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad circuit in {path}: {exc}") from exc


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot write {out}: {exc}") from exc


def _json_text(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def to_qasm(gates, num_qubits: int) -> str:
    """OpenQASM 2.0 text for a compiled gate list.

    A rotation exp(i*theta*P) is emitted as rz(-2*theta) or
    rx(-2*theta); against the common rz(lam) = diag(1, exp(i*lam))
    convention this matches up to a global phase per rotation.
    Parametric angles have no numeric value and are refused.
    """
    lines = [
        "// compiled phase gadget circuit (adjacent-qubit CX gates only)",
        "// rotations: exp(i*theta*Z) -> rz(-2*theta), exp(i*theta*X) -> rx(-2*theta);",
        "// equal up to global phase under rz(lam) = diag(1, exp(i*lam))",
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{num_qubits}];",
    ]
    for gate in gates:
        if isinstance(gate, CXGate):
            lines.append(f"cx q[{gate.control}],q[{gate.target}];")
        elif isinstance(gate, Rotation):
            if gate.angle.is_parametric:
                raise ValueError(f"parametric angle {gate.angle} cannot be exported to QASM")
            name = "rz" if gate.basis == "Z" else "rx"
            lines.append(f"{name}({-2.0 * gate.angle.radians()!r}) q[{gate.qubit}];")
        else:
            raise TypeError(f"cannot export {gate!r} to QASM")
    return "\n".join(lines) + "\n"


# -- subcommands ------------------------------------------------------


def _cmd_random(args) -> int:
    try:
        circuit = PhaseCircuit.random(
            args.qubits,
            args.gadgets,
            min_legs=args.min_legs,
            max_legs=args.max_legs,
            seed=args.seed,
        )
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc
    _write_text(_json_text(circuit.to_dict()), args.out)
    return EXIT_OK


def _cmd_cost(args) -> int:
    circuit = _load_circuit(args.circuit)
    topology = _load_topology(args.topology)
    try:
        value = circuit_cost(circuit, topology)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    _write_text(f"{value}\n", None)
    return EXIT_OK


def _cmd_optimize(args) -> int:
    circuit = _load_circuit(args.circuit)
    topology = _load_topology(args.topology)
    try:
        config = AnnealConfig(
            iterations=args.iterations,
            schedule=args.schedule,
            t0=args.t0,
            t1=args.t1,
            num_layers=args.layers,
            repetitions=args.repetitions,
            seed=args.seed,
            keep_trace=args.trace is not None,
        )
        result = anneal(circuit, topology, config)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc
    _write_text(_json_text(result.to_dict()), args.out)
    if args.trace is not None:
        _write_text(result.trace_csv(), args.trace)
    initial = result.initial_cost
    saved = initial - result.final_cost
    pct = 100.0 * saved / initial if initial else 0.0
    print(f"cost {initial} -> {result.final_cost} ({pct:.1f}% reduction)", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    data = _read_json(args.optimized)
    topology = _load_topology(args.topology) if args.topology else None
    try:
        result = OptimizedCircuit.from_dict(data, topology)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad optimized circuit in {args.optimized}: {exc}") from exc
    n = result.original.num_qubits
    if n > MAX_ORACLE_QUBITS:
        raise CliError(
            EXIT_RESOURCE,
            f"{n} qubits is too large for brute-force verification "
            f"(limit {MAX_ORACLE_QUBITS})",
        )
    if topology is not None:
        try:
            expected = total_cost(result.block, result.conjugated, result.repetitions, topology)
        except ValueError as exc:
            raise CliError(EXIT_INPUT, str(exc)) from exc
        if expected != result.final_cost:
            print(
                f"cost mismatch: file says {result.final_cost}, recomputed {expected}",
                file=sys.stderr,
            )
            return EXIT_VERIFY
    try:
        outcome = verify_optimized(result.original, result.block, result.conjugated, tol=args.tol)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    if not outcome:
        print(f"unitary mismatch: max deviation {outcome.max_deviation:.3e}", file=sys.stderr)
        return EXIT_VERIFY
    _write_text(f"OK: max deviation {outcome.max_deviation:.3e}\n", None)
    return EXIT_OK


def _cmd_compile(args) -> int:
    circuit = _load_circuit(args.circuit)
    topology = _load_topology(args.topology)
    try:
        gates = compile_circuit(circuit, topology)
        text = to_qasm(gates, topology.num_qubits)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    _write_text(text, args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    try:
        config = load_config(args.config)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {args.config}: {exc}") from exc
    except ValueError as exc:
        raise CliError(EXIT_INPUT, f"bad experiment config {args.config}: {exc}") from exc
    try:
        records = run_experiment(config, workers=args.workers)
    except RunCapError as exc:
        raise CliError(EXIT_RESOURCE, str(exc)) from exc
    _write_text(records_to_csv(records), args.out)
    if args.summary is not None:
        _write_text(summary_to_csv(summarize(records)), args.summary)
    print(f"{len(records)} runs written to {args.out or 'stdout'}", file=sys.stderr)
    return EXIT_OK


# -- parser -----------------------------------------------------------


def _t0_flag(text: str):
    if text == "auto":
        return None
    return float(text)


def build_parser() -> _Parser:
    parser = _Parser(prog="pgopt", description="Phase gadget circuit optimizer.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("random", help="sample a random phase gadget circuit")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--gadgets", type=int, required=True)
    p.add_argument("--min-legs", type=int, default=2)
    p.add_argument("--max-legs", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_random)

    p = sub.add_parser("cost", help="CX cost of a circuit on a topology")
    p.add_argument("--circuit", required=True, help="circuit JSON file")
    p.add_argument("--topology", required=True, help="line:N, cycle:N, grid:RxC or JSON file")
    p.set_defaults(func=_cmd_cost)

    p = sub.add_parser("optimize", help="anneal a conjugating CX block")
    p.add_argument("--circuit", required=True)
    p.add_argument("--topology", required=True)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--schedule", choices=SCHEDULE_KINDS, default="linear")
    p.add_argument("--t0", type=_t0_flag, default="auto", help="starting temperature or 'auto'")
    p.add_argument("--t1", type=float, default=0.1)
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", help="write per-iteration trace CSV here")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("verify", help="check an optimized circuit against dense unitaries")
    p.add_argument("--optimized", required=True, help="optimized circuit JSON file")
    p.add_argument("--topology", help="also recheck costs on this topology")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("compile", help="compile a circuit to OpenQASM 2.0")
    p.add_argument("--circuit", required=True)
    p.add_argument("--topology", required=True)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("bench", help="run an experiment sweep from a config file")
    p.add_argument("--config", required=True, help=".toml or .json experiment config")
    p.add_argument("--out", help="records CSV file (default stdout)")
    p.add_argument("--summary", help="also write grouped summary CSV here")
    p.add_argument("--workers", type=int, help="process count (default PGOPT_THREADS or 1)")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"pgopt: {exc.message}", file=sys.stderr)
        return exc.code


def entry() -> None:
    sys.exit(main())
