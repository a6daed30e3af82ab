"""Reproducible annealing sweeps over topology and schedule grids.

An experiment is the Cartesian product of topologies, gadget counts,
schedules, starting temperatures, iteration budgets and circuit
indices.  Every random choice is seeded by hashing the run coordinates,
so re-running a config reproduces each run bit for bit, in any order
and under any worker count.  The same circuit index maps to the same
circuit across schedule, t0 and iteration sweeps, which keeps those
comparisons paired.

Wall-clock measurement is off by default so that result files are
byte-stable; switch on ``measure_time`` to fill the timing columns.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
import csv
import hashlib
import io
import json
import os
import time

try:
    import tomllib
except ImportError:
    import tomli as tomllib

import numpy as np

from .anneal import AnnealConfig, anneal
from .circuit import PhaseCircuit
from .topology import parse_topology

CSV_FIELDS = (
    "qubits",
    "gadgets",
    "schedule",
    "t0",
    "iterations",
    "seed",
    "original_cost",
    "optimized_cost",
    "reduction_fraction",
    "wall_time_seconds",
    "iterations_per_second",
)

WORKERS_ENV = "PGOPT_THREADS"


class RunCapError(RuntimeError):
    """Raised when an experiment would exceed its run budget."""

    def __init__(self, requested: int, limit: int):
        super().__init__(
            f"experiment spans {requested} runs, over the cap of {limit}; "
            f"raise max_runs if this is intended"
        )
        self.requested = requested
        self.limit = limit


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from a tuple of run coordinates."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep axes and per-run settings for one experiment."""

    topologies: tuple[str, ...]
    gadget_counts: tuple[int, ...]
    schedules: tuple[str, ...] = ("linear",)
    t0_values: tuple[float, ...] = (10.0,)
    iteration_range: tuple[int, int, int] = (1000, 1000, 1)
    circuits_per_point: int = 1
    repetitions: int = 1
    num_layers: int = 3
    min_legs: int = 2
    max_legs: int = 3
    t1: float = 0.1
    base_seed: int = 0
    measure_time: bool = False
    max_runs: int = 1_000_000

    def __post_init__(self):
        coerce = {
            "topologies": lambda xs: tuple(str(x) for x in xs),
            "gadget_counts": lambda xs: tuple(int(x) for x in xs),
            "schedules": lambda xs: tuple(str(x) for x in xs),
            "t0_values": lambda xs: tuple(float(x) for x in xs),
            "iteration_range": lambda xs: tuple(int(x) for x in xs),
        }
        for name, fn in coerce.items():
            object.__setattr__(self, name, fn(getattr(self, name)))
        for name in ("topologies", "gadget_counts", "schedules", "t0_values"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")
        if len(self.iteration_range) != 3:
            raise ValueError("iteration_range must be (start, stop, step)")
        start, stop, step = self.iteration_range
        if start < 0 or stop < start or step < 1:
            raise ValueError(f"bad iteration_range {self.iteration_range}")
        if self.circuits_per_point < 1:
            raise ValueError("circuits_per_point must be >= 1")
        if not 1 <= self.min_legs <= self.max_legs:
            raise ValueError("need 1 <= min_legs <= max_legs")
        if self.repetitions < 1 or self.num_layers < 1 or self.max_runs < 1:
            raise ValueError("repetitions, num_layers and max_runs must be >= 1")

    def iteration_values(self) -> tuple[int, ...]:
        start, stop, step = self.iteration_range
        return tuple(range(start, stop + 1, step))

    def run_count(self) -> int:
        return (
            len(self.topologies)
            * len(self.gadget_counts)
            * len(self.schedules)
            * len(self.t0_values)
            * len(self.iteration_values())
            * self.circuits_per_point
        )


@dataclass(frozen=True)
class RunRecord:
    """One annealing run's outcome; timing fields are None when unmeasured."""

    qubits: int
    gadgets: int
    schedule: str
    t0: float
    iterations: int
    seed: int
    original_cost: int
    optimized_cost: int
    reduction_fraction: float
    wall_time_seconds: float | None
    iterations_per_second: float | None


def _run_one(task: tuple) -> RunRecord:
    (
        spec,
        gadgets,
        schedule,
        t0,
        iterations,
        circuit_index,
        repetitions,
        num_layers,
        min_legs,
        max_legs,
        t1,
        base_seed,
        measure_time,
    ) = task
    topology = parse_topology(spec)
    circuit = PhaseCircuit.random(
        topology.num_qubits,
        gadgets,
        min_legs=min_legs,
        max_legs=max_legs,
        seed=derive_seed("circuit", base_seed, spec, gadgets, circuit_index),
    )
    seed = derive_seed(
        "anneal", base_seed, spec, gadgets, circuit_index, schedule, t0, iterations
    )
    config = AnnealConfig(
        iterations=iterations,
        schedule=schedule,
        t0=t0,
        t1=t1,
        num_layers=num_layers,
        repetitions=repetitions,
        seed=seed,
    )
    start = time.perf_counter()
    result = anneal(circuit, topology, config)
    elapsed = time.perf_counter() - start
    original = result.initial_cost
    optimized = result.final_cost
    reduction = (original - optimized) / original if original else 0.0
    wall = elapsed if measure_time else None
    rate = None
    if measure_time:
        rate = iterations / elapsed if elapsed > 0 else 0.0
    return RunRecord(
        qubits=topology.num_qubits,
        gadgets=gadgets,
        schedule=schedule,
        t0=t0,
        iterations=iterations,
        seed=seed,
        original_cost=original,
        optimized_cost=optimized,
        reduction_fraction=reduction,
        wall_time_seconds=wall,
        iterations_per_second=rate,
    )


def _tasks(config: ExperimentConfig):
    for spec in config.topologies:
        for gadgets in config.gadget_counts:
            for schedule in config.schedules:
                for t0 in config.t0_values:
                    for iterations in config.iteration_values():
                        for index in range(config.circuits_per_point):
                            yield (
                                spec,
                                gadgets,
                                schedule,
                                t0,
                                iterations,
                                index,
                                config.repetitions,
                                config.num_layers,
                                config.min_legs,
                                config.max_legs,
                                config.t1,
                                config.base_seed,
                                config.measure_time,
                            )


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return 1
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(workers, 1)


def run_experiment(config: ExperimentConfig, *, workers: int | None = None) -> list[RunRecord]:
    """Execute every run in the sweep, in deterministic order.

    ``workers`` defaults to the PGOPT_THREADS environment variable;
    above 1, runs execute in a process pool but the record order and
    contents are unchanged.
    """
    requested = config.run_count()
    if requested > config.max_runs:
        raise RunCapError(requested, config.max_runs)
    tasks = list(_tasks(config))
    if workers is None:
        workers = _worker_count()
    if workers <= 1:
        return [_run_one(task) for task in tasks]
    chunk = max(1, len(tasks) // (workers * 16))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, tasks, chunksize=chunk))


# -- CSV output -------------------------------------------------------


def _record_row(record: RunRecord) -> list[str]:
    return [
        str(record.qubits),
        str(record.gadgets),
        record.schedule,
        repr(record.t0),
        str(record.iterations),
        str(record.seed),
        str(record.original_cost),
        str(record.optimized_cost),
        f"{record.reduction_fraction:.6f}",
        "" if record.wall_time_seconds is None else f"{record.wall_time_seconds:.6f}",
        "" if record.iterations_per_second is None else f"{record.iterations_per_second:.2f}",
    ]


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for record in records:
        writer.writerow(_record_row(record))
    return buf.getvalue()


def write_records(records, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(records_to_csv(records))


# -- aggregation ------------------------------------------------------

DEFAULT_GROUP_KEYS = ("qubits", "gadgets", "schedule", "t0", "iterations")


@dataclass(frozen=True)
class SummaryRow:
    """Reduction-fraction statistics for one group of runs."""

    key: tuple
    count: int
    mean: float
    minimum: float
    maximum: float
    p10: float
    p50: float
    p90: float


def _summarize_groups(groups: dict) -> list[SummaryRow]:
    out = []
    for key, values in groups.items():
        arr = np.asarray(values, dtype=float)
        p10, p50, p90 = np.percentile(arr, [10, 50, 90])
        out.append(
            SummaryRow(
                key=key,
                count=len(values),
                mean=float(arr.mean()),
                minimum=float(arr.min()),
                maximum=float(arr.max()),
                p10=float(p10),
                p50=float(p50),
                p90=float(p90),
            )
        )
    return out


def summarize(records, keys: tuple[str, ...] = DEFAULT_GROUP_KEYS) -> list[SummaryRow]:
    """Group records by the given fields and summarize reduction_fraction.

    Groups keep first-appearance order, so summaries of a deterministic
    record list are deterministic too.
    """
    groups: dict[tuple, list[float]] = {}
    for record in records:
        key = tuple(getattr(record, k) for k in keys)
        groups.setdefault(key, []).append(record.reduction_fraction)
    return _summarize_groups(groups)


def summarize_by_time(
    records,
    *,
    bin_seconds: float = 0.5,
    keys: tuple[str, ...] = ("schedule",),
) -> list[SummaryRow]:
    """Like :func:`summarize` but binned by wall time.

    The last key component is the bin's start time.  Requires records
    produced with measure_time on.
    """
    if bin_seconds <= 0:
        raise ValueError(f"bin_seconds must be positive, got {bin_seconds}")
    groups: dict[tuple, list[float]] = {}
    for record in records:
        if record.wall_time_seconds is None:
            raise ValueError("records have no wall times; rerun with measure_time")
        bin_start = int(record.wall_time_seconds / bin_seconds) * bin_seconds
        key = tuple(getattr(record, k) for k in keys) + (bin_start,)
        groups.setdefault(key, []).append(record.reduction_fraction)
    rows = _summarize_groups(groups)
    rows.sort(key=lambda r: r.key)
    return rows


def summary_to_csv(rows, keys: tuple[str, ...] = DEFAULT_GROUP_KEYS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(keys) + ["count", "mean", "min", "max", "p10", "p50", "p90"])
    for row in rows:
        writer.writerow(
            [str(part) for part in row.key]
            + [str(row.count)]
            + [
                f"{value:.6f}"
                for value in (row.mean, row.minimum, row.maximum, row.p10, row.p50, row.p90)
            ]
        )
    return buf.getvalue()


def gnuplot_series(rows, x_index: int = -1) -> list[tuple[float, float, float, float]]:
    """(x, mean, p10, p90) tuples for plotting, x from one key component."""
    return [(float(row.key[x_index]), row.mean, row.p10, row.p90) for row in rows]


# -- config files -----------------------------------------------------


def config_from_dict(data: dict) -> ExperimentConfig:
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValueError(f"unknown experiment config keys: {', '.join(unknown)}")
    if "topologies" not in data or "gadget_counts" not in data:
        raise ValueError("experiment config needs topologies and gadget_counts")
    return ExperimentConfig(**data)


def load_config(path) -> ExperimentConfig:
    """Read an experiment config from a .toml or .json file."""
    text = str(path)
    if text.endswith(".toml"):
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    elif text.endswith(".json"):
        with open(path) as fh:
            data = json.load(fh)
    else:
        raise ValueError(f"config file must end in .toml or .json, got {text}")
    if not isinstance(data, dict):
        raise ValueError("experiment config must be a table of keys")
    return config_from_dict(data)
