import json

import pytest

from pgopt import (
    ExperimentConfig,
    RunCapError,
    derive_seed,
    gnuplot_series,
    records_to_csv,
    run_experiment,
    summarize,
    summarize_by_time,
    summary_to_csv,
    write_records,
)
from pgopt.bench import CSV_FIELDS, load_config


def _tiny_config(**overrides) -> ExperimentConfig:
    base = dict(
        topologies=("line:4",),
        gadget_counts=(3,),
        schedules=("linear",),
        t0_values=(5.0,),
        iteration_range=(50, 100, 50),
        circuits_per_point=2,
        repetitions=5,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


class TestConfig:
    def test_iteration_values_inclusive(self):
        cfg = _tiny_config(iteration_range=(100, 500, 200))
        assert cfg.iteration_values() == (100, 300, 500)

    def test_run_count_is_product(self):
        cfg = _tiny_config(
            topologies=("line:4", "grid:2x2"),
            gadget_counts=(3, 4, 5),
            schedules=("linear", "geometric"),
            t0_values=(1.0, 5.0),
            iteration_range=(10, 30, 10),
            circuits_per_point=7,
        )
        assert cfg.run_count() == 2 * 3 * 2 * 2 * 3 * 7

    def test_lists_are_coerced(self):
        cfg = ExperimentConfig(
            topologies=["line:4"], gadget_counts=[2], iteration_range=[1, 1, 1]
        )
        assert cfg.topologies == ("line:4",)
        assert cfg.iteration_values() == (1,)

    @pytest.mark.parametrize(
        "overrides",
        [
            {"topologies": ()},
            {"gadget_counts": ()},
            {"iteration_range": (5, 1, 1)},
            {"iteration_range": (1, 5)},
            {"iteration_range": (1, 5, 0)},
            {"circuits_per_point": 0},
            {"min_legs": 0},
            {"min_legs": 3, "max_legs": 2},
        ],
    )
    def test_validation(self, overrides):
        with pytest.raises(ValueError):
            _tiny_config(**overrides)


class TestSeeds:
    def test_derive_seed_is_stable_and_sensitive(self):
        a = derive_seed("anneal", 0, "line:4", 3, 0)
        assert a == derive_seed("anneal", 0, "line:4", 3, 0)
        assert a != derive_seed("anneal", 0, "line:4", 3, 1)
        assert a != derive_seed("circuit", 0, "line:4", 3, 0)
        assert 0 <= a < 2 ** 63

    def test_circuit_shared_across_sweeps(self):
        """Same circuit index must pair runs across schedule and t0 sweeps."""
        cfg = _tiny_config(
            schedules=("linear", "geometric"),
            t0_values=(1.0, 5.0),
            iteration_range=(50, 50, 1),
            circuits_per_point=1,
        )
        records = run_experiment(cfg)
        assert len(records) == 4
        assert len({r.original_cost for r in records}) == 1


class TestRun:
    def test_records_in_sweep_order(self):
        cfg = _tiny_config()
        records = run_experiment(cfg)
        assert len(records) == cfg.run_count()
        assert [r.iterations for r in records] == [50, 50, 100, 100]
        assert all(r.qubits == 4 and r.gadgets == 3 for r in records)

    def test_reduction_fraction_definition(self):
        records = run_experiment(_tiny_config())
        for r in records:
            expected = (r.original_cost - r.optimized_cost) / r.original_cost
            assert r.reduction_fraction == pytest.approx(expected)

    def test_zero_iterations_no_reduction(self):
        records = run_experiment(_tiny_config(iteration_range=(0, 0, 1)))
        assert all(r.optimized_cost == r.original_cost for r in records)
        assert all(r.reduction_fraction == 0.0 for r in records)

    def test_timing_off_by_default(self):
        records = run_experiment(_tiny_config())
        assert all(r.wall_time_seconds is None for r in records)
        assert all(r.iterations_per_second is None for r in records)

    def test_timing_on_when_asked(self):
        records = run_experiment(_tiny_config(measure_time=True))
        assert all(r.wall_time_seconds > 0 for r in records)
        assert all(r.iterations_per_second > 0 for r in records)

    def test_run_cap(self):
        cfg = _tiny_config(circuits_per_point=30, max_runs=10)
        with pytest.raises(RunCapError) as info:
            run_experiment(cfg)
        assert info.value.requested == 60
        assert info.value.limit == 10

    def test_worker_pool_matches_serial(self):
        cfg = _tiny_config()
        serial = run_experiment(cfg, workers=1)
        parallel = run_experiment(cfg, workers=2)
        assert records_to_csv(serial) == records_to_csv(parallel)


class TestCsv:
    def test_header_and_determinism(self):
        cfg = _tiny_config()
        a = records_to_csv(run_experiment(cfg))
        b = records_to_csv(run_experiment(cfg))
        assert a == b
        assert a.splitlines()[0] == ",".join(CSV_FIELDS)

    def test_timing_columns_empty_without_measurement(self):
        text = records_to_csv(run_experiment(_tiny_config()))
        row = text.splitlines()[1].split(",")
        assert row[-2:] == ["", ""]

    def test_write_records(self, tmp_path):
        path = tmp_path / "runs.csv"
        records = run_experiment(_tiny_config())
        write_records(records, path)
        assert path.read_text() == records_to_csv(records)


class TestSummaries:
    def test_grouping(self):
        records = run_experiment(_tiny_config())
        rows = summarize(records)
        assert len(rows) == 2  # one group per iteration count
        for row in rows:
            assert row.count == 2
            assert row.minimum <= row.p10 <= row.p50 <= row.p90 <= row.maximum
            assert row.minimum <= row.mean <= row.maximum

    def test_summary_csv_header(self):
        rows = summarize(run_experiment(_tiny_config()))
        text = summary_to_csv(rows)
        assert text.splitlines()[0] == (
            "qubits,gadgets,schedule,t0,iterations,count,mean,min,max,p10,p50,p90"
        )

    def test_gnuplot_series_uses_last_key(self):
        rows = summarize(run_experiment(_tiny_config()))
        series = gnuplot_series(rows)
        assert [x for x, *_ in series] == [50.0, 100.0]
        for _, mean, p10, p90 in series:
            assert p10 <= p90

    def test_time_bins_require_measurement(self):
        records = run_experiment(_tiny_config())
        with pytest.raises(ValueError):
            summarize_by_time(records)

    def test_time_bins(self):
        records = run_experiment(_tiny_config(measure_time=True))
        rows = summarize_by_time(records, bin_seconds=10.0)
        assert len(rows) == 1  # everything lands in the first 10 s bin
        assert rows[0].key == ("linear", 0.0)
        assert rows[0].count == 4


class TestConfigFiles:
    def test_toml(self, tmp_path):
        path = tmp_path / "exp.toml"
        path.write_text(
            'topologies = ["line:4"]\n'
            "gadget_counts = [3]\n"
            "iteration_range = [10, 20, 10]\n"
            "circuits_per_point = 2\n"
        )
        cfg = load_config(path)
        assert cfg.topologies == ("line:4",)
        assert cfg.iteration_values() == (10, 20)
        assert cfg.repetitions == 1  # default

    def test_json(self, tmp_path):
        path = tmp_path / "exp.json"
        path.write_text(json.dumps({
            "topologies": ["grid:2x2"],
            "gadget_counts": [4],
            "t0_values": [2.5],
            "measure_time": True,
        }))
        cfg = load_config(path)
        assert cfg.t0_values == (2.5,)
        assert cfg.measure_time is True

    def test_unknown_keys_rejected(self, tmp_path):
        path = tmp_path / "exp.json"
        path.write_text(json.dumps({"topologies": ["line:4"], "gadget_counts": [3], "foo": 1}))
        with pytest.raises(ValueError, match="foo"):
            load_config(path)

    def test_missing_required_keys_rejected(self, tmp_path):
        path = tmp_path / "exp.json"
        path.write_text(json.dumps({"topologies": ["line:4"]}))
        with pytest.raises(ValueError):
            load_config(path)

    def test_unknown_suffix_rejected(self, tmp_path):
        path = tmp_path / "exp.yaml"
        path.write_text("topologies: [line:4]")
        with pytest.raises(ValueError):
            load_config(path)
