import json

import pytest

from pgopt import CXGate, PhaseCircuit, Rotation, Topology, circuit_cost
from pgopt.circuit import Angle, PhaseGadget
from pgopt.cli import main, to_qasm


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _write_circuit(tmp_path, seed=3, n=5, m=5):
    circ = PhaseCircuit.random(n, m, min_legs=2, max_legs=3, seed=seed)
    path = tmp_path / "circ.json"
    path.write_text(json.dumps(circ.to_dict()))
    return path, circ


class TestRandom:
    def test_writes_circuit_json(self, capsys, tmp_path):
        out = tmp_path / "c.json"
        code, _, _ = _run(capsys, "random", "--qubits", "4", "--gadgets", "6",
                          "--seed", "1", "--out", str(out))
        assert code == 0
        circ = PhaseCircuit.from_dict(json.loads(out.read_text()))
        assert circ.num_qubits == 4
        assert len(circ) == 6

    def test_stdout_by_default(self, capsys):
        code, out, _ = _run(capsys, "random", "--qubits", "3", "--gadgets", "2", "--seed", "0")
        assert code == 0
        data = json.loads(out)
        assert list(data) == ["qubits", "gadgets"]

    def test_same_seed_same_bytes(self, capsys):
        _, first, _ = _run(capsys, "random", "--qubits", "5", "--gadgets", "9", "--seed", "7")
        _, second, _ = _run(capsys, "random", "--qubits", "5", "--gadgets", "9", "--seed", "7")
        assert first == second

    def test_impossible_legs_is_usage_error(self, capsys):
        code, _, _ = _run(capsys, "random", "--qubits", "2", "--gadgets", "1",
                          "--min-legs", "2", "--max-legs", "5")
        assert code == 3


class TestCost:
    def test_prints_cost(self, capsys, tmp_path):
        path, circ = _write_circuit(tmp_path)
        code, out, _ = _run(capsys, "cost", "--circuit", str(path), "--topology", "line:5")
        assert code == 0
        assert int(out.strip()) == circuit_cost(circ, Topology.line(5))

    def test_topology_file(self, capsys, tmp_path):
        path, circ = _write_circuit(tmp_path)
        topo_path = tmp_path / "topo.json"
        topo_path.write_text(json.dumps(Topology.line(5).to_dict()))
        code, out, _ = _run(capsys, "cost", "--circuit", str(path), "--topology", str(topo_path))
        assert code == 0
        assert int(out.strip()) == circuit_cost(circ, Topology.line(5))

    def test_missing_circuit_file(self, capsys, tmp_path):
        code, _, err = _run(capsys, "cost", "--circuit", str(tmp_path / "nope.json"),
                            "--topology", "line:5")
        assert code == 2
        assert "nope.json" in err

    def test_invalid_json_circuit(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, _ = _run(capsys, "cost", "--circuit", str(path), "--topology", "line:5")
        assert code == 2

    def test_schema_violation(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"qubits": 3, "gadgets": [{"basis": "Q", "angle": "1 pi", "legs": [0]}]}))
        code, _, _ = _run(capsys, "cost", "--circuit", str(path), "--topology", "line:3")
        assert code == 2

    def test_bad_shorthand_is_usage_error(self, capsys, tmp_path):
        path, _ = _write_circuit(tmp_path)
        code, _, _ = _run(capsys, "cost", "--circuit", str(path), "--topology", "line:x")
        assert code == 3

    def test_qubit_mismatch_is_input_error(self, capsys, tmp_path):
        path, _ = _write_circuit(tmp_path, n=6)
        code, _, _ = _run(capsys, "cost", "--circuit", str(path), "--topology", "line:5")
        assert code == 2


class TestOptimizeAndVerify:
    def test_roundtrip(self, capsys, tmp_path):
        path, circ = _write_circuit(tmp_path)
        opt = tmp_path / "opt.json"
        trace = tmp_path / "trace.csv"
        code, _, err = _run(capsys, "optimize", "--circuit", str(path),
                            "--topology", "line:5", "--iterations", "400",
                            "--seed", "2", "--repetitions", "5",
                            "--trace", str(trace), "--out", str(opt))
        assert code == 0
        assert "reduction" in err
        data = json.loads(opt.read_text())
        assert list(data) == ["original", "block", "conjugated", "repetitions", "final_cost"]
        assert trace.read_text().splitlines()[0] == "iter,temp,delta,accepted,cost,best_cost"

        code, out, _ = _run(capsys, "verify", "--optimized", str(opt),
                            "--topology", "line:5")
        assert code == 0
        assert out.startswith("OK")

    def test_deterministic_output(self, capsys, tmp_path):
        path, _ = _write_circuit(tmp_path)
        args = ("optimize", "--circuit", str(path), "--topology", "line:5",
                "--iterations", "200", "--seed", "5")
        _, first, _ = _run(capsys, *args)
        _, second, _ = _run(capsys, *args)
        assert first == second

    def test_t0_flag_accepts_auto_and_numbers(self, capsys, tmp_path):
        path, _ = _write_circuit(tmp_path)
        code, _, _ = _run(capsys, "optimize", "--circuit", str(path), "--topology", "line:5",
                          "--iterations", "10", "--t0", "auto")
        assert code == 0
        code, _, _ = _run(capsys, "optimize", "--circuit", str(path), "--topology", "line:5",
                          "--iterations", "10", "--t0", "3.5")
        assert code == 0
        code, _, _ = _run(capsys, "optimize", "--circuit", str(path), "--topology", "line:5",
                          "--t0", "warm")
        assert code == 3

    def test_verify_catches_tampering(self, capsys, tmp_path):
        path, _ = _write_circuit(tmp_path)
        opt = tmp_path / "opt.json"
        _run(capsys, "optimize", "--circuit", str(path), "--topology", "line:5",
             "--iterations", "300", "--seed", "1", "--out", str(opt))
        data = json.loads(opt.read_text())
        data["conjugated"]["gadgets"][0]["legs"] = [0, 4]
        tampered = tmp_path / "tampered.json"
        tampered.write_text(json.dumps(data))
        code, _, err = _run(capsys, "verify", "--optimized", str(tampered))
        assert code == 4
        assert "deviation" in err

    def test_verify_catches_cost_tampering(self, capsys, tmp_path):
        path, _ = _write_circuit(tmp_path)
        opt = tmp_path / "opt.json"
        _run(capsys, "optimize", "--circuit", str(path), "--topology", "line:5",
             "--iterations", "300", "--seed", "1", "--out", str(opt))
        data = json.loads(opt.read_text())
        data["final_cost"] -= 2
        tampered = tmp_path / "tampered.json"
        tampered.write_text(json.dumps(data))
        # cost check needs the topology; without it the unitary still matches
        code, _, _ = _run(capsys, "verify", "--optimized", str(tampered))
        assert code == 0
        code, _, err = _run(capsys, "verify", "--optimized", str(tampered),
                            "--topology", "line:5")
        assert code == 4
        assert "cost" in err

    def test_verify_large_circuit_hits_resource_guard(self, capsys, tmp_path):
        circ = PhaseCircuit.random(13, 2, min_legs=2, max_legs=2, seed=0)
        payload = {
            "original": circ.to_dict(),
            "block": {"layers": [[]]},
            "conjugated": circ.to_dict(),
            "repetitions": 1,
            "final_cost": 0,
        }
        opt = tmp_path / "big.json"
        opt.write_text(json.dumps(payload))
        code, _, err = _run(capsys, "verify", "--optimized", str(opt))
        assert code == 5
        assert "13" in err


class TestCompile:
    def test_qasm_output(self, capsys, tmp_path):
        path, circ = _write_circuit(tmp_path)
        code, out, _ = _run(capsys, "compile", "--circuit", str(path), "--topology", "line:5")
        assert code == 0
        lines = out.splitlines()
        assert "OPENQASM 2.0;" in lines
        assert 'include "qelib1.inc";' in lines
        assert "qreg q[5];" in lines
        cx_lines = [l for l in lines if l.startswith("cx ")]
        assert len(cx_lines) == circuit_cost(circ, Topology.line(5))

    def test_parametric_angle_refused(self, capsys, tmp_path):
        circ = PhaseCircuit(2, [PhaseGadget("Z", Angle.parameter("theta"), frozenset({0, 1}))])
        path = tmp_path / "param.json"
        path.write_text(json.dumps(circ.to_dict()))
        code, _, err = _run(capsys, "compile", "--circuit", str(path), "--topology", "line:2")
        assert code == 2
        assert "parametric" in err


class TestBench:
    def test_end_to_end(self, capsys, tmp_path):
        config = tmp_path / "exp.json"
        config.write_text(json.dumps({
            "topologies": ["line:4"],
            "gadget_counts": [3],
            "iteration_range": [20, 40, 20],
            "circuits_per_point": 2,
        }))
        out = tmp_path / "runs.csv"
        summary = tmp_path / "summary.csv"
        code, _, err = _run(capsys, "bench", "--config", str(config),
                            "--out", str(out), "--summary", str(summary))
        assert code == 0
        assert "4 runs" in err
        assert out.read_text().splitlines()[0].startswith("qubits,gadgets,")
        assert len(summary.read_text().splitlines()) == 3

    def test_cap_exit_code(self, capsys, tmp_path):
        config = tmp_path / "exp.json"
        config.write_text(json.dumps({
            "topologies": ["line:4"],
            "gadget_counts": [3],
            "iteration_range": [1, 100, 1],
            "circuits_per_point": 10,
            "max_runs": 5,
        }))
        code, _, err = _run(capsys, "bench", "--config", str(config),
                            "--out", str(tmp_path / "x.csv"))
        assert code == 5
        assert "cap" in err

    def test_bad_config_is_input_error(self, capsys, tmp_path):
        config = tmp_path / "exp.json"
        config.write_text(json.dumps({"topologies": ["line:4"]}))
        code, _, _ = _run(capsys, "bench", "--config", str(config),
                          "--out", str(tmp_path / "x.csv"))
        assert code == 2


class TestUsageErrors:
    def test_no_subcommand(self, capsys):
        assert _run(capsys, )[0] == 3

    def test_unknown_subcommand(self, capsys):
        assert _run(capsys, "frobnicate")[0] == 3

    def test_missing_required_flag(self, capsys):
        assert _run(capsys, "cost", "--topology", "line:3")[0] == 3

    def test_bad_schedule_choice(self, capsys, tmp_path):
        path, _ = _write_circuit(tmp_path)
        code, _, _ = _run(capsys, "optimize", "--circuit", str(path),
                          "--topology", "line:5", "--schedule", "sudden")
        assert code == 3


class TestQasmHelper:
    def test_rotation_angle_is_minus_two_theta(self):
        gates = [Rotation("Z", Angle.pi_times(1, 4), 0)]
        text = to_qasm(gates, 1)
        assert f"rz({-2.0 * (3.141592653589793 / 4)!r}) q[0];" in text

    def test_x_rotation_uses_rx(self):
        gates = [Rotation("X", Angle.pi_times(1, 2), 1), CXGate(0, 1)]
        text = to_qasm(gates, 2)
        assert "rx(" in text
        assert "cx q[0],q[1];" in text
