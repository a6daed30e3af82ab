"""Dense-matrix reference semantics for small circuits.

Everything here builds full 2^n x 2^n unitaries, so it is only meant
for checking the symbolic rewrites at small qubit counts.  Qubit 0 is
the most significant bit of the basis-state index (leftmost factor in
tensor products).
"""

from dataclasses import dataclass
import math

import numpy as np

from .circuit import CXGate, PhaseCircuit, PhaseGadget
from .cost import Rotation

MAX_ORACLE_QUBITS = 12

_I2 = np.eye(2, dtype=complex)
_PAULI = {
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
}


def _check_size(num_qubits: int) -> None:
    if not 1 <= num_qubits <= MAX_ORACLE_QUBITS:
        raise ValueError(
            f"oracle supports 1..{MAX_ORACLE_QUBITS} qubits, got {num_qubits}"
        )


def pauli_string(basis: str, legs, num_qubits: int) -> np.ndarray:
    """Tensor product acting as the given Pauli on each leg."""
    _check_size(num_qubits)
    legs = set(legs)
    if legs and max(legs) >= num_qubits:
        raise ValueError(f"legs {sorted(legs)} out of range for {num_qubits} qubits")
    op = np.ones((1, 1), dtype=complex)
    for q in range(num_qubits):
        op = np.kron(op, _PAULI[basis] if q in legs else _I2)
    return op


def gadget_unitary(gadget: PhaseGadget, num_qubits: int) -> np.ndarray:
    """exp(i*theta*P) with P the gadget's Pauli string."""
    theta = gadget.angle.radians()
    p = pauli_string(gadget.basis, gadget.legs, num_qubits)
    dim = 1 << num_qubits
    return math.cos(theta) * np.eye(dim, dtype=complex) + 1j * math.sin(theta) * p


def cx_unitary(gate: CXGate, num_qubits: int) -> np.ndarray:
    _check_size(num_qubits)
    if max(gate.control, gate.target) >= num_qubits:
        raise ValueError(f"{gate} out of range for {num_qubits} qubits")
    dim = 1 << num_qubits
    src = np.arange(dim)
    control_bit = (src >> (num_qubits - 1 - gate.control)) & 1
    dst = src ^ (control_bit << (num_qubits - 1 - gate.target))
    u = np.zeros((dim, dim), dtype=complex)
    u[dst, src] = 1.0
    return u


def gates_unitary(gates, num_qubits: int) -> np.ndarray:
    """Unitary of a time-ordered list of CX gates and rotations."""
    _check_size(num_qubits)
    u = np.eye(1 << num_qubits, dtype=complex)
    for gate in gates:
        if isinstance(gate, CXGate):
            step = cx_unitary(gate, num_qubits)
        elif isinstance(gate, Rotation):
            step = gadget_unitary(
                PhaseGadget(gate.basis, gate.angle, frozenset((gate.qubit,))),
                num_qubits,
            )
        else:
            raise TypeError(f"cannot interpret {gate!r} as a gate")
        u = step @ u
    return u


def circuit_unitary(circuit: PhaseCircuit) -> np.ndarray:
    """Product of gadget unitaries, first gadget applied first."""
    n = circuit.num_qubits
    _check_size(n)
    u = np.eye(1 << n, dtype=complex)
    for i in range(len(circuit)):
        u = gadget_unitary(circuit[i], n) @ u
    return u


def block_unitary(block, num_qubits: int) -> np.ndarray:
    """Unitary of a layered CX block, layer 0 applied first."""
    return gates_unitary(block.gates(), num_qubits)


@dataclass(frozen=True)
class Equivalence:
    """Outcome of a unitary comparison."""

    ok: bool
    max_deviation: float

    def __bool__(self) -> bool:
        return self.ok


def equivalent(
    u: np.ndarray,
    v: np.ndarray,
    *,
    ignore_global_phase: bool = False,
    tol: float = 1e-9,
) -> Equivalence:
    """Entrywise comparison of two same-shaped matrices.

    With ``ignore_global_phase`` the phase is fixed on v's largest
    entry before comparing.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    if ignore_global_phase:
        k = int(np.argmax(np.abs(v)))
        ref = u.flat[k]
        if abs(ref) > 0:
            phase = ref / v.flat[k]
            v = (phase / abs(phase)) * v
    dev = float(np.max(np.abs(u - v))) if u.size else 0.0
    return Equivalence(dev <= tol, dev)


def verify_optimized(
    original: PhaseCircuit,
    block,
    conjugated: PhaseCircuit,
    *,
    tol: float = 1e-9,
) -> Equivalence:
    """Check C * P' * C^dagger == P on full unitaries.

    P is the original circuit, P' the conjugated one and C the block.
    The identity is exact, with no global phase to mod out.
    """
    if original.num_qubits != conjugated.num_qubits:
        raise ValueError(
            f"qubit mismatch: original {original.num_qubits}, "
            f"conjugated {conjugated.num_qubits}"
        )
    n = original.num_qubits
    c = block_unitary(block, n)
    lhs = c @ circuit_unitary(conjugated) @ c.conj().T
    return equivalent(lhs, circuit_unitary(original), tol=tol)
