"""Mixed ZX phase gadget circuits.

A phase gadget is a rotation exp(i*theta*P) generated by a Pauli tensor P
that acts as Z (or X) on its *legs* and as identity elsewhere.  A circuit
is an ordered list of such gadgets.  Conjugating a circuit by a CX gate
never touches order, bases or angles; it only toggles leg membership:

* Z gadget: if the CX target is a leg, toggle the control.
* X gadget: if the CX control is a leg, toggle the target.

Both rules are involutions, so conjugating twice by the same gate restores
the circuit exactly.

Internally each gadget's leg set is a Python int used as a bitset, which
makes the toggle a couple of word operations and gives a hashable cache
key for the cost model.  ``encode``/``decode`` expose the equivalent
binary-matrix view (one column per gadget, one row per qubit).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import math

import numpy as np

Z = "Z"
X = "X"

ANGLE_JSON_HINT = 'expected "p/q pi", "p pi" or {"param": name}'


class Angle:
    """Gadget rotation angle: an exact rational multiple of pi, or a named
    parameter with an optional rational scale factor.

    Concrete angles are normalized to [0, 2*pi), i.e. the fraction lives in
    [0, 2).  Exact arithmetic keeps serialized circuits byte-stable.
    """

    __slots__ = ("frac", "param", "coeff")

    def __init__(self, frac=None, *, param: str | None = None, coeff=1):
        if (frac is None) == (param is None):
            raise ValueError("Angle needs exactly one of frac or param")
        if param is not None:
            if not param:
                raise ValueError("parameter name must be non-empty")
            self.frac = None
            self.param = param
            self.coeff = Fraction(coeff)
            if self.coeff == 0:
                raise ValueError("parameter coefficient must be non-zero")
        else:
            self.frac = Fraction(frac) % 2
            self.param = None
            self.coeff = None

    @classmethod
    def pi_times(cls, numerator: int, denominator: int = 1) -> "Angle":
        """Angle (numerator/denominator) * pi."""
        return cls(Fraction(numerator, denominator))

    @classmethod
    def parameter(cls, name: str, coeff=1) -> "Angle":
        return cls(param=name, coeff=coeff)

    @property
    def is_parametric(self) -> bool:
        return self.param is not None

    def radians(self) -> float:
        if self.is_parametric:
            raise ValueError(f"parametric angle {self} has no numeric value")
        return float(self.frac) * math.pi

    def __eq__(self, other) -> bool:
        if not isinstance(other, Angle):
            return NotImplemented
        return (self.frac, self.param, self.coeff) == (other.frac, other.param, other.coeff)

    def __hash__(self) -> int:
        return hash((self.frac, self.param, self.coeff))

    def __repr__(self) -> str:
        return f"Angle({self.to_json()!r})"

    def __str__(self) -> str:
        if self.is_parametric:
            if self.coeff == 1:
                return self.param
            return f"{self.coeff} {self.param}"
        if self.frac.denominator == 1:
            return f"{self.frac.numerator} pi"
        return f"{self.frac.numerator}/{self.frac.denominator} pi"

    def to_json(self):
        if self.is_parametric:
            if self.coeff == 1:
                return {"param": self.param}
            return {"param": self.param, "coeff": str(self.coeff)}
        return str(self)

    @classmethod
    def from_json(cls, value) -> "Angle":
        if isinstance(value, dict):
            if "param" not in value:
                raise ValueError(f"bad angle {value!r}: {ANGLE_JSON_HINT}")
            return cls(param=value["param"], coeff=Fraction(value.get("coeff", 1)))
        if isinstance(value, str) and value.endswith("pi"):
            body = value[:-2].strip()
            try:
                return cls(Fraction(body if body else 1))
            except (ValueError, ZeroDivisionError):
                pass
        raise ValueError(f"bad angle {value!r}: {ANGLE_JSON_HINT}")


@dataclass(frozen=True)
class CXGate:
    """CX with a Z qubit (control) and an X qubit (target)."""

    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError(f"CX control and target must differ, got {self.control}")

    @property
    def qubits(self) -> frozenset[int]:
        return frozenset((self.control, self.target))

    def to_dict(self) -> dict:
        return {"control": self.control, "target": self.target}

    @classmethod
    def from_dict(cls, data: dict) -> "CXGate":
        return cls(data["control"], data["target"])


@dataclass(frozen=True)
class PhaseGadget:
    """One phase gadget: basis, angle and a non-empty leg set."""

    basis: str
    angle: Angle
    legs: frozenset[int]

    def __post_init__(self):
        if self.basis not in (Z, X):
            raise ValueError(f"basis must be {Z!r} or {X!r}, got {self.basis!r}")
        legs = frozenset(self.legs)
        if not legs:
            raise ValueError("gadget must have at least one leg")
        if any(q < 0 for q in legs):
            raise ValueError(f"negative qubit index in legs {sorted(legs)}")
        object.__setattr__(self, "legs", legs)

    def to_dict(self) -> dict:
        return {"basis": self.basis, "angle": self.angle.to_json(), "legs": sorted(self.legs)}

    @classmethod
    def from_dict(cls, data: dict) -> "PhaseGadget":
        return cls(data["basis"], Angle.from_json(data["angle"]), frozenset(data["legs"]))


def _bits_to_set(bits: int) -> frozenset[int]:
    out = []
    q = 0
    while bits:
        if bits & 1:
            out.append(q)
        bits >>= 1
        q += 1
    return frozenset(out)


def _set_to_bits(legs) -> int:
    bits = 0
    for q in legs:
        bits |= 1 << q
    return bits


class PhaseCircuit:
    """Ordered list of phase gadgets on a fixed number of qubits.

    Single-writer value: mutate from one thread at a time.  ``copy`` is
    cheap (three flat lists).
    """

    __slots__ = ("num_qubits", "_is_z", "_legs", "_angles")

    def __init__(self, num_qubits: int, gadgets=()):
        if num_qubits < 1:
            raise ValueError(f"num_qubits must be >= 1, got {num_qubits}")
        self.num_qubits = num_qubits
        self._is_z: list[bool] = []
        self._legs: list[int] = []  # bitset per gadget
        self._angles: list[Angle] = []
        for g in gadgets:
            self.append(g)

    def append(self, gadget: PhaseGadget) -> "PhaseCircuit":
        if max(gadget.legs) >= self.num_qubits:
            raise ValueError(
                f"legs {sorted(gadget.legs)} out of range for {self.num_qubits} qubits"
            )
        self._is_z.append(gadget.basis == Z)
        self._legs.append(_set_to_bits(gadget.legs))
        self._angles.append(gadget.angle)
        return self

    def __len__(self) -> int:
        return len(self._legs)

    def __getitem__(self, index: int) -> PhaseGadget:
        return PhaseGadget(
            Z if self._is_z[index] else X,
            self._angles[index],
            _bits_to_set(self._legs[index]),
        )

    @property
    def gadgets(self) -> tuple[PhaseGadget, ...]:
        return tuple(self[i] for i in range(len(self)))

    def leg_bits(self, index: int) -> int:
        """Leg set of one gadget as a bitset (hot-path accessor)."""
        return self._legs[index]

    def is_z(self, index: int) -> bool:
        return self._is_z[index]

    def copy(self) -> "PhaseCircuit":
        dup = PhaseCircuit.__new__(PhaseCircuit)
        dup.num_qubits = self.num_qubits
        dup._is_z = self._is_z.copy()
        dup._legs = self._legs.copy()
        dup._angles = self._angles.copy()
        return dup

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhaseCircuit):
            return NotImplemented
        return (
            self.num_qubits == other.num_qubits
            and self._is_z == other._is_z
            and self._legs == other._legs
            and self._angles == other._angles
        )

    def __repr__(self) -> str:
        return f"PhaseCircuit({self.num_qubits} qubits, {len(self)} gadgets)"

    # -- rewriting -----------------------------------------------------

    def conjugate_by_cx(self, gate: CXGate) -> list[int]:
        """Conjugate every gadget by ``gate`` in place.

        Returns the positions of the gadgets whose legs changed.  Applying
        the same gate twice is a no-op overall.
        """
        cmask = 1 << gate.control
        tmask = 1 << gate.target
        touched = []
        legs = self._legs
        is_z = self._is_z
        for idx in range(len(legs)):
            bits = legs[idx]
            if is_z[idx]:
                if bits & tmask:
                    legs[idx] = bits ^ cmask
                    touched.append(idx)
            elif bits & cmask:
                legs[idx] = bits ^ tmask
                touched.append(idx)
        return touched

    # -- constructions -------------------------------------------------

    @classmethod
    def random(
        cls,
        num_qubits: int,
        num_gadgets: int,
        *,
        min_legs: int,
        max_legs: int,
        seed,
    ) -> "PhaseCircuit":
        """Sample gadgets i.i.d.: uniform basis, leg count uniform in
        [min_legs, max_legs], legs a uniform subset of that size, angle a
        uniform multiple of pi/4 in (0, 2*pi).
        """
        if not (1 <= min_legs <= max_legs <= num_qubits):
            raise ValueError(
                f"need 1 <= min_legs <= max_legs <= num_qubits, "
                f"got {min_legs}, {max_legs}, {num_qubits}"
            )
        if num_gadgets < 0:
            raise ValueError(f"num_gadgets must be >= 0, got {num_gadgets}")
        rng = np.random.default_rng(seed)
        circ = cls(num_qubits)
        for _ in range(num_gadgets):
            basis = Z if rng.integers(2) == 0 else X
            k = int(rng.integers(min_legs, max_legs + 1))
            legs = rng.choice(num_qubits, size=k, replace=False)
            angle = Angle.pi_times(int(rng.integers(1, 8)), 4)
            circ.append(PhaseGadget(basis, angle, frozenset(int(q) for q in legs)))
        return circ

    def ccz(self, a: int, b: int, c: int) -> "PhaseCircuit":
        """Append the 7-gadget phase decomposition of CCZ on (a, b, c)."""
        for g in ccz_gadgets(a, b, c):
            self.append(g)
        return self

    # -- matrix view (encode/decode) ----------------------------------

    def encode(self):
        """Binary-matrix view: (L_z, L_x, pos_z, pos_x, angles).

        L_z / L_x have one row per qubit and one column per Z / X gadget;
        pos_z / pos_x map columns back to circuit positions; angles is the
        full angle list in circuit order.
        """
        pos_z = tuple(i for i, z in enumerate(self._is_z) if z)
        pos_x = tuple(i for i, z in enumerate(self._is_z) if not z)
        n = self.num_qubits
        l_z = np.zeros((n, len(pos_z)), dtype=np.uint8)
        l_x = np.zeros((n, len(pos_x)), dtype=np.uint8)
        for col, i in enumerate(pos_z):
            for q in range(n):
                l_z[q, col] = (self._legs[i] >> q) & 1
        for col, i in enumerate(pos_x):
            for q in range(n):
                l_x[q, col] = (self._legs[i] >> q) & 1
        return l_z, l_x, pos_z, pos_x, tuple(self._angles)

    @classmethod
    def decode(cls, l_z, l_x, pos_z, pos_x, angles) -> "PhaseCircuit":
        """Inverse of :meth:`encode`.  Rejects inconsistent dimensions."""
        l_z = np.asarray(l_z, dtype=np.uint8)
        l_x = np.asarray(l_x, dtype=np.uint8)
        if l_z.ndim != 2 or l_x.ndim != 2:
            raise ValueError("leg matrices must be 2-dimensional")
        if l_z.shape[0] != l_x.shape[0]:
            raise ValueError(
                f"leg matrices disagree on qubit count: {l_z.shape[0]} vs {l_x.shape[0]}"
            )
        if l_z.shape[1] != len(pos_z) or l_x.shape[1] != len(pos_x):
            raise ValueError("position lists do not match matrix columns")
        m = len(pos_z) + len(pos_x)
        if sorted(tuple(pos_z) + tuple(pos_x)) != list(range(m)):
            raise ValueError("position lists must partition 0..m-1")
        if len(angles) != m:
            raise ValueError(f"expected {m} angles, got {len(angles)}")
        n = l_z.shape[0]
        slots: list[PhaseGadget | None] = [None] * m
        for col, i in enumerate(pos_z):
            legs = frozenset(int(q) for q in np.nonzero(l_z[:, col])[0])
            slots[i] = PhaseGadget(Z, angles[i], legs)
        for col, i in enumerate(pos_x):
            legs = frozenset(int(q) for q in np.nonzero(l_x[:, col])[0])
            slots[i] = PhaseGadget(X, angles[i], legs)
        return cls(n, slots)

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "qubits": self.num_qubits,
            "gadgets": [self[i].to_dict() for i in range(len(self))],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PhaseCircuit":
        return cls(data["qubits"], (PhaseGadget.from_dict(g) for g in data["gadgets"]))


def ccz_gadgets(a: int, b: int, c: int) -> list[PhaseGadget]:
    """CCZ on distinct qubits (a, b, c) as 7 Z phase gadgets, one per
    non-empty subset, equal to diag(1,...,1,-1) up to global phase.

    Odd-size subsets get angle -pi/8, even-size subsets +pi/8.
    """
    if len({a, b, c}) != 3:
        raise ValueError(f"ccz needs three distinct qubits, got {a}, {b}, {c}")
    out = []
    for size in (1, 2, 3):
        angle = Angle.pi_times(-1 if size % 2 else 1, 8)
        for subset in combinations((a, b, c), size):
            out.append(PhaseGadget(Z, angle, frozenset(subset)))
    return out
