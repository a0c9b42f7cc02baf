# src/quantum/statevector.py
"""
Dense state-vector simulation for the gate set used by the measurement protocols.

Basis labels are little-endian: bit k of the basis index is the state of qubit k.
Rotations follow RZ(phi) = exp(-i phi Z / 2) and RY(theta) = exp(-i theta Y / 2).
Global phase is not tracked.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from src.core.errors import DimensionMismatchError, InvalidGateError, InvalidStateError

NORM_TOLERANCE = 1e-10

_SQRT_HALF = 1.0 / np.sqrt(2.0)
_HADAMARD = np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=complex)
_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


class GateKind(str, Enum):
    HADAMARD = "H"
    RZ = "RZ"
    RY = "RY"
    PAULI_X = "X"
    CNOT = "CX"


@dataclass(frozen=True)
class Gate:
    """
    A single gate. `qubits` is (target,) for one-qubit kinds and
    (control, target) for CNOT; `angle` is used by RZ and RY only.
    """
    kind: GateKind
    qubits: Tuple[int, ...]
    angle: float = 0.0

    @classmethod
    def hadamard(cls, qubit: int) -> "Gate":
        return cls(GateKind.HADAMARD, (qubit,))

    @classmethod
    def rz(cls, qubit: int, phi: float) -> "Gate":
        return cls(GateKind.RZ, (qubit,), float(phi))

    @classmethod
    def ry(cls, qubit: int, theta: float) -> "Gate":
        return cls(GateKind.RY, (qubit,), float(theta))

    @classmethod
    def pauli_x(cls, qubit: int) -> "Gate":
        return cls(GateKind.PAULI_X, (qubit,))

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls(GateKind.CNOT, (control, target))

    def inverse(self) -> "Gate":
        if self.kind in (GateKind.RZ, GateKind.RY):
            return Gate(self.kind, self.qubits, -self.angle)
        # H, X and CNOT are self-inverse
        return self

    def matrix(self) -> np.ndarray:
        """2x2 unitary of a one-qubit gate."""
        if self.kind == GateKind.HADAMARD:
            return _HADAMARD
        if self.kind == GateKind.PAULI_X:
            return _PAULI_X
        if self.kind == GateKind.RZ:
            half = self.angle / 2.0
            return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=complex)
        if self.kind == GateKind.RY:
            c, s = np.cos(self.angle / 2.0), np.sin(self.angle / 2.0)
            return np.array([[c, -s], [s, c]], dtype=complex)
        raise InvalidGateError(f"{self.kind.value} is not a one-qubit gate")

    def validate(self, num_qubits: int) -> None:
        for q in self.qubits:
            if not 0 <= q < num_qubits:
                raise InvalidGateError(
                    f"{self} addresses qubit {q} outside a {num_qubits}-qubit register")
        if self.kind == GateKind.CNOT and self.qubits[0] == self.qubits[1]:
            raise InvalidGateError(f"CNOT control equals target ({self.qubits[0]})")

    def __str__(self) -> str:
        args = ",".join(str(q) for q in self.qubits)
        if self.kind in (GateKind.RZ, GateKind.RY):
            return f"{self.kind.value}({args};{self.angle:.6g})"
        return f"{self.kind.value}({args})"


@dataclass
class QuantumState:
    """Complex amplitude vector over `num_qubits` qubits."""
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.num_qubits < 1:
            raise InvalidStateError("a state needs at least one qubit")
        if self.amplitudes.shape != (2 ** self.num_qubits,):
            raise InvalidStateError(
                f"expected {2 ** self.num_qubits} amplitudes, got {self.amplitudes.shape}")

    @classmethod
    def zero(cls, num_qubits: int) -> "QuantumState":
        """|0...0>"""
        amplitudes = np.zeros(2 ** num_qubits, dtype=complex)
        amplitudes[0] = 1.0
        return cls(num_qubits, amplitudes)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex]) -> "QuantumState":
        """Build a state from a normalised amplitude vector of length 2^n."""
        amplitudes = np.asarray(amplitudes, dtype=complex)
        size = amplitudes.shape[0] if amplitudes.ndim == 1 else 0
        if size < 2 or size & (size - 1):
            raise InvalidStateError(f"amplitude count {size} is not a power of two >= 2")
        state = cls(size.bit_length() - 1, amplitudes)
        if abs(state.norm() - 1.0) > NORM_TOLERANCE:
            raise InvalidStateError(f"state is not normalised (norm {state.norm():.12g})")
        return state

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def copy(self) -> "QuantumState":
        return QuantumState(self.num_qubits, self.amplitudes.copy())


@dataclass
class Circuit:
    num_qubits: int
    gates: List[Gate] = field(default_factory=list)

    def __post_init__(self):
        for gate in self.gates:
            gate.validate(self.num_qubits)

    def append(self, gate: Gate) -> "Circuit":
        gate.validate(self.num_qubits)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for gate in gates:
            self.append(gate)
        return self

    def inverse(self) -> "Circuit":
        """Reversed circuit of inverted gates."""
        return Circuit(self.num_qubits, [g.inverse() for g in reversed(self.gates)])

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)


def _axis(num_qubits: int, qubit: int) -> int:
    # C-order reshape puts the most significant bit on axis 0
    return num_qubits - 1 - qubit


def apply_gate(state: QuantumState, gate: Gate) -> QuantumState:
    """
    Apply one gate and return the new state; the input state is not modified.

    Raises:
        InvalidGateError: qubit index out of range or CNOT with control == target
    """
    n = state.num_qubits
    gate.validate(n)
    psi = state.amplitudes.reshape((2,) * n)

    if gate.kind == GateKind.CNOT:
        control, target = gate.qubits
        c_axis, t_axis = _axis(n, control), _axis(n, target)
        psi = psi.copy()
        index = [slice(None)] * n
        index[c_axis] = 1
        # the control axis is dropped from the slice, shifting later axes down
        sub_axis = t_axis - 1 if t_axis > c_axis else t_axis
        psi[tuple(index)] = np.flip(psi[tuple(index)], axis=sub_axis).copy()
    else:
        axis = _axis(n, gate.qubits[0])
        psi = np.moveaxis(np.tensordot(gate.matrix(), psi, axes=([1], [axis])), 0, axis)

    return QuantumState(n, np.ascontiguousarray(psi).reshape(-1))


def run_circuit(circuit: Circuit, initial: QuantumState) -> QuantumState:
    """Apply the circuit's gates in order to `initial`."""
    if circuit.num_qubits != initial.num_qubits:
        raise DimensionMismatchError(
            f"circuit has {circuit.num_qubits} qubits, state has {initial.num_qubits}")
    state = initial
    for gate in circuit:
        state = apply_gate(state, gate)
    return state


def parity_signs(num_qubits: int, qubits: Iterable[int]) -> np.ndarray:
    """(-1)^(parity of the selected bits) for every basis label."""
    mask = 0
    for q in qubits:
        if not 0 <= q < num_qubits:
            raise InvalidStateError(f"qubit {q} outside a {num_qubits}-qubit register")
        mask |= 1 << q
    labels = np.arange(2 ** num_qubits, dtype=np.uint64)
    parity = np.bitwise_count(labels & np.uint64(mask)) & 1
    return 1.0 - 2.0 * parity.astype(float)


def outcome_probabilities(state: QuantumState) -> np.ndarray:
    """Born-rule probabilities of the 2^n computational basis outcomes."""
    return np.abs(state.amplitudes) ** 2


def expectation_z_string(state: QuantumState, qubits: Iterable[int]) -> float:
    """
    Exact <Z_S> over the qubit subset S.

    Raises:
        InvalidStateError: S is empty
    """
    qubits = sorted(set(qubits))
    if not qubits:
        raise InvalidStateError("empty Z-string: expectation of the identity requested")
    signs = parity_signs(state.num_qubits, qubits)
    return float(np.dot(signs, outcome_probabilities(state)))
