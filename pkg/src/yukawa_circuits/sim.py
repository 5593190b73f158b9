"""
Dense statevector simulation and the matrix-exponential oracle.

Basis index bit ``j`` encodes qubit ``j``; qubit 0 is least significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit, Gate
from .errors import CapacityError, DomainError
from .pauli import MAX_DENSE_QUBITS, PauliSum, pauli_to_matrix

NORM_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class Statevector:
    """Normalized amplitude vector of length ``2**n``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        dim = amps.size
        if dim < 2 or dim & (dim - 1):
            raise DomainError(f"statevector length {dim} is not a power of two >= 2")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > NORM_TOLERANCE:
            raise DomainError(f"statevector norm {norm!r} deviates from 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @classmethod
    def basis(cls, index: int, n_qubits: int) -> "Statevector":
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[index] = 1
        return cls(amps)

    @classmethod
    def normalized(cls, amplitudes: Sequence[complex]) -> "Statevector":
        amps = np.asarray(amplitudes, dtype=complex)
        return cls(amps / np.linalg.norm(amps))

    @classmethod
    def from_parts(cls, boson: Sequence[complex], fermion: Sequence[complex]) -> "Statevector":
        """Product state with the fermion on qubit 0 and the boson register above it.

        ``boson`` is indexed by Fock number, ``fermion`` by occupation.
        """
        return cls(np.kron(np.asarray(boson, dtype=complex), np.asarray(fermion, dtype=complex)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def fidelity(self, other: "Statevector") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


def _check_width(n: int) -> None:
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"{n} qubits exceeds the dense cap of {MAX_DENSE_QUBITS}")


def _apply_gate(block: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    """Apply ``gate`` to ``block`` of shape ``(2,)*n + (batch,)``.

    Axis ``n - 1 - q`` of the block carries qubit ``q``.
    """
    if gate.kind == "GLOBAL_PHASE":
        return block * np.exp(1j * gate.angle)
    if gate.kind == "CNOT":
        control, target = gate.qubits
        ca, ta = n - 1 - control, n - 1 - target
        out = block.copy()
        idx1 = [slice(None)] * block.ndim
        idx1[ca] = 1
        sub = block[tuple(idx1)]
        # target axis index shifts down by one if it sat after the control axis
        t_axis = ta - (ta > ca)
        out[tuple(idx1)] = np.flip(sub, axis=t_axis)
        return out
    axis = n - 1 - gate.qubits[0]
    moved = np.tensordot(gate.matrix(), block, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


def apply_gates(data: np.ndarray, gates, n: int) -> np.ndarray:
    """Apply gates to a vector (``2**n``) or column batch (``2**n x k``)."""
    vector = data.ndim == 1
    batch = data.reshape(1 << n, -1)
    block = batch.reshape((2,) * n + (batch.shape[1],))
    for g in gates:
        block = _apply_gate(block, g, n)
    out = block.reshape(1 << n, -1)
    return out[:, 0] if vector else out


def apply_circuit(circuit: Circuit, state: Statevector) -> Statevector:
    if circuit.n_qubits != state.n_qubits:
        raise DomainError(
            f"circuit width {circuit.n_qubits} does not match state width {state.n_qubits}"
        )
    _check_width(circuit.n_qubits)
    return Statevector(apply_gates(state.amplitudes.copy(), circuit.gates, circuit.n_qubits))


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary of the whole circuit (first gate applied first)."""
    n = circuit.n_qubits
    _check_width(n)
    return apply_gates(np.eye(1 << n, dtype=complex), circuit.gates, n)


def operator_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Spectral-norm distance between two unitaries after aligning global phase.

    The phase is fixed by ``tr(v^† u)``; the result is zero exactly when the
    operators agree up to a phase.
    """
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        raise DomainError(f"shape mismatch {u.shape} vs {v.shape}")
    overlap = np.vdot(v, u)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0
    return float(np.linalg.norm(u - phase * v, ord=2))


def equal_up_to_phase(u: np.ndarray, v: np.ndarray, atol: float = 1e-10) -> bool:
    return operator_distance(u, v) <= atol


class HermitianPropagator:
    """``exp(-i H t)`` from one eigendecomposition, reusable across a time grid."""

    def __init__(self, hamiltonian: PauliSum | np.ndarray, atol: float = 1e-12):
        if isinstance(hamiltonian, PauliSum):
            if not hamiltonian.is_hermitian(atol):
                raise DomainError("propagator needs a Hermitian operator")
            _check_width(hamiltonian.n_qubits)
            matrix = pauli_to_matrix(hamiltonian)
        else:
            matrix = np.asarray(hamiltonian, dtype=complex)
            if not np.allclose(matrix, matrix.conj().T, atol=atol):
                raise DomainError("propagator needs a Hermitian operator")
        self.matrix = matrix
        self.energies, self.vectors = np.linalg.eigh(matrix)

    def at(self, t: float) -> np.ndarray:
        phases = np.exp(-1j * self.energies * t)
        return (self.vectors * phases) @ self.vectors.conj().T

    def evolve(self, amplitudes: np.ndarray, t: float) -> np.ndarray:
        coeffs = self.vectors.conj().T @ amplitudes
        return self.vectors @ (np.exp(-1j * self.energies * t) * coeffs)


def exact_propagator(hamiltonian: PauliSum, t: float) -> np.ndarray:
    """Dense ``exp(-i H t)`` for a Hermitian Pauli sum."""
    return HermitianPropagator(hamiltonian).at(t)


def expectation(state: Statevector, obs: PauliSum, atol: float = 1e-10) -> float:
    """Real expectation value of a Hermitian observable."""
    if obs.n_qubits != state.n_qubits:
        raise DomainError(f"observable width {obs.n_qubits} vs state width {state.n_qubits}")
    if not obs.is_hermitian():
        raise DomainError("expectation requires a Hermitian observable")
    value = np.vdot(state.amplitudes, pauli_to_matrix(obs) @ state.amplitudes)
    if abs(value.imag) > atol:
        raise AssertionError(f"imaginary residue {value.imag!r} in a Hermitian expectation")
    return float(value.real)


def sample_counts(state: Statevector, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Born-rule histogram over basis indices from ``shots`` draws."""
    probs = state.probabilities()
    probs = probs / probs.sum()
    return rng.multinomial(shots, probs)


def is_unitary(u: np.ndarray, atol: float = 1e-10) -> bool:
    return bool(np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=atol))


def unitarity_defect(u: np.ndarray) -> float:
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), ord=2))


def kron_all(factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


__all__ = [
    "Statevector",
    "apply_circuit",
    "apply_gates",
    "circuit_unitary",
    "operator_distance",
    "equal_up_to_phase",
    "HermitianPropagator",
    "exact_propagator",
    "expectation",
    "sample_counts",
    "is_unitary",
    "unitarity_defect",
    "kron_all",
]
