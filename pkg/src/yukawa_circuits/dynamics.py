"""
Quench dynamics: particle numbers along exact, compressed and Trotterized
evolutions, the one-boson closed form and the non-interaction criterion.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CapacityError, DomainError
from .model import ModelParams, boson_number_operator, fermion_number_operator, total_hamiltonian
from .pauli import MAX_DENSE_QUBITS, PauliString, PauliSum, pauli_to_matrix
from .sim import HermitianPropagator, Statevector, apply_circuit, sample_counts
from .synth import compressed_two_qubit_circuit, trotter_circuit

EXACT = "EXACT"
COMPRESSED = "COMPRESSED"
TROTTER = "TROTTER"
METHODS = (EXACT, COMPRESSED, TROTTER)

EXPECTATION_TOL = 1e-10


def _system_width_check(state: Statevector, params: ModelParams) -> None:
    if state.n_qubits != params.n_qubits:
        raise DomainError(f"state width {state.n_qubits} does not match N+1 = {params.n_qubits}")


def _number_diagonals(n_boson: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonals of the boson and fermion number operators on ``N + 1`` qubits."""
    idx = np.arange(1 << (n_boson + 1))
    return (idx >> 1).astype(float), (idx & 1).astype(float)


def particle_numbers(state: Statevector, params: ModelParams) -> tuple[float, float]:
    """``(<b†b>, <n_f>)`` with the boson number on qubits 1..N and
    ``n_f = (1 - <Z_0>)/2`` on the fermion qubit."""
    _system_width_check(state, params)
    nb = boson_number_operator(params.n_boson_qubits).tensor(PauliSum.identity(1))
    nf = PauliSum.identity(params.n_boson_qubits).tensor(fermion_number_operator())
    amps = state.amplitudes
    values = []
    for op in (nb, nf):
        v = np.vdot(amps, pauli_to_matrix(op) @ amps)
        if abs(v.imag) > EXPECTATION_TOL:
            raise AssertionError(f"imaginary residue {v.imag!r} in a number expectation")
        values.append(float(v.real))
    return values[0], values[1]


def _pauli_expectation(amps: np.ndarray, label: str) -> float:
    mat = PauliString.from_label(label).to_matrix()
    return float(np.vdot(amps, mat @ amps).real)


def analytic_boson_number(psi0: Statevector, m: float, eta: float, t: float) -> float:
    """Closed-form ``<b†b>(t)`` for one boson qubit (boson letter on qubit 1,
    fermion letter on qubit 0)."""
    if psi0.n_qubits != 2:
        raise DomainError("closed form holds for one boson qubit only")
    w2 = m * m + eta * eta
    w = math.sqrt(w2)
    amps = psi0.amplitudes
    zi = _pauli_expectation(amps, "ZI")
    xz = _pauli_expectation(amps, "XZ")
    yz = _pauli_expectation(amps, "YZ")
    c, s = math.cos(w * t), math.sin(w * t)
    return 0.5 * (1 - (m * m + eta * eta * c) / w2 * zi
                  - m * eta * (1 - c) / w2 * xz
                  + eta * s / w * yz)


def _local_expectations(amps: np.ndarray) -> dict[str, float]:
    mats = {"X": np.array([[0, 1], [1, 0]]), "Y": np.array([[0, -1j], [1j, 0]]),
            "Z": np.diag([1, -1])}
    return {k: float(np.vdot(amps, v @ amps).real) for k, v in mats.items()}


def noninteracting_predicate(boson: Sequence[complex], fermion: Sequence[complex],
                             atol: float = EXPECTATION_TOL) -> bool:
    """True when the initial product state does not feel the interaction.

    Holds if ``<Z>_f = 0`` or the boson state has definite parity of its
    lowest Fock digit; for one boson qubit the latter is ``<X>_b = <Y>_b = 0``.
    """
    b = np.asarray(boson, dtype=complex).reshape(-1)
    f = np.asarray(fermion, dtype=complex).reshape(-1)
    if f.size != 2 or b.size < 2 or b.size & (b.size - 1):
        raise DomainError("expected a fermion 2-vector and a boson vector of length 2^N")
    for part in (b, f):
        if abs(np.linalg.norm(part) - 1) > 1e-10:
            raise DomainError("state factors must be normalized")
    if abs(_local_expectations(f)["Z"]) <= atol:
        return True
    if b.size == 2:
        e = _local_expectations(b)
        return abs(e["X"]) <= atol and abs(e["Y"]) <= atol
    parity = np.where(np.arange(b.size) & 1, -1.0, 1.0)
    return abs(abs(float(np.sum(parity * np.abs(b) ** 2))) - 1) <= atol


@dataclass(frozen=True)
class SeriesRow:
    t: float
    t_over_t0: float
    n_boson: float
    n_fermion: float
    method: str


@dataclass
class TimeSeries:
    """Particle numbers on a time grid for one evolution method."""

    rows: list[SeriesRow] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=float)

    @property
    def times(self) -> np.ndarray:
        return self.column("t")

    @property
    def n_boson(self) -> np.ndarray:
        return self.column("n_boson")

    @property
    def n_fermion(self) -> np.ndarray:
        return self.column("n_fermion")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "t_over_t0", "n_boson", "n_fermion", "method"])
        for r in self.rows:
            writer.writerow([_fmt(r.t), _fmt(r.t_over_t0), _fmt(r.n_boson), _fmt(r.n_fermion), r.method])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps([{"t": float(_fmt(r.t)), "t_over_t0": float(_fmt(r.t_over_t0)),
                            "n_boson": float(_fmt(r.n_boson)), "n_fermion": float(_fmt(r.n_fermion)),
                            "method": r.method} for r in self.rows], indent=2)


ROUNDOFF = 1e-14


def _fmt(x: float) -> str:
    # snap roundoff (and negative zero) to 0 so output does not carry noise digits
    return "%.12g" % (0.0 if abs(x) < ROUNDOFF else x)


def _pad_ancilla(amps: np.ndarray, width: int) -> np.ndarray:
    extra = width - (amps.size.bit_length() - 1)
    if extra == 0:
        return amps
    return np.concatenate([amps, np.zeros(amps.size * ((1 << extra) - 1), dtype=complex)])


def _evolved_states(params: ModelParams, psi0: Statevector, times: np.ndarray, method: str,
                    trotter_steps: int, trotter_order: int) -> list[np.ndarray]:
    dim = 1 << params.n_qubits
    if method == EXACT:
        prop = HermitianPropagator(total_hamiltonian(params))
        return [prop.evolve(psi0.amplitudes, t) for t in times]
    if method == COMPRESSED:
        if params.n_boson_qubits != 1:
            raise DomainError("compressed evolution needs exactly one boson qubit")
        return [apply_circuit(compressed_two_qubit_circuit(params, t), psi0).amplitudes for t in times]
    out = []
    for t in times:
        circ = trotter_circuit(params, t, trotter_steps, trotter_order)
        state = Statevector(_pad_ancilla(psi0.amplitudes, circ.n_qubits))
        amps = apply_circuit(circ, state).amplitudes
        leak = np.linalg.norm(amps[dim:])
        if leak > 1e-9:
            raise AssertionError(f"ancilla left in a non-zero state (leakage {leak:.3g})")
        out.append(amps[:dim] / np.linalg.norm(amps[:dim]))
    return out


def quench_series(params: ModelParams, psi0: Statevector, times: Sequence[float],
                  method: str = EXACT, trotter_steps: int = 10, trotter_order: int = 2,
                  shots: int | None = None, seed: int | None = None) -> TimeSeries:
    """Particle numbers after a quench from ``psi0`` on the given time grid.

    With ``shots`` set, numbers are estimated from Born-rule samples drawn by a
    generator seeded with ``seed``; otherwise they are exact expectations.
    """
    method = method.upper()
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    _system_width_check(psi0, params)
    width = params.n_qubits + (1 if method == TROTTER and params.n_boson_qubits >= 3 else 0)
    if width > MAX_DENSE_QUBITS:
        raise CapacityError(f"{width} qubits exceeds the dense cap of {MAX_DENSE_QUBITS}")
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise DomainError("time grid must be a non-empty 1-D sequence")
    if np.any(np.diff(times) <= 0):
        raise DomainError("time grid must be strictly increasing")
    if shots is not None and shots < 1:
        raise DomainError("shots must be positive")
    states = _evolved_states(params, psi0, times, method, trotter_steps, trotter_order)
    nb_diag, nf_diag = _number_diagonals(params.n_boson_qubits)
    rng = np.random.default_rng(seed)
    t0 = params.t0
    series = TimeSeries()
    for t, amps in zip(times, states):
        probs = np.abs(amps) ** 2
        if abs(probs.sum() - 1) > 1e-10:
            raise AssertionError("norm drift beyond 1e-10")
        if shots is None:
            nb, nf = particle_numbers(Statevector(amps), params)
        else:
            counts = sample_counts(Statevector(amps), shots, rng)
            nb = float(counts @ nb_diag) / shots
            nf = float(counts @ nf_diag) / shots
        series.rows.append(SeriesRow(float(t), float(t) / t0, nb, nf, method))
    return series


def time_grid(params: ModelParams, t_max_over_t0: float, n_points: int) -> np.ndarray:
    """``linspace(0, t_max t0, n_points)``."""
    if n_points < 2:
        raise DomainError("n_points must be >= 2")
    if not t_max_over_t0 > 0:
        raise DomainError("t_max must be positive")
    return np.linspace(0.0, t_max_over_t0 * params.t0, int(n_points))


__all__ = [
    "EXACT",
    "COMPRESSED",
    "TROTTER",
    "particle_numbers",
    "analytic_boson_number",
    "noninteracting_predicate",
    "SeriesRow",
    "TimeSeries",
    "quench_series",
    "time_grid",
]
