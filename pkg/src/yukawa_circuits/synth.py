"""
Circuit synthesis for the single-site Yukawa model.

One boson qubit admits an exact two-CNOT circuit valid for any evolution
time. Two boson qubits get an exact eight-CNOT second-order Trotter step built
from a KAK factorization of the eigenbasis of ``b + b†``. Wider registers use
a general Pauli-string pipeline (star or star+ancilla layout) whose transition
zones cost one CNOT per differing letter.

Global phases are not tracked; all equalities hold modulo a phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit, CircuitBuilder, Gate
from .errors import DomainError
from .model import ModelParams, build_hamiltonian, even_y_strings
from .pauli import MAX_DENSE_QUBITS, PauliString, PauliSum, hamming_distance, hamming_weight
from .sim import circuit_unitary, operator_distance

STAR = "STAR"
STAR_ANCILLA = "STAR_ANCILLA"
LAYOUTS = (STAR, STAR_ANCILLA)


@dataclass(frozen=True)
class SynthesisReport:
    circuit: Circuit
    cnot_count: int
    target_description: str
    verification: float | None = None

    def __post_init__(self):
        if self.verification is not None and self.verification < 0:
            raise DomainError("verification distance must be non-negative")

    def to_dict(self) -> dict:
        return {
            "target": self.target_description,
            "cnot_count": self.cnot_count,
            "verification_distance": self.verification,
            "circuit": self.circuit.to_dict(),
        }


# --------------------------------------------------------------------------
# one-boson register: exact compression


def euler_angles(m: float, eta: float, t: float) -> tuple[float, float]:
    """ZXZ angles ``(alpha, beta)`` for ``exp[i (m X + eta Z) t / 2]``.

    The target equals ``RZ(alpha + pi) RX(beta) RZ(alpha - pi)`` exactly
    (no residual phase). ``alpha`` stays in ``[-pi/2, pi/2]``, so it is 0
    whenever the target has no Z component; at ``omega t = 2 k pi`` this gives
    ``(0, 0)`` for even ``k`` and ``(0, 2 pi)``, which is ``-I``, for odd ``k``.
    """
    if m <= 0:
        raise DomainError("boson mass must be positive")
    if not math.isfinite(t):
        raise DomainError("evolution time must be finite")
    omega = math.hypot(m, eta)
    c, s = math.cos(omega * t / 2), math.sin(omega * t / 2)
    diag_im = s * eta / omega
    # fold the sign of c into beta so alpha never picks up a pi
    sign = 1.0 if c >= 0 else -1.0
    alpha = -math.atan2(sign * diag_im, sign * c) + 0.0
    beta = 2 * math.atan2(s * m / omega, sign * math.hypot(c, diag_im))
    return alpha, beta


def euler_target(m: float, eta: float, t: float) -> np.ndarray:
    """Dense ``exp[i (m X + eta Z) t / 2]``."""
    omega = math.hypot(m, eta)
    c, s = math.cos(omega * t / 2), math.sin(omega * t / 2)
    return np.array(
        [[c + 1j * s * eta / omega, 1j * s * m / omega],
         [1j * s * m / omega, c - 1j * s * eta / omega]]
    )


def free_layer(h0: PauliSum, tau: float) -> list[Gate]:
    """RZ gates realizing ``exp(-i H0 tau)`` for a sum of single-qubit Z terms.

    Identity terms only contribute a global phase and are skipped.
    """
    gates = []
    for string, coeff in h0:
        support = string.support()
        if not support:
            continue
        if len(support) != 1 or string[support[0]] != "Z":
            raise DomainError(f"free layer expects single-qubit Z terms, got {string}")
        gates.append(Gate("RZ", (support[0],), 2 * coeff.real * tau))
    return gates


def compressed_two_qubit_circuit(params: ModelParams, t: float) -> Circuit:
    """Two-CNOT circuit equal to ``exp(-i (H0 + Hint) t)`` for one boson qubit.

    The fermion Z commutes with the whole Hamiltonian, so the evolution splits
    into a fermion phase and a boson rotation whose X-component changes sign
    with the fermion. A CNOT pair flips that sign; in the Hadamard frame the
    conditional rotation becomes the fixed gate ``exp[i (m X + eta Z) t/2]``.
    """
    if params.n_boson_qubits != 1:
        raise DomainError("compressed circuit exists only for a one-qubit boson register")
    alpha, beta = euler_angles(params.m, params.eta, t)
    b = CircuitBuilder(2)
    b.add("H", 1).cnot(0, 1)
    b.rz(1, alpha - math.pi).rx(1, beta).rz(1, alpha + math.pi)
    b.cnot(0, 1).add("H", 1)
    b.rz(0, -2 * params.M * t)
    return b.build()


# --------------------------------------------------------------------------
# two-qubit boson register: KAK eigenbasis and the 8-CNOT Trotter step

LAMBDA_PLUS = math.sqrt(3 + math.sqrt(6))
LAMBDA_MINUS = math.sqrt(3 - math.sqrt(6))
KAK_PHI = math.atan(math.sqrt(2) / (1 + math.sqrt(3)))
ETA_PLUS_RATIO = math.sqrt((3 + math.sqrt(3)) / 2)
ETA_MINUS_RATIO = math.sqrt((3 - math.sqrt(3)) / 2)


def s_matrix() -> np.ndarray:
    """Real orthogonal eigenbasis of ``b + b†`` at cutoff 3, columns in the order
    of eigenvalues ``(-l+, l+, -l-, l-)``; rows indexed by Fock number."""
    tp, tm = LAMBDA_PLUS / math.sqrt(3), LAMBDA_MINUS / math.sqrt(3)
    return 0.5 * np.array([
        [-tm, tm, tp, -tp],
        [1, 1, -1, -1],
        [-tp, tp, -tm, tm],
        [1, 1, 1, 1],
    ])


def kak_factors() -> dict[str, np.ndarray]:
    """Local factors of ``S = (K3 ⊗ K4) exp(i phi ZZ/2) (K1 ⊗ K2)``.

    ``K1``/``K3`` act on the high boson digit, ``K2``/``K4`` on the low one.
    """
    phi = KAK_PHI
    e = np.exp
    return {
        "K1": e(1j * math.pi / 4) / math.sqrt(2) * np.array([[1j, 1], [-1j, 1]]),
        "K2": e(1j * math.pi / 2) / math.sqrt(2) * np.array([[1, 1], [1, -1]]),
        "K3": e(1j * math.pi / 2) / math.sqrt(2) * np.array(
            [[e(-1j * phi / 2), -1j * e(1j * phi / 2)],
             [1j * e(-1j * phi / 2), -e(1j * phi / 2)]]),
        "K4": np.array([[0, -1], [1, 0]], dtype=complex),
    }


S_MATRIX_CNOTS = 2
"""CNOTs used by :func:`s_matrix_circuit` (the ZZ core needs two)."""


def s_matrix_circuit() -> Circuit:
    """Two-qubit circuit for the eigenbasis rotation ``S`` (qubit 0 = low digit).

    Gate words, each equal to its factor up to phase:
    ``K1 ~ SDG·RX(pi/2)``, ``K2 ~ H``, ``K3 ~ Z·RX(pi/2)·RZ(phi)``, ``K4 ~ Y``;
    the core ``exp(i phi ZZ/2)`` is a CNOT pair around ``RZ(-phi)``.
    """
    b = CircuitBuilder(2)
    b.rx(1, math.pi / 2).add("SDG", 1)
    b.add("H", 0)
    b.cnot(1, 0).rz(0, -KAK_PHI).cnot(1, 0)
    b.rz(1, KAK_PHI).rx(1, math.pi / 2).add("Z", 1)
    b.add("Y", 0)
    return b.build()


def diagonal_interaction_hamiltonian(eta: float) -> PauliSum:
    """Interaction in the rotated frame on (fermion, low digit, high digit).

    ``(1/2) (eta_- Z2 Z1 Z0 + eta_+ Z1 Z0)`` with ``eta_± = eta sqrt((3 ± sqrt 3)/2)``.
    """
    return PauliSum.from_labels({
        "ZZZ": 0.5 * eta * ETA_MINUS_RATIO,
        "IZZ": 0.5 * eta * ETA_PLUS_RATIO,
    })


def diagonal_interaction_circuit(eta: float, dt: float) -> Circuit:
    """Four-CNOT circuit for ``exp(-i H_diag dt)``; parities collect on qubit 1."""
    b = CircuitBuilder(3)
    b.cnot(0, 1).rz(1, eta * ETA_PLUS_RATIO * dt)
    b.cnot(2, 1).rz(1, eta * ETA_MINUS_RATIO * dt)
    b.cnot(2, 1).cnot(0, 1)
    return b.build()


def _interaction_three_qubit(eta: float, dt: float) -> list[Gate]:
    rotate = s_matrix_circuit().remap((1, 2), n_qubits=3)
    return list(rotate.inverse().gates) + list(diagonal_interaction_circuit(eta, dt).gates) \
        + list(rotate.gates)


def trotter_step_three_qubit(params: ModelParams, dt: float) -> Circuit:
    """Symmetric step ``e^{-i H0 dt/2} e^{-i Hint dt} e^{-i H0 dt/2}`` with 8 CNOTs.

    The interaction factor is exact, so only the splitting error remains.
    """
    if params.n_boson_qubits != 2:
        raise DomainError("the three-qubit Trotter step needs a two-qubit boson register")
    h0, _ = build_hamiltonian(params)
    half = free_layer(h0, dt / 2)
    return Circuit(3, tuple(half + _interaction_three_qubit(params.eta, dt) + half))


# --------------------------------------------------------------------------
# Pauli-string pipeline


_TO_Z = {"X": ("H",), "Y": ("SDG", "H"), "Z": ()}
_FROM_Z = {"X": ("H",), "Y": ("H", "S"), "Z": ()}

# (from, to) -> (control gates, ancilla RX angle, control gates after the CNOT);
# each entry reproduces CNOT·(basis change)·CNOT up to a global phase
_ONE_CNOT_TRANSITIONS = {
    ("X", "Y"): (("H",), -math.pi / 2, ("SDG", "H")),
    ("Y", "X"): (("H",), math.pi / 2, ("S", "H")),
    ("X", "Z"): (("S", "H"), math.pi / 2, ("H", "SDG", "H")),
    ("Z", "X"): (("S", "H"), math.pi / 2, ("H", "SDG", "H")),
    ("Z", "Y"): (("H",), math.pi / 2, ("H", "SDG", "H")),
    ("Y", "Z"): (("SDG", "H"), -math.pi / 2, ("SDG", "H")),
}


def naive_transition(a: str, b: str, qubit: int, ancilla: int) -> list[Gate]:
    """Unoptimized zone for one qubit: close ``a``, open ``b`` (two CNOTs)."""
    gates = [Gate("CNOT", (qubit, ancilla))]
    gates += [Gate(k, (qubit,)) for k in _FROM_Z[a]]
    gates += [Gate(k, (qubit,)) for k in _TO_Z[b]]
    gates.append(Gate("CNOT", (qubit, ancilla)))
    return gates


def one_cnot_transition(a: str, b: str, qubit: int, ancilla: int) -> list[Gate]:
    """Single-CNOT replacement for a change between two non-identity letters."""
    before, anc_angle, after = _ONE_CNOT_TRANSITIONS[a, b]
    gates = [Gate(k, (qubit,)) for k in before]
    gates.append(Gate("RX", (ancilla,), anc_angle))
    gates.append(Gate("CNOT", (qubit, ancilla)))
    gates += [Gate(k, (qubit,)) for k in after]
    return gates


def _open_string(p: PauliString, ancilla: int) -> list[Gate]:
    gates = []
    for q in p.support():
        gates += [Gate(k, (q,)) for k in _TO_Z[p[q]]]
        gates.append(Gate("CNOT", (q, ancilla)))
    return gates


def _close_string(p: PauliString, ancilla: int) -> list[Gate]:
    gates = []
    for q in p.support():
        gates.append(Gate("CNOT", (q, ancilla)))
        gates += [Gate(k, (q,)) for k in _FROM_Z[p[q]]]
    return gates


def _transition(p: PauliString, nxt: PauliString, ancilla: int) -> list[Gate]:
    gates = []
    for q in range(p.n_qubits):
        a, b = p[q], nxt[q]
        if a == b:
            continue
        if a == "I":
            gates += [Gate(k, (q,)) for k in _TO_Z[b]] + [Gate("CNOT", (q, ancilla))]
        elif b == "I":
            gates += [Gate("CNOT", (q, ancilla))] + [Gate(k, (q,)) for k in _FROM_Z[a]]
        else:
            gates += one_cnot_transition(a, b, q, ancilla)
    return gates


def _star_block(p: PauliString, theta: float) -> list[Gate]:
    support = p.support()
    target = support[0]
    basis = [Gate(k, (q,)) for q in support for k in _TO_Z[p[q]]]
    ladder = [Gate("CNOT", (q, target)) for q in support[1:]]
    undo = [Gate(k, (q,)) for q in support for k in _FROM_Z[p[q]]]
    return basis + ladder + [Gate("RZ", (target,), theta)] + ladder[::-1] + undo


def ordered_string_cost(strings: Sequence[PauliString]) -> int:
    """Closed-form CNOT cost of the star+ancilla pipeline for this order."""
    cost = hamming_weight(strings[0]) + hamming_weight(strings[-1])
    return cost + sum(hamming_distance(a, b) for a, b in zip(strings, strings[1:]))


def string_product_unitary(strings: Sequence[PauliString], angles: Sequence[float]) -> np.ndarray:
    """Dense ``prod_j exp(-i theta_j P_j / 2)`` with ``P_0`` applied first."""
    n = strings[0].n_qubits
    out = np.eye(1 << n, dtype=complex)
    for p, theta in zip(strings, angles):
        # P^2 = I, so the exponential is cos - i sin P
        out = (math.cos(theta / 2) * np.eye(1 << n) - 1j * math.sin(theta / 2) * p.to_matrix()) @ out
    return out


def synthesize_ordered_strings(strings: Sequence[PauliString], angles: Sequence[float],
                               layout: str = STAR_ANCILLA, verify: bool = True) -> SynthesisReport:
    """Circuit for ``prod_j exp(-i theta_j P_j / 2)`` in the given order.

    ``STAR_ANCILLA`` appends an ancilla above the system register; its start and
    end layers cost the Hamming weight of the first/last string and each
    transition zone costs the Hamming distance of the neighbouring strings.
    ``STAR`` collects parity on the lowest active qubit of each string and
    costs ``2 (weight - 1)`` CNOTs per string.
    """
    strings = list(strings)
    angles = [float(a) for a in angles]
    if not strings:
        raise DomainError("need at least one Pauli string")
    if len(angles) != len(strings):
        raise DomainError("one angle per string is required")
    if layout not in LAYOUTS:
        raise DomainError(f"unknown layout {layout!r}")
    n = strings[0].n_qubits
    for p in strings:
        if p.n_qubits != n:
            raise DomainError("all strings must have equal length")
        if p.is_identity():
            raise DomainError("the all-identity string only contributes a global phase")

    gates: list[Gate] = []
    if layout == STAR_ANCILLA:
        ancilla = n
        width = n + 1
        gates += _open_string(strings[0], ancilla)
        for j, (p, theta) in enumerate(zip(strings, angles)):
            gates.append(Gate("RZ", (ancilla,), theta))
            if j + 1 < len(strings):
                gates += _transition(p, strings[j + 1], ancilla)
        gates += _close_string(strings[-1], ancilla)
    else:
        width = n
        for p, theta in zip(strings, angles):
            gates += _star_block(p, theta)
    circuit = Circuit(width, tuple(gates))

    distance = None
    if verify and width <= MAX_DENSE_QUBITS:
        target = string_product_unitary(strings, angles)
        u = circuit_unitary(circuit)
        if layout == STAR_ANCILLA:
            # ancilla is the top qubit: the |0> block is the leading quadrant
            dim = 1 << n
            leak = float(np.linalg.norm(u[dim:, :dim], ord=2))
            distance = operator_distance(u[:dim, :dim], target) + leak
        else:
            distance = operator_distance(u, target)
    label = " ".join(p.label for p in strings)
    return SynthesisReport(circuit, circuit.cnot_count,
                           f"ordered product over [{label}] ({layout})", distance)


def pauli_sum_layer(h: PauliSum, tau: float, layout: str = STAR_ANCILLA,
                    order: Sequence[PauliString] | None = None) -> SynthesisReport:
    """First-order product of ``exp(-i c_P P tau)`` over the non-identity terms of ``h``."""
    coeffs = {s: c.real for s, c in h if not s.is_identity()}
    strings = list(order) if order is not None else sorted(coeffs)
    angles = [2 * coeffs[s] * tau for s in strings]
    return synthesize_ordered_strings(strings, angles, layout, verify=False)


# --------------------------------------------------------------------------
# Trotter circuits


def _interaction_gates(params: ModelParams, hint: PauliSum, dt: float, symmetric: bool) -> list[Gate]:
    n = params.n_boson_qubits
    if n == 1:
        return list(pauli_sum_layer(hint, dt, STAR).circuit.gates)
    if n == 2:
        return _interaction_three_qubit(params.eta, dt)
    strings = sorted(s for s, _ in hint)
    if symmetric:
        coeffs = {s: c.real for s, c in hint}
        seq = strings + strings[::-1]
        angles = [coeffs[s] * dt for s in seq]
        return list(synthesize_ordered_strings(seq, angles, STAR_ANCILLA, verify=False).circuit.gates)
    return list(pauli_sum_layer(hint, dt, STAR_ANCILLA, order=strings).circuit.gates)


def trotter_circuit(params: ModelParams, t: float, n_steps: int, order: int = 2) -> Circuit:
    """``n_steps`` Trotter steps of size ``t / n_steps``.

    One boson qubit uses a two-CNOT star block for the interaction, two boson
    qubits use the exact eight-CNOT step, and wider registers fall back to the
    star+ancilla pipeline with one ancilla appended above the system.
    For ``order=2`` neighbouring half-steps of ``H0`` are fused.
    """
    if int(n_steps) != n_steps or n_steps < 1:
        raise DomainError("n_steps must be a positive integer")
    if order not in (1, 2):
        raise DomainError("order must be 1 or 2")
    h0, hint = build_hamiltonian(params)
    dt = t / n_steps
    width = params.n_qubits + (1 if params.n_boson_qubits >= 3 else 0)
    if hint.terms:
        interaction = _interaction_gates(params, hint, dt, symmetric=(order == 2))
    else:
        interaction = []
    gates: list[Gate] = []
    if order == 1:
        for _ in range(n_steps):
            gates += free_layer(h0, dt) + interaction
    else:
        gates += free_layer(h0, dt / 2)
        for step in range(n_steps):
            gates += interaction
            gates += free_layer(h0, dt / 2 if step == n_steps - 1 else dt)
    return Circuit(width, tuple(gates))


# --------------------------------------------------------------------------
# gray-code arrangement of the even-Y set


def gray_code_order(strings) -> list[PauliString]:
    """Order the even-Y {X, Y} strings so neighbours differ in exactly two letters.

    Uses every other word of the reflected binary Gray code (Y = 1, qubit j =
    bit j); the even-indexed words are exactly the even-parity ones.
    """
    strings = list(strings)
    if not strings:
        raise DomainError("empty string set")
    length = strings[0].n_qubits
    if set(strings) != set(even_y_strings(length)) or len(strings) != 2 ** (length - 1):
        raise DomainError("input must be exactly the even-Y {X, Y} set of one length")
    out = []
    for i in range(0, 2 ** length, 2):
        code = i ^ (i >> 1)
        out.append(PauliString(tuple("Y" if (code >> q) & 1 else "X" for q in range(length))))
    return out
