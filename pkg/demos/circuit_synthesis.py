"""
Exact and Trotterized circuits
==============================

Builds the two-CNOT circuit for one boson qubit, the eight-CNOT symmetric
Trotter step for two boson qubits, and a star+ancilla circuit for an ordered
list of Pauli strings. Each is checked against a dense reference.
"""

from yukawa_circuits import (
    ModelParams,
    PauliString,
    circuit_unitary,
    compressed_two_qubit_circuit,
    exact_propagator,
    operator_distance,
    synthesize_ordered_strings,
    total_hamiltonian,
    trotter_step_three_qubit,
)
from yukawa_circuits.sim import HermitianPropagator

params = ModelParams.from_ratios(7.0, 1.7, 1)

# One boson qubit: one circuit for every t.
t = 1.3
circuit = compressed_two_qubit_circuit(params, t)
print(circuit.render())
dist = operator_distance(circuit_unitary(circuit), exact_propagator(total_hamiltonian(params), t))
print(f"compressed circuit: {circuit.cnot_count} CNOTs, distance {dist:.1e}")

# Two boson qubits: the interaction is diagonalized by a fixed two-qubit
# rotation, so a second-order step needs 8 CNOTs. Its error falls ~8x per halving.
params2 = ModelParams.from_ratios(7.0, 1.7, 2)
prop = HermitianPropagator(total_hamiltonian(params2))
for dt in (0.2, 0.1, 0.05):
    step = trotter_step_three_qubit(params2, dt)
    print(f"dt={dt:4.2f}: {step.cnot_count} CNOTs, step error {operator_distance(circuit_unitary(step), prop.at(dt)):.2e}")

# Any ordered Pauli-string product, with an ancilla collecting parity.
strings = [PauliString.from_label(s) for s in ("ZX", "IX", "XX", "YY")]
report = synthesize_ordered_strings(strings, [0.4, -0.2, 0.7, 0.1])
print(f"{report.target_description}: {report.cnot_count} CNOTs, distance {report.verification:.1e}")
