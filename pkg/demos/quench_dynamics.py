"""
Quench dynamics of a fermion coupled to a truncated boson
=========================================================

The interaction is switched on at t = 0 and we follow the expected boson and
fermion numbers. For one boson qubit the evolution has an exact two-CNOT
circuit, so the circuit, the matrix exponential and the closed form agree.
"""

import numpy as np

from yukawa_circuits import ModelParams, Statevector, analytic_boson_number, quench_series

# Parameters as dimensionless ratios, boson mass m = 1.
params = ModelParams.from_ratios(mass_ratio=7.0, coupling_ratio=1.7, n_boson_qubits=1)
times = np.linspace(0, 2 * params.t0, 11)

# Fermion occupied, boson in (|0> + |1>)/sqrt(2): this state interacts.
r = 1 / np.sqrt(2)
psi0 = Statevector.from_parts(boson=[r, r], fermion=[0, 1])

exact = quench_series(params, psi0, times, "exact")
circuit = quench_series(params, psi0, times, "compressed")
closed = [analytic_boson_number(psi0, params.m, params.eta, t) for t in times]

print(" t/t0   n_b exact   n_b circuit   n_b closed form")
for row, c_row, a in zip(exact.rows, circuit.rows, closed):
    print(f"{row.t_over_t0:5.2f}   {row.n_boson:9.6f}   {c_row.n_boson:11.6f}   {a:15.6f}")

# The fermion number is conserved; the boson number oscillates.
print("fermion number spread:", np.ptp(exact.n_fermion))
print("boson number spread:  ", np.ptp(exact.n_boson))

# Starting from a Fock state the boson series does not depend on the
# fermion occupation.
fock = [quench_series(params, Statevector.from_parts([1, 0], f), times).n_boson for f in ([1, 0], [0, 1])]
print("Fock start, fermion flip difference:", np.max(np.abs(fock[0] - fock[1])))

# Two boson qubits: the Trotterized circuit converges on the exact curve.
params2 = ModelParams.from_ratios(7.0, 1.7, n_boson_qubits=2)
psi2 = Statevector.from_parts([np.sqrt(3) / 2, 0, 0.5, 0], [0, 1])
times2 = np.linspace(0, params2.t0, 6)
ref = quench_series(params2, psi2, times2).n_boson
for steps in (5, 10, 20):
    approx = quench_series(params2, psi2, times2, "trotter", trotter_steps=steps).n_boson
    print(f"{steps:3d} Trotter steps: max deviation {np.max(np.abs(approx - ref)):.2e}")
