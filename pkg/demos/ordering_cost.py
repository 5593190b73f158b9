"""
Ordering Pauli strings to save CNOTs
====================================

With the star+ancilla layout the CNOT count of a product of string
exponentials is a closed tour through the ancilla: Hamming weight at the ends,
Hamming distance between neighbours. Finding a good order is a travelling
salesman problem.
"""

from yukawa_circuits import (
    build_ordering_graph,
    christofides,
    cnot_upper_bound,
    generate_pauli_strings,
    held_karp,
)
from yukawa_circuits.order_opt import cost_report

# The four strings of b + b† on two qubits, and their best order.
graph = build_ordering_graph(generate_pauli_strings(2))
print("weights (ancilla first):")
print(graph.weights)
tour = held_karp(graph)
print("optimal order", tour.labels(), "cost", tour.cost)

# Larger registers: exact search is capped, the heuristic scales.
for n in range(1, 7):
    g = build_ordering_graph(generate_pauli_strings(n))
    exact = held_karp(g).cost if g.k <= 16 else None
    print(f"N={n}: strings {g.k:4d}  exact {exact}  christofides {christofides(g).cost:4d}  bound {cnot_upper_bound(n):4d}")

# The same table as CSV.
print(cost_report(4).to_csv())
